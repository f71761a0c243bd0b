import numpy as np

from qfraud.exceptions import InvalidArgumentError, ShapeError
from qfraud.neural.activations import sigmoid


def bce_with_logits(logits: np.ndarray, labels: np.ndarray) -> tuple[float, np.ndarray]:
    """
    Mean binary cross-entropy on raw logits.

    loss = mean(max(z, 0) - z * y + log(1 + exp(-|z|)))
    dloss/dz = (sigmoid(z) - y) / N
    """
    z = np.asarray(logits, dtype=np.float64)
    y = np.asarray(labels, dtype=np.float64)
    if z.ndim != 1 or z.size == 0:
        raise InvalidArgumentError(f"bce_with_logits needs a non-empty 1-D batch, got shape {z.shape}")
    if y.shape != z.shape:
        raise ShapeError("labels", z.shape, y.shape)
    if not np.all((y == 0.0) | (y == 1.0)):
        raise InvalidArgumentError("labels must be 0 or 1")

    n = z.size
    per_sample = np.maximum(z, 0.0) - z * y + np.log1p(np.exp(-np.abs(z)))
    loss = float(per_sample.mean())
    dlogits = (sigmoid(z) - y) / n
    return loss, dlogits
