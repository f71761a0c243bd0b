import numpy as np

from qfraud.exceptions import InvalidArgumentError


def _check_rate(rate: float) -> None:
    if not 0.0 <= rate < 1.0:
        raise InvalidArgumentError(f"dropout rate must be in [0, 1), got {rate}")


def dropout(
    x: np.ndarray,
    rate: float,
    training: bool,
    rng: np.random.Generator | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Inverted dropout. Returns (y, keep) where keep is a boolean mask.

    In eval mode, or with rate 0, y is x itself and keep is all True.
    """
    _check_rate(rate)
    x = np.asarray(x, dtype=np.float64)

    if not training or rate == 0.0:
        return x, np.ones(x.shape, dtype=bool)

    if rng is None:
        raise InvalidArgumentError("training-mode dropout needs a seeded generator")

    keep = rng.random(x.shape) >= rate
    return np.where(keep, x / (1.0 - rate), 0.0), keep


def dropout_backward(dy: np.ndarray, keep: np.ndarray, rate: float) -> np.ndarray:
    _check_rate(rate)
    return np.where(keep, dy / (1.0 - rate), 0.0)
