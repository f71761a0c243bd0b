from dataclasses import dataclass

import numpy as np

from qfraud.exceptions import InvalidArgumentError, ShapeError
from qfraud.neural.init import glorot_uniform


@dataclass
class DenseLayer:
    weight: np.ndarray  # (out, in)
    bias: np.ndarray  # (out,)

    def __post_init__(self) -> None:
        self.weight = np.asarray(self.weight, dtype=np.float64)
        self.bias = np.asarray(self.bias, dtype=np.float64)
        if self.weight.ndim != 2 or self.bias.shape != (self.weight.shape[0],):
            raise ShapeError(
                "DenseLayer", "weight (out, in) with bias (out,)", (self.weight.shape, self.bias.shape)
            )
        if not (np.all(np.isfinite(self.weight)) and np.all(np.isfinite(self.bias))):
            raise InvalidArgumentError("DenseLayer parameters must be finite")

    @property
    def in_features(self) -> int:
        return self.weight.shape[1]

    @property
    def out_features(self) -> int:
        return self.weight.shape[0]

    @classmethod
    def glorot(cls, in_features: int, out_features: int, rng: np.random.Generator) -> "DenseLayer":
        return cls(glorot_uniform((out_features, in_features), rng), np.zeros(out_features))

    @classmethod
    def zeros(cls, in_features: int, out_features: int) -> "DenseLayer":
        return cls(np.zeros((out_features, in_features)), np.zeros(out_features))


def _check_input(x: np.ndarray, layer: DenseLayer) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim not in (1, 2) or x.shape[-1] != layer.in_features:
        raise ShapeError("dense input", ("...", layer.in_features), x.shape)
    return x


def dense_forward(x: np.ndarray, layer: DenseLayer) -> np.ndarray:
    """weight @ x + bias for a vector, or row-wise for a (B, in) batch."""
    x = _check_input(x, layer)
    return x @ layer.weight.T + layer.bias


def dense_backward(
    x: np.ndarray, layer: DenseLayer, dout: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Returns (grad_weight, grad_bias, dx). For a batch, weight and bias
    gradients are summed over rows.
    """
    x = _check_input(x, layer)
    dout = np.asarray(dout, dtype=np.float64)
    expected = x.shape[:-1] + (layer.out_features,)
    if dout.shape != expected:
        raise ShapeError("dense upstream gradient", expected, dout.shape)

    x2, d2 = np.atleast_2d(x), np.atleast_2d(dout)
    grad_weight = d2.T @ x2
    grad_bias = d2.sum(axis=0)
    dx = dout @ layer.weight
    return grad_weight, grad_bias, dx
