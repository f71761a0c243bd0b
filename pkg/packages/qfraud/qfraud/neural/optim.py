from dataclasses import dataclass, replace

import numpy as np

from qfraud.exceptions import InvalidArgumentError, ShapeError


@dataclass
class AdamState:
    m: np.ndarray
    v: np.ndarray
    t: int = 0
    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    weight_decay: float = 1e-4

    def __post_init__(self) -> None:
        self.m = np.asarray(self.m, dtype=np.float64)
        self.v = np.asarray(self.v, dtype=np.float64)
        if self.m.shape != self.v.shape:
            raise ShapeError("AdamState.v", self.m.shape, self.v.shape)
        if self.t < 0:
            raise InvalidArgumentError(f"AdamState.t must be >= 0, got {self.t}")
        if np.any(self.v < 0):
            raise InvalidArgumentError("AdamState.v must be non-negative")

    @classmethod
    def for_params(cls, params: np.ndarray, **hyper: float) -> "AdamState":
        zeros = np.zeros(np.shape(params))
        return cls(m=zeros, v=zeros.copy(), **hyper)


def adam_step(
    params: np.ndarray, grads: np.ndarray, st: AdamState
) -> tuple[np.ndarray, AdamState]:
    """
    One Adam update with L2 weight decay folded into the gradient.

    Returns new arrays; neither `params` nor `st` is modified.
    """
    params = np.asarray(params, dtype=np.float64)
    grads = np.asarray(grads, dtype=np.float64)
    if grads.shape != params.shape:
        raise ShapeError("gradients", params.shape, grads.shape)
    if st.m.shape != params.shape:
        raise ShapeError("Adam moments", params.shape, st.m.shape)

    g = grads + st.weight_decay * params
    t = st.t + 1
    m = st.beta1 * st.m + (1.0 - st.beta1) * g
    v = st.beta2 * st.v + (1.0 - st.beta2) * g * g
    m_hat = m / (1.0 - st.beta1**t)
    v_hat = v / (1.0 - st.beta2**t)

    new_params = params - st.lr * m_hat / (np.sqrt(v_hat) + st.eps)
    return new_params, replace(st, m=m, v=v, t=t)


def clip_grad_norm(grads: np.ndarray, max_norm: float) -> np.ndarray:
    """Scale `grads` so their global L2 norm is at most `max_norm`."""
    if max_norm <= 0:
        raise InvalidArgumentError(f"max_norm must be positive, got {max_norm}")
    grads = np.asarray(grads, dtype=np.float64)
    norm = float(np.linalg.norm(grads))
    if norm > max_norm:
        return grads * (max_norm / norm)
    return grads
