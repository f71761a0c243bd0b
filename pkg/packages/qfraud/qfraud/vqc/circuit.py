"""
Variational quantum circuit: angle embedding, strongly entangling layers and a
Pauli-Z readout on every wire, differentiated with the parameter-shift rule.

Gradients are taken with respect to the measurement vector q and chain-ruled
with the upstream gradient dL/dq, so one set of shifted evaluations serves the
whole classical backward pass. Every shifted circuit of every sample is an
independent row of one batched statevector.
"""

import logging

import numpy as np

from qfraud.exceptions import InvalidStateError, ShapeError
from qfraud.qsim import (
    StateVector,
    apply_cnot_ring,
    apply_kron_factors,
    apply_product,
    expect_z_all,
    init_state,
    kron_factors,
    product_amplitudes,
    rot_matrix,
)
from qfraud.vqc.models import VqcConfig, VqcParams

logger = logging.getLogger(__name__)

SHIFT = np.pi / 2
DEFAULT_MAX_BATCH_AMPLITUDES = 2**22


class CircuitCounter:
    """Counts circuit evaluations (one per statevector row simulated)."""

    def __init__(self) -> None:
        self.count = 0

    def add(self, circuits: int) -> None:
        self.count += circuits


def angle_embedding(state: StateVector, x: np.ndarray) -> StateVector:
    """
    RY(x_i) on wire i. The state must still be |0...0>, so the result is the
    product state of (cos x_i/2, sin x_i/2) over the wires, qubit 0 outermost.
    """
    x = np.asarray(x, dtype=np.float64)
    expected = state.batch_shape + (state.n_qubits,)
    if x.shape != expected:
        raise ShapeError("feature angles", expected, x.shape)
    if not np.all(state.amplitudes[..., 0] == 1.0):
        raise InvalidStateError("angle_embedding requires a fresh |0...0> state")

    half = x / 2.0
    wires = np.stack([np.cos(half), np.sin(half)], axis=-1)
    split = (state.n_qubits + 1) // 2
    upper = product_amplitudes(wires[..., :split, :])
    lower = product_amplitudes(wires[..., split:, :])
    amplitudes = upper[..., :, None] * lower[..., None, :]
    state.amplitudes = amplitudes.reshape(state.amplitudes.shape).astype(np.complex128)
    return state


def entangling_layer(state: StateVector, layer_angles: np.ndarray) -> StateVector:
    """
    Rot(alpha_i, beta_i, gamma_i) on every wire, then the CNOT ring
    i -> (i + 1) mod n. A single wire has no ring.

    `layer_angles` is (n_qubits, 3), shared by all rows, or
    batch_shape + (n_qubits, 3) with one set per row.
    """
    n = state.n_qubits
    layer_angles = np.asarray(layer_angles, dtype=np.float64)
    if layer_angles.shape not in ((n, 3), state.batch_shape + (n, 3)):
        raise ShapeError("layer angles", (n, 3), layer_angles.shape)

    apply_product(state, rot_matrix(layer_angles[..., 0], layer_angles[..., 1], layer_angles[..., 2]))
    return apply_cnot_ring(state)


def run_circuits(
    x: np.ndarray,
    angles: np.ndarray,
    cfg: VqcConfig,
    counter: CircuitCounter | None = None,
    max_batch_amplitudes: int = DEFAULT_MAX_BATCH_AMPLITUDES,
) -> np.ndarray:
    """
    Evaluate K circuits and return their measurement vectors, shape (K, n_qubits).

    Args:
        x: (K, n_qubits) embedding angles.
        angles: (n_layers, n_qubits, 3) shared parameters, or
            (K, n_layers, n_qubits, 3) per-row parameters.
    """
    n, layers = cfg.n_qubits, cfg.n_layers
    x = np.asarray(x, dtype=np.float64)
    angles = np.asarray(angles, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != n:
        raise ShapeError("feature angles", ("K", n), x.shape)

    per_row = angles.ndim == 4
    expected = (x.shape[0],) + cfg.params_shape if per_row else cfg.params_shape
    if angles.shape != expected:
        raise ShapeError("circuit parameters", expected, angles.shape)

    total = x.shape[0]
    out = np.empty((total, n), dtype=np.float64)
    row_cost = 2**n
    if per_row:
        # Each row also builds its own Kronecker factors for every layer, one
        # factor per wire before the product.
        split = (n + 1) // 2
        row_cost += layers * (split * 4**split + (n - split) * 4 ** (n - split))
    chunk = max(1, max_batch_amplitudes // row_cost)

    def layer_factors(block: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return kron_factors(rot_matrix(block[..., 0], block[..., 1], block[..., 2]))

    # Shared parameters: every layer's Kronecker factors are built once up front.
    shared = None if per_row else layer_factors(angles)

    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        upper, lower = layer_factors(angles[start:stop]) if shared is None else shared
        state = init_state(n, batch_size=stop - start)
        angle_embedding(state, x[start:stop])
        for layer in range(layers):
            apply_kron_factors(state, upper[..., layer, :, :], lower[..., layer, :, :])
            apply_cnot_ring(state)
        out[start:stop] = expect_z_all(state)

    if counter is not None:
        counter.add(total)
    return out


def vqc_forward_batch(
    x: np.ndarray,
    params: VqcParams,
    cfg: VqcConfig,
    counter: CircuitCounter | None = None,
    max_batch_amplitudes: int = DEFAULT_MAX_BATCH_AMPLITUDES,
) -> np.ndarray:
    params.check(cfg)
    return run_circuits(x, params.angles, cfg, counter, max_batch_amplitudes)


def vqc_forward(
    x: np.ndarray,
    params: VqcParams,
    cfg: VqcConfig,
    counter: CircuitCounter | None = None,
) -> np.ndarray:
    """init -> embedding -> L entangling layers -> <Z_i> on every wire."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (cfg.n_qubits,):
        raise ShapeError("feature angles", (cfg.n_qubits,), x.shape)
    return vqc_forward_batch(x[None, :], params, cfg, counter)[0]


def vqc_backward_batch(
    x: np.ndarray,
    params: VqcParams,
    cfg: VqcConfig,
    upstream: np.ndarray,
    counter: CircuitCounter | None = None,
    max_batch_amplitudes: int = DEFAULT_MAX_BATCH_AMPLITUDES,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Parameter-shift gradients for a batch of samples.

    For every trainable angle and every embedding angle a:
        dq/da = (q(a + pi/2) - q(a - pi/2)) / 2
    which is exact because each angle drives exactly one Pauli rotation.

    Returns:
        (grad_params summed over the batch, shape params_shape;
         grad_x per sample, shape (B, n_qubits))
    """
    params.check(cfg)
    n = cfg.n_qubits
    x = np.asarray(x, dtype=np.float64)
    upstream = np.asarray(upstream, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != n:
        raise ShapeError("feature angles", ("B", n), x.shape)
    if upstream.shape != x.shape:
        raise ShapeError("upstream gradient", x.shape, upstream.shape)

    batch = x.shape[0]
    n_theta = cfg.parameter_count
    n_shifts = n_theta + n

    theta_shift = np.zeros((n_shifts, n_theta))
    theta_shift[np.arange(n_theta), np.arange(n_theta)] = SHIFT
    x_shift = np.zeros((n_shifts, n))
    x_shift[n_theta + np.arange(n), np.arange(n)] = SHIFT

    flat_theta = params.angles.reshape(-1)
    measured = []
    for sign in (1.0, -1.0):
        theta_rows = flat_theta[None, None, :] + sign * theta_shift[None, :, :]
        theta_rows = np.broadcast_to(theta_rows, (batch, n_shifts, n_theta))
        x_rows = x[:, None, :] + sign * x_shift[None, :, :]
        q = run_circuits(
            x_rows.reshape(batch * n_shifts, n),
            theta_rows.reshape((batch * n_shifts,) + cfg.params_shape),
            cfg,
            counter,
            max_batch_amplitudes,
        )
        measured.append(q.reshape(batch, n_shifts, n))

    # dq[b, j, i] = d q_i / d a_j for sample b
    dq = (measured[0] - measured[1]) / (2.0 * np.sin(SHIFT))
    grads = np.einsum("bji,bi->bj", dq, upstream)

    grad_params = grads[:, :n_theta].sum(axis=0).reshape(cfg.params_shape)
    grad_x = grads[:, n_theta:]
    logger.debug(
        "Parameter-shift backward over %d samples, %d circuits",
        batch,
        2 * batch * n_shifts,
    )
    return grad_params, grad_x


def vqc_backward(
    x: np.ndarray,
    params: VqcParams,
    cfg: VqcConfig,
    upstream: np.ndarray,
    counter: CircuitCounter | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Single-sample parameter-shift gradients: (grad_params, grad_x)."""
    x = np.asarray(x, dtype=np.float64)
    upstream = np.asarray(upstream, dtype=np.float64)
    if x.shape != (cfg.n_qubits,):
        raise ShapeError("feature angles", (cfg.n_qubits,), x.shape)
    if upstream.shape != (cfg.n_qubits,):
        raise ShapeError("upstream gradient", (cfg.n_qubits,), upstream.shape)

    grad_params, grad_x = vqc_backward_batch(x[None, :], params, cfg, upstream[None, :], counter)
    return grad_params, grad_x[0]
