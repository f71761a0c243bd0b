"""
Dense statevector simulator.

Basis index k stores qubit 0 in its most significant bit, so for two qubits the
amplitude order is |00>, |01>, |10>, |11> with the left label being qubit 0.

A state may carry a leading batch axis: `amplitudes.shape == (K, 2**n)` holds K
independent circuits. Gate angles are then a scalar (shared) or a length-K
array (one angle per row). Gates update the StateVector they are given and
return it so calls can be chained.

A single-qubit gate is one 2x2 matrix contracted against the qubit axis in
one einsum. A layer with a matrix on every wire is applied as two matrix
products on the state reshaped to a matrix (upper wires x lower wires). CNOTs
are index permutations cached per register size.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from qfraud.exceptions import InvalidArgumentError, ShapeError

logger = logging.getLogger(__name__)

MAX_QUBITS = 16

QubitIndex = int


@dataclass
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        # Gates reshape the buffer without copying, which requires it to be contiguous.
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.ndim not in (1, 2) or self.amplitudes.shape[-1] != 2**self.n_qubits:
            raise ShapeError(
                "amplitudes", f"(..., {2**self.n_qubits})", self.amplitudes.shape
            )

    @property
    def batch_shape(self) -> tuple[int, ...]:
        return self.amplitudes.shape[:-1]

    def norms(self) -> np.ndarray | float:
        """Squared norm of every batch row (a float for an unbatched state)."""
        norm = np.sum(np.abs(self.amplitudes) ** 2, axis=-1)
        return float(norm) if norm.ndim == 0 else norm

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amplitudes.copy())


def init_state(
    n_qubits: int, batch_size: int | None = None, max_qubits: int = MAX_QUBITS
) -> StateVector:
    """
    Return |0...0>, optionally replicated over a leading batch axis.

    Raises:
        InvalidArgumentError: n_qubits outside [1, max_qubits].
    """
    if not 1 <= n_qubits <= max_qubits:
        raise InvalidArgumentError(
            f"n_qubits must be in [1, {max_qubits}] (qubit cap), got {n_qubits}"
        )
    if batch_size is not None and batch_size < 1:
        raise InvalidArgumentError(f"batch_size must be positive, got {batch_size}")

    shape = (2**n_qubits,) if batch_size is None else (batch_size, 2**n_qubits)
    amplitudes = np.zeros(shape, dtype=np.complex128)
    amplitudes[..., 0] = 1.0
    return StateVector(n_qubits, amplitudes)


def _check_qubit(state: StateVector, q: QubitIndex) -> None:
    if not 0 <= q < state.n_qubits:
        raise InvalidArgumentError(
            f"qubit index {q} out of range for {state.n_qubits} qubits"
        )


def _angle(state: StateVector, value: float | np.ndarray) -> np.ndarray:
    """Check an angle against the batch axis: a scalar or one value per row."""
    angle = np.asarray(value, dtype=np.float64)
    if angle.ndim and angle.shape != state.batch_shape:
        raise ShapeError("gate angle", state.batch_shape, angle.shape)
    return angle


def ry_matrix(theta: float | np.ndarray) -> np.ndarray:
    """[[cos t/2, -sin t/2], [sin t/2, cos t/2]], shape theta.shape + (2, 2)."""
    half = np.asarray(theta, dtype=np.float64) / 2.0
    c, s = np.cos(half), np.sin(half)
    m = np.empty(half.shape + (2, 2), dtype=np.complex128)
    m[..., 0, 0] = c
    m[..., 0, 1] = -s
    m[..., 1, 0] = s
    m[..., 1, 1] = c
    return m


def rot_matrix(
    alpha: float | np.ndarray, beta: float | np.ndarray, gamma: float | np.ndarray
) -> np.ndarray:
    """RZ(gamma) RY(beta) RZ(alpha) multiplied out, broadcast over the angles."""
    alpha, beta, gamma = np.broadcast_arrays(
        np.asarray(alpha, dtype=np.float64),
        np.asarray(beta, dtype=np.float64),
        np.asarray(gamma, dtype=np.float64),
    )
    c, s = np.cos(beta / 2.0), np.sin(beta / 2.0)
    plus = np.exp(-0.5j * (alpha + gamma))
    minus = np.exp(0.5j * (alpha - gamma))
    m = np.empty(alpha.shape + (2, 2), dtype=np.complex128)
    m[..., 0, 0] = plus * c
    m[..., 0, 1] = -minus * s
    m[..., 1, 0] = np.conj(minus) * s
    m[..., 1, 1] = np.conj(plus) * c
    return m


def _qubit_view(state: StateVector, q: QubitIndex) -> np.ndarray:
    """The amplitudes as (rows, left, 2, right) around qubit q; no copy."""
    n = state.n_qubits
    return state.amplitudes.reshape(-1, 2**q, 2, 2 ** (n - q - 1))


def apply_matrix(state: StateVector, q: QubitIndex, matrix: np.ndarray) -> StateVector:
    """
    Apply a 2x2 matrix to qubit q: shape (2, 2) for every row or
    batch_shape + (2, 2) for one matrix per row.
    """
    _check_qubit(state, q)
    matrix = np.asarray(matrix, dtype=np.complex128)
    view = _qubit_view(state, q)
    if matrix.shape == (2, 2):
        out = np.einsum("ij,bljr->blir", matrix, view)
    elif state.batch_shape and matrix.shape == state.batch_shape + (2, 2):
        out = np.einsum("bij,bljr->blir", matrix, view)
    else:
        raise ShapeError("gate matrix", state.batch_shape + (2, 2), matrix.shape)
    state.amplitudes = out.reshape(state.amplitudes.shape)
    return state


@lru_cache(maxsize=None)
def bit_table(n_qubits: int) -> np.ndarray:
    """(2**n, n) table of basis-state bits, column q holding qubit q."""
    k = np.arange(2**n_qubits)[:, None]
    shifts = n_qubits - 1 - np.arange(n_qubits)[None, :]
    bits = (k >> shifts) & 1
    bits.setflags(write=False)
    return bits


def product_amplitudes(vectors: np.ndarray) -> np.ndarray:
    """
    Amplitudes of the product state with one 2-vector per wire, shape
    (..., k, 2) -> (..., 2**k); wire 0 is the most significant.
    """
    vectors = np.asarray(vectors)
    k = vectors.shape[-2]
    return vectors[..., np.arange(k), bit_table(k)].prod(axis=-1)


def _kron_all(matrices: np.ndarray) -> np.ndarray:
    """Kronecker product over the wire axis of (..., k, 2, 2); wire 0 is the most significant."""
    k = matrices.shape[-3]
    bits = bit_table(k)
    return matrices[..., np.arange(k), bits[:, None, :], bits[None, :, :]].prod(axis=-1)


def kron_factors(matrices: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Split one 2x2 matrix per wire, shape (..., n, 2, 2), into the Kronecker
    products over the upper wires 0..ceil(n/2)-1 and the lower wires. Extra
    leading axes (layers, batch rows) are carried through.
    """
    matrices = np.asarray(matrices, dtype=np.complex128)
    split = (matrices.shape[-3] + 1) // 2
    return _kron_all(matrices[..., :split, :, :]), _kron_all(matrices[..., split:, :, :])


def apply_kron_factors(state: StateVector, upper: np.ndarray, lower: np.ndarray) -> StateVector:
    """
    Apply (upper (x) lower) as upper @ Psi @ lower.T, where Psi is the state
    reshaped to (2**ceil(n/2), 2**floor(n/2)). Factors are shared or carry
    the batch axis.
    """
    n = state.n_qubits
    split = (n + 1) // 2
    rows, cols = 2**split, 2 ** (n - split)
    for name, factor, size in (("upper factor", upper, rows), ("lower factor", lower, cols)):
        if factor.shape not in ((size, size), state.batch_shape + (size, size)):
            raise ShapeError(name, state.batch_shape + (size, size), factor.shape)

    psi = state.amplitudes.reshape(state.batch_shape + (rows, cols))
    out = np.matmul(np.matmul(upper, psi), np.swapaxes(lower, -1, -2))
    state.amplitudes = out.reshape(state.amplitudes.shape)
    return state


def apply_product(state: StateVector, matrices: np.ndarray) -> StateVector:
    """
    One 2x2 matrix on every wire at once: matrices is (n, 2, 2) for all rows
    or batch_shape + (n, 2, 2) for one set per row.
    """
    n = state.n_qubits
    matrices = np.asarray(matrices, dtype=np.complex128)
    if matrices.shape not in ((n, 2, 2), state.batch_shape + (n, 2, 2)):
        raise ShapeError("wire matrices", state.batch_shape + (n, 2, 2), matrices.shape)
    return apply_kron_factors(state, *kron_factors(matrices))


def apply_ry(state: StateVector, q: QubitIndex, theta: float | np.ndarray) -> StateVector:
    """RY(theta) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]] on qubit q."""
    return apply_matrix(state, q, ry_matrix(_angle(state, theta)))


def apply_rz(state: StateVector, q: QubitIndex, phi: float | np.ndarray) -> StateVector:
    """RZ(phi) = diag(exp(-i phi/2), exp(+i phi/2)) on qubit q."""
    _check_qubit(state, q)
    half = _angle(state, phi) / 2.0
    phases = np.stack([np.exp(-1j * half), np.exp(1j * half)], axis=-1)
    view = _qubit_view(state, q)
    view *= phases.reshape(-1, 1, 2, 1)
    return state


def apply_rot(
    state: StateVector,
    q: QubitIndex,
    alpha: float | np.ndarray,
    beta: float | np.ndarray,
    gamma: float | np.ndarray,
) -> StateVector:
    """Euler rotation RZ(gamma) RY(beta) RZ(alpha) as one fused matrix: alpha acts first."""
    matrix = rot_matrix(_angle(state, alpha), _angle(state, beta), _angle(state, gamma))
    return apply_matrix(state, q, matrix)


@lru_cache(maxsize=None)
def cnot_permutation(n_qubits: int, control: QubitIndex, target: QubitIndex) -> np.ndarray:
    """Gather indices for CNOT: new[k] = old[perm[k]]. The map is its own inverse."""
    k = np.arange(2**n_qubits)
    control_bit = 1 << (n_qubits - 1 - control)
    target_bit = 1 << (n_qubits - 1 - target)
    perm = np.where(k & control_bit, k ^ target_bit, k)
    perm.setflags(write=False)
    return perm


@lru_cache(maxsize=None)
def cnot_ring_permutation(n_qubits: int) -> np.ndarray:
    """CNOT(i, (i + 1) mod n) for i = 0..n-1, in that order, as one gather."""
    composed = np.arange(2**n_qubits)
    for i in range(n_qubits):
        composed = composed[cnot_permutation(n_qubits, i, (i + 1) % n_qubits)]
    composed.setflags(write=False)
    return composed


def apply_cnot(state: StateVector, control: QubitIndex, target: QubitIndex) -> StateVector:
    """Flip the target bit on every basis state whose control bit is 1."""
    _check_qubit(state, control)
    _check_qubit(state, target)
    if control == target:
        raise InvalidArgumentError(
            f"CNOT control and target must differ, both are {control}"
        )
    state.amplitudes = state.amplitudes[..., cnot_permutation(state.n_qubits, control, target)]
    return state


def apply_cnot_ring(state: StateVector) -> StateVector:
    """The entangling ring CNOT(0, 1), CNOT(1, 2), ..., CNOT(n-1, 0). No-op on one qubit."""
    if state.n_qubits > 1:
        state.amplitudes = state.amplitudes[..., cnot_ring_permutation(state.n_qubits)]
    return state


def probabilities(state: StateVector) -> np.ndarray:
    return np.abs(state.amplitudes) ** 2


@lru_cache(maxsize=None)
def z_signs(n_qubits: int) -> np.ndarray:
    """(2**n, n) matrix of Z eigenvalues: +1 where qubit q reads 0, -1 where it reads 1."""
    signs = 1.0 - 2.0 * bit_table(n_qubits)
    signs.setflags(write=False)
    return signs


def expect_z(state: StateVector, q: QubitIndex) -> float | np.ndarray:
    """
    <Z_q> = P(qubit q reads 0) - P(qubit q reads 1).

    Read-only. Returns a float for an unbatched state and an array of shape
    batch_shape otherwise.
    """
    _check_qubit(state, q)
    value = np.clip(probabilities(state) @ z_signs(state.n_qubits)[:, q], -1.0, 1.0)
    return float(value) if value.ndim == 0 else value


def expect_z_all(state: StateVector) -> np.ndarray:
    """<Z_i> for every qubit; shape batch_shape + (n_qubits,)."""
    return np.clip(probabilities(state) @ z_signs(state.n_qubits), -1.0, 1.0)
