"""Dense-matrix reference implementations shared by the circuit tests."""

import numpy as np


def ry_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz_matrix(phi: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * phi), np.exp(0.5j * phi)])


def rot_matrix(alpha: float, beta: float, gamma: float) -> np.ndarray:
    return rz_matrix(gamma) @ ry_matrix(beta) @ rz_matrix(alpha)


def embed(gate: np.ndarray, q: int, n: int) -> np.ndarray:
    """Lift a 2x2 gate to the full register, qubit 0 most significant."""
    return np.kron(np.kron(np.eye(2**q), gate), np.eye(2 ** (n - q - 1)))


def cnot_matrix(control: int, target: int, n: int) -> np.ndarray:
    dim = 2**n
    m = np.zeros((dim, dim))
    for k in range(dim):
        bits = [(k >> (n - 1 - i)) & 1 for i in range(n)]
        if bits[control]:
            bits[target] ^= 1
        j = sum(b << (n - 1 - i) for i, b in enumerate(bits))
        m[j, k] = 1
    return m


def z_expectations(psi: np.ndarray, n: int) -> np.ndarray:
    out = []
    for q in range(n):
        z = embed(np.diag([1.0, -1.0]), q, n)
        out.append(np.real(np.conj(psi) @ z @ psi))
    return np.array(out)


def dense_circuit(x: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """Statevector of embedding + entangling layers built from explicit matrices."""
    n = len(x)
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = 1
    for i in range(n):
        psi = embed(ry_matrix(x[i]), i, n) @ psi
    for layer in angles:
        for i in range(n):
            psi = embed(rot_matrix(*layer[i]), i, n) @ psi
        if n > 1:
            for i in range(n):
                psi = cnot_matrix(i, (i + 1) % n, n) @ psi
    return psi
