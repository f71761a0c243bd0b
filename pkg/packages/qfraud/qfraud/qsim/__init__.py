from qfraud.qsim.statevector import (
    MAX_QUBITS,
    QubitIndex,
    StateVector,
    apply_cnot,
    apply_cnot_ring,
    apply_kron_factors,
    apply_matrix,
    apply_product,
    apply_rot,
    apply_ry,
    apply_rz,
    bit_table,
    cnot_permutation,
    cnot_ring_permutation,
    expect_z,
    expect_z_all,
    init_state,
    kron_factors,
    product_amplitudes,
    rot_matrix,
    ry_matrix,
    z_signs,
)

__all__ = [
    "MAX_QUBITS",
    "QubitIndex",
    "StateVector",
    "apply_cnot",
    "apply_cnot_ring",
    "apply_kron_factors",
    "apply_matrix",
    "apply_product",
    "apply_rot",
    "apply_ry",
    "apply_rz",
    "bit_table",
    "cnot_permutation",
    "cnot_ring_permutation",
    "expect_z",
    "expect_z_all",
    "init_state",
    "kron_factors",
    "product_amplitudes",
    "rot_matrix",
    "ry_matrix",
    "z_signs",
]
