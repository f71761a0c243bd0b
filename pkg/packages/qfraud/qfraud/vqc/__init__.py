from qfraud.vqc.circuit import (
    SHIFT,
    CircuitCounter,
    angle_embedding,
    entangling_layer,
    run_circuits,
    vqc_backward,
    vqc_backward_batch,
    vqc_forward,
    vqc_forward_batch,
)
from qfraud.vqc.models import VqcConfig, VqcParams

__all__ = [
    "SHIFT",
    "CircuitCounter",
    "VqcConfig",
    "VqcParams",
    "angle_embedding",
    "entangling_layer",
    "run_circuits",
    "vqc_backward",
    "vqc_backward_batch",
    "vqc_forward",
    "vqc_forward_batch",
]
