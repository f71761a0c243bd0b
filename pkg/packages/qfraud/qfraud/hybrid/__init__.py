from qfraud.hybrid.forward import (
    ForwardCache,
    Gradients,
    baseline_backward,
    baseline_forward,
    flatten_gradients,
    hybrid_backward,
    hybrid_forward,
    model_backward,
    model_forward,
    predict,
)
from qfraud.hybrid.models import BaselineModel, HybridModel, Model, ModelKind

__all__ = [
    "BaselineModel",
    "ForwardCache",
    "Gradients",
    "HybridModel",
    "Model",
    "ModelKind",
    "baseline_backward",
    "baseline_forward",
    "flatten_gradients",
    "hybrid_backward",
    "hybrid_forward",
    "model_backward",
    "model_forward",
    "predict",
]
