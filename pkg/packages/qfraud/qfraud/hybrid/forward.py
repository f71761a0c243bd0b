"""
End-to-end forward and backward passes.

Hybrid:   x -> LSTM (one step) -> dropout -> reducer -> VQC -> head -> logit
Baseline: x -> stacked LSTM (inter-layer dropout) -> head -> logit

The sigmoid is not part of the forward pass; it lives in the loss and in
`predict`.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from qfraud.exceptions import InvalidArgumentError, InvalidStateError, ShapeError
from qfraud.hybrid.models import BaselineModel, HybridModel, Model
from qfraud.neural import (
    LstmCache,
    dense_backward,
    dense_forward,
    dropout,
    dropout_backward,
    lstm_backward,
    lstm_forward,
)
from qfraud.vqc import CircuitCounter, vqc_backward_batch, vqc_forward_batch
from qfraud.vqc.circuit import DEFAULT_MAX_BATCH_AMPLITUDES

logger = logging.getLogger(__name__)

Gradients = dict[str, np.ndarray]


@dataclass
class ForwardCache:
    model: Model
    lstm: LstmCache
    head_input: np.ndarray  # (B, head.in)
    reducer_input: np.ndarray | None = None  # (B, hidden) after dropout
    angles: np.ndarray | None = None  # (B, n_qubits)
    keep: np.ndarray | None = None  # dropout mask on h_T, training only
    consumed: bool = field(default=False)


def _sequence(batch: np.ndarray, n_features: int) -> np.ndarray:
    batch = np.asarray(batch, dtype=np.float64)
    if batch.ndim != 2 or batch.shape[1] != n_features:
        raise ShapeError("feature batch", ("B", n_features), batch.shape)
    # one sample is a sequence of length 1
    return batch[:, None, :]


def _claim(cache: ForwardCache, model: Model, dlogits: np.ndarray) -> np.ndarray:
    if cache.consumed:
        raise InvalidStateError("forward cache was already consumed by a backward pass")
    if cache.model is not model:
        raise InvalidStateError("forward cache belongs to a different model")
    dlogits = np.asarray(dlogits, dtype=np.float64)
    expected = (cache.head_input.shape[0],)
    if dlogits.shape != expected:
        raise ShapeError("dlogits", expected, dlogits.shape)
    cache.consumed = True
    return dlogits


def _lstm_grads(grads) -> Gradients:
    out = {}
    for k, layer in enumerate(grads.layers):
        out[f"lstm.{k}.W"] = layer.W
        out[f"lstm.{k}.U"] = layer.U
        out[f"lstm.{k}.b"] = layer.b
    return out


def hybrid_forward(
    batch: np.ndarray,
    model: HybridModel,
    training: bool = False,
    rng: np.random.Generator | None = None,
    counter: CircuitCounter | None = None,
    max_batch_amplitudes: int = DEFAULT_MAX_BATCH_AMPLITUDES,
) -> tuple[np.ndarray, ForwardCache]:
    seq = _sequence(batch, model.n_features)
    h_T, lstm_cache = lstm_forward(seq, model.lstm)
    h_drop, keep = dropout(h_T, model.dropout_rate, training, rng)
    angles = dense_forward(h_drop, model.reducer)
    q = vqc_forward_batch(angles, model.vqc_params, model.vqc_cfg, counter, max_batch_amplitudes)
    logits = dense_forward(q, model.head)[:, 0]

    cache = ForwardCache(
        model=model,
        lstm=lstm_cache,
        head_input=q,
        reducer_input=h_drop,
        angles=angles,
        keep=keep if training else None,
    )
    return logits, cache


def hybrid_backward(
    cache: ForwardCache,
    dlogits: np.ndarray,
    model: HybridModel,
    counter: CircuitCounter | None = None,
    max_batch_amplitudes: int = DEFAULT_MAX_BATCH_AMPLITUDES,
) -> Gradients:
    """Gradients of every parameter group, summed over the batch."""
    dlogits = _claim(cache, model, dlogits)

    head_w, head_b, dq = dense_backward(cache.head_input, model.head, dlogits[:, None])
    vqc_grad, dangles = vqc_backward_batch(
        cache.angles, model.vqc_params, model.vqc_cfg, dq, counter, max_batch_amplitudes
    )
    red_w, red_b, dh = dense_backward(cache.reducer_input, model.reducer, dangles)
    if cache.keep is not None:
        dh = dropout_backward(dh, cache.keep, model.dropout_rate)
    lstm_grads, _ = lstm_backward(cache.lstm, dh)

    return {
        **_lstm_grads(lstm_grads),
        "reducer.weight": red_w,
        "reducer.bias": red_b,
        "vqc.angles": vqc_grad,
        "head.weight": head_w,
        "head.bias": head_b,
    }


def baseline_forward(
    batch: np.ndarray,
    model: BaselineModel,
    training: bool = False,
    rng: np.random.Generator | None = None,
) -> tuple[np.ndarray, ForwardCache]:
    seq = _sequence(batch, model.n_features)
    h_T, lstm_cache = lstm_forward(
        seq, model.lstm, dropout_rate=model.dropout_rate, training=training, rng=rng
    )
    logits = dense_forward(h_T, model.head)[:, 0]
    return logits, ForwardCache(model=model, lstm=lstm_cache, head_input=h_T)


def baseline_backward(cache: ForwardCache, dlogits: np.ndarray, model: BaselineModel) -> Gradients:
    dlogits = _claim(cache, model, dlogits)
    head_w, head_b, dh = dense_backward(cache.head_input, model.head, dlogits[:, None])
    lstm_grads, _ = lstm_backward(cache.lstm, dh)
    return {**_lstm_grads(lstm_grads), "head.weight": head_w, "head.bias": head_b}


def model_forward(
    batch: np.ndarray,
    model: Model,
    training: bool = False,
    rng: np.random.Generator | None = None,
    counter: CircuitCounter | None = None,
    max_batch_amplitudes: int = DEFAULT_MAX_BATCH_AMPLITUDES,
) -> tuple[np.ndarray, ForwardCache]:
    match model:
        case HybridModel():
            return hybrid_forward(batch, model, training, rng, counter, max_batch_amplitudes)
        case BaselineModel():
            return baseline_forward(batch, model, training, rng)
    raise InvalidArgumentError(f"Unsupported model type {type(model).__name__}")


def model_backward(
    cache: ForwardCache,
    dlogits: np.ndarray,
    model: Model,
    counter: CircuitCounter | None = None,
    max_batch_amplitudes: int = DEFAULT_MAX_BATCH_AMPLITUDES,
) -> Gradients:
    match model:
        case HybridModel():
            return hybrid_backward(cache, dlogits, model, counter, max_batch_amplitudes)
        case BaselineModel():
            return baseline_backward(cache, dlogits, model)
    raise InvalidArgumentError(f"Unsupported model type {type(model).__name__}")


def flatten_gradients(grads: Gradients, model: Model) -> np.ndarray:
    """Concatenate gradients in the model's parameter order."""
    return np.concatenate([grads[name].reshape(-1) for name in model.parameters()])


def predict(logits: np.ndarray, threshold: float = 0.5) -> np.ndarray:
    """
    Label 1 iff sigmoid(logit) >= threshold. The boundary is inclusive, so at
    the default threshold a logit of exactly 0 is labelled fraud.
    """
    if not 0.0 < threshold < 1.0:
        raise InvalidArgumentError(f"threshold must be in (0, 1), got {threshold}")
    cutoff = np.log(threshold / (1.0 - threshold))
    return (np.asarray(logits, dtype=np.float64) >= cutoff).astype(np.int64)
