from qfraud.neural.activations import sigmoid
from qfraud.neural.dense import DenseLayer, dense_backward, dense_forward
from qfraud.neural.dropout import dropout, dropout_backward
from qfraud.neural.init import glorot_uniform
from qfraud.neural.losses import bce_with_logits
from qfraud.neural.lstm import (
    LstmCache,
    LstmLayerWeights,
    LstmState,
    LstmWeights,
    lstm_backward,
    lstm_forward,
)
from qfraud.neural.optim import AdamState, adam_step, clip_grad_norm

__all__ = [
    "AdamState",
    "DenseLayer",
    "LstmCache",
    "LstmLayerWeights",
    "LstmState",
    "LstmWeights",
    "adam_step",
    "bce_with_logits",
    "clip_grad_norm",
    "dense_backward",
    "dense_forward",
    "dropout",
    "dropout_backward",
    "glorot_uniform",
    "lstm_backward",
    "lstm_forward",
    "sigmoid",
]
