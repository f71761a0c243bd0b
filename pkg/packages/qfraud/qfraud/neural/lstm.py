"""
Stacked LSTM with a hand-derived backward pass through time.

Each layer stores its four gates stacked along the first axis in the order
input, forget, candidate, output:

    z_t = W x_t + U h_{t-1} + b            (4H,)
    i, f, o = sigmoid(z_i), sigmoid(z_f), sigmoid(z_o)
    g = tanh(z_c)
    C_t = f * C_{t-1} + i * g
    h_t = o * tanh(C_t)

Sequences are (T, input) or batched (B, T, input). Layer k's hidden sequence
is layer k+1's input, with inter-layer dropout applied in training mode.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from qfraud.exceptions import InvalidArgumentError, InvalidStateError, ShapeError
from qfraud.neural.activations import sigmoid
from qfraud.neural.dropout import dropout, dropout_backward
from qfraud.neural.init import glorot_uniform

GATES = ("i", "f", "c", "o")


@dataclass
class LstmLayerWeights:
    W: np.ndarray  # (4H, input)
    U: np.ndarray  # (4H, H)
    b: np.ndarray  # (4H,)

    def __post_init__(self) -> None:
        self.W = np.asarray(self.W, dtype=np.float64)
        self.U = np.asarray(self.U, dtype=np.float64)
        self.b = np.asarray(self.b, dtype=np.float64)
        four_h = self.b.shape[0] if self.b.ndim == 1 else -1
        if four_h <= 0 or four_h % 4:
            raise ShapeError("LSTM bias", "(4 * hidden,)", self.b.shape)
        hidden = four_h // 4
        if self.W.ndim != 2 or self.W.shape[0] != four_h:
            raise ShapeError("LSTM input weights", (four_h, "input"), self.W.shape)
        if self.U.shape != (four_h, hidden):
            raise ShapeError("LSTM recurrent weights", (four_h, hidden), self.U.shape)
        for arr in (self.W, self.U, self.b):
            if not np.all(np.isfinite(arr)):
                raise InvalidArgumentError("LSTM weights must be finite")

    @property
    def hidden_size(self) -> int:
        return self.b.shape[0] // 4

    @property
    def input_size(self) -> int:
        return self.W.shape[1]

    def gate(self, name: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Views (W_g, U_g, b_g) of a single gate."""
        k = GATES.index(name)
        h = self.hidden_size
        rows = slice(k * h, (k + 1) * h)
        return self.W[rows], self.U[rows], self.b[rows]


@dataclass
class LstmWeights:
    layers: list[LstmLayerWeights]

    def __post_init__(self) -> None:
        if not self.layers:
            raise InvalidArgumentError("LstmWeights needs at least one layer")
        hidden = self.layers[0].hidden_size
        for k, layer in enumerate(self.layers):
            if layer.hidden_size != hidden:
                raise ShapeError(f"LSTM layer {k} hidden size", hidden, layer.hidden_size)
            if k > 0 and layer.input_size != hidden:
                raise ShapeError(f"LSTM layer {k} input size", hidden, layer.input_size)

    @property
    def n_layers(self) -> int:
        return len(self.layers)

    @property
    def hidden_size(self) -> int:
        return self.layers[0].hidden_size

    @property
    def input_size(self) -> int:
        return self.layers[0].input_size

    @property
    def parameter_count(self) -> int:
        return sum(layer.W.size + layer.U.size + layer.b.size for layer in self.layers)

    @classmethod
    def glorot(
        cls, input_size: int, hidden_size: int, n_layers: int, rng: np.random.Generator
    ) -> "LstmWeights":
        layers = []
        for k in range(n_layers):
            fan_in = input_size if k == 0 else hidden_size
            layers.append(
                LstmLayerWeights(
                    W=glorot_uniform((4 * hidden_size, fan_in), rng),
                    U=glorot_uniform((4 * hidden_size, hidden_size), rng),
                    b=np.zeros(4 * hidden_size),
                )
            )
        return cls(layers)

    @classmethod
    def zeros(cls, input_size: int, hidden_size: int, n_layers: int = 1) -> "LstmWeights":
        return cls(
            [
                LstmLayerWeights(
                    W=np.zeros((4 * hidden_size, input_size if k == 0 else hidden_size)),
                    U=np.zeros((4 * hidden_size, hidden_size)),
                    b=np.zeros(4 * hidden_size),
                )
                for k in range(n_layers)
            ]
        )


@dataclass
class LstmState:
    h: np.ndarray
    C: np.ndarray

    def __post_init__(self) -> None:
        self.h = np.asarray(self.h, dtype=np.float64)
        self.C = np.asarray(self.C, dtype=np.float64)
        if self.h.shape != self.C.shape:
            raise ShapeError("LstmState.C", self.h.shape, self.C.shape)

    @classmethod
    def zeros(cls, hidden_size: int, batch_size: int | None = None) -> "LstmState":
        shape = (hidden_size,) if batch_size is None else (batch_size, hidden_size)
        return cls(np.zeros(shape), np.zeros(shape))


@dataclass
class _LayerCache:
    inputs: np.ndarray  # (B, T, in), after inter-layer dropout
    keep: np.ndarray | None  # dropout mask applied to `inputs`
    h_prev: np.ndarray  # (B, T, H)
    c_prev: np.ndarray
    i: np.ndarray
    f: np.ndarray
    g: np.ndarray
    o: np.ndarray
    c: np.ndarray


@dataclass
class LstmCache:
    """Intermediate activations of one forward call. Usable by exactly one backward call."""

    weights: LstmWeights
    layers: list[_LayerCache]
    batched: bool
    dropout_rate: float
    consumed: bool = field(default=False)

    def gate_activations(self, layer: int = 0) -> dict[str, np.ndarray]:
        lc = self.layers[layer]
        return {"i": lc.i, "f": lc.f, "c": lc.g, "o": lc.o}


def _initial_states(
    s0: LstmState | Sequence[LstmState] | None, weights: LstmWeights, batch: int
) -> list[tuple[np.ndarray, np.ndarray]]:
    hidden = weights.hidden_size
    if s0 is None:
        return [(np.zeros((batch, hidden)), np.zeros((batch, hidden)))] * weights.n_layers
    states = [s0] * weights.n_layers if isinstance(s0, LstmState) else list(s0)
    if len(states) != weights.n_layers:
        raise ShapeError("initial states", weights.n_layers, len(states))
    out = []
    for st in states:
        if st.h.shape not in ((hidden,), (batch, hidden)):
            raise ShapeError("initial hidden state", (batch, hidden), st.h.shape)
        h = np.broadcast_to(st.h, (batch, hidden))
        out.append((h, np.broadcast_to(st.C, (batch, hidden))))
    return out


def lstm_forward(
    x_seq: np.ndarray,
    weights: LstmWeights,
    s0: LstmState | Sequence[LstmState] | None = None,
    dropout_rate: float = 0.0,
    training: bool = False,
    rng: np.random.Generator | None = None,
) -> tuple[np.ndarray, LstmCache]:
    """
    Run the stacked LSTM over a sequence and return (h_T of the top layer, cache).

    `s0` is one state shared by every layer, one state per layer, or None for
    zeros. h_T is (H,) for an unbatched sequence and (B, H) otherwise.
    """
    x_seq = np.asarray(x_seq, dtype=np.float64)
    batched = x_seq.ndim == 3
    if x_seq.ndim not in (2, 3) or x_seq.shape[-1] != weights.input_size:
        raise ShapeError("LSTM input sequence", ("T", weights.input_size), x_seq.shape)
    if x_seq.shape[-2] < 1:
        raise InvalidArgumentError("LSTM input sequence must have at least one step")

    seq = x_seq if batched else x_seq[None]
    batch, steps, _ = seq.shape
    initial = _initial_states(s0, weights, batch)
    hidden = weights.hidden_size

    caches: list[_LayerCache] = []
    layer_input = seq
    for k, layer in enumerate(weights.layers):
        keep = None
        if k > 0:
            layer_input, mask = dropout(layer_input, dropout_rate, training, rng)
            keep = mask if training else None

        shape = (batch, steps, hidden)
        lc = _LayerCache(
            inputs=layer_input,
            keep=keep,
            **{name: np.empty(shape) for name in ("h_prev", "c_prev", "i", "f", "g", "o", "c")},
        )
        h, c = initial[k]
        outputs = np.empty(shape)
        for t in range(steps):
            z = layer_input[:, t] @ layer.W.T + h @ layer.U.T + layer.b
            lc.h_prev[:, t], lc.c_prev[:, t] = h, c
            lc.i[:, t] = sigmoid(z[:, :hidden])
            lc.f[:, t] = sigmoid(z[:, hidden : 2 * hidden])
            lc.g[:, t] = np.tanh(z[:, 2 * hidden : 3 * hidden])
            lc.o[:, t] = sigmoid(z[:, 3 * hidden :])
            c = lc.f[:, t] * c + lc.i[:, t] * lc.g[:, t]
            h = lc.o[:, t] * np.tanh(c)
            lc.c[:, t] = c
            outputs[:, t] = h
        caches.append(lc)
        layer_input = outputs

    h_T = layer_input[:, -1]
    cache = LstmCache(weights=weights, layers=caches, batched=batched, dropout_rate=dropout_rate)
    return (h_T if batched else h_T[0]), cache


def lstm_backward(cache: LstmCache, dh_T: np.ndarray) -> tuple[LstmWeights, np.ndarray]:
    """
    Backpropagate dL/dh_T through time and through every layer.

    Returns (gradients shaped like the weights, dx_seq shaped like the input).
    """
    if cache.consumed:
        raise InvalidStateError("LSTM cache was already consumed by a backward pass")
    weights = cache.weights
    hidden = weights.hidden_size
    batch, steps = cache.layers[0].i.shape[:2]

    dh_T = np.asarray(dh_T, dtype=np.float64)
    expected = (batch, hidden) if cache.batched else (hidden,)
    if dh_T.shape != expected:
        raise ShapeError("dh_T", expected, dh_T.shape)

    dh_seq = np.zeros((batch, steps, hidden))
    dh_seq[:, -1] = dh_T.reshape(batch, hidden)

    grads: list[LstmLayerWeights] = []
    for k in reversed(range(weights.n_layers)):
        layer, lc = weights.layers[k], cache.layers[k]
        dW, dU, db = np.zeros_like(layer.W), np.zeros_like(layer.U), np.zeros_like(layer.b)
        dx = np.zeros_like(lc.inputs)
        dh_rec = np.zeros((batch, hidden))
        dc_rec = np.zeros((batch, hidden))

        for t in reversed(range(steps)):
            i, f, g, o = lc.i[:, t], lc.f[:, t], lc.g[:, t], lc.o[:, t]
            tanh_c = np.tanh(lc.c[:, t])
            dh = dh_seq[:, t] + dh_rec
            dc = dc_rec + dh * o * (1.0 - tanh_c**2)

            dz = np.concatenate(
                [
                    dc * g * i * (1.0 - i),
                    dc * lc.c_prev[:, t] * f * (1.0 - f),
                    dc * i * (1.0 - g**2),
                    dh * tanh_c * o * (1.0 - o),
                ],
                axis=1,
            )
            dW += dz.T @ lc.inputs[:, t]
            dU += dz.T @ lc.h_prev[:, t]
            db += dz.sum(axis=0)
            dx[:, t] = dz @ layer.W
            dh_rec = dz @ layer.U
            dc_rec = dc * f

        grads.append(LstmLayerWeights(dW, dU, db))
        if lc.keep is not None:
            dx = dropout_backward(dx, lc.keep, cache.dropout_rate)
        dh_seq = dx

    cache.consumed = True
    grads.reverse()
    return LstmWeights(grads), (dh_seq if cache.batched else dh_seq[0])
