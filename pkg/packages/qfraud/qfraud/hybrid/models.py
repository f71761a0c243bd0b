"""
Model containers for the hybrid quantum-LSTM classifier and the classical baseline.

Both expose their trainable arrays as an ordered name -> array mapping. The
arrays are the live parameter buffers, so the optimizer can read a flat vector
with `flatten()` and write it back with `assign_flat()`.
"""

from dataclasses import dataclass
from enum import StrEnum
from typing import ClassVar

import numpy as np

from qfraud.exceptions import InvalidArgumentError, ShapeError
from qfraud.neural import DenseLayer, LstmWeights
from qfraud.vqc import VqcConfig, VqcParams

DEFAULT_HIDDEN_SIZE = 32
DEFAULT_DROPOUT = 0.3


class ModelKind(StrEnum):
    HYBRID = "hybrid"
    BASELINE = "baseline"


def _lstm_arrays(lstm: LstmWeights) -> dict[str, np.ndarray]:
    arrays = {}
    for k, layer in enumerate(lstm.layers):
        arrays[f"lstm.{k}.W"] = layer.W
        arrays[f"lstm.{k}.U"] = layer.U
        arrays[f"lstm.{k}.b"] = layer.b
    return arrays


def _check_dropout(rate: float) -> None:
    if not 0.0 <= rate < 1.0:
        raise InvalidArgumentError(f"dropout_rate must be in [0, 1), got {rate}")


class _ParameterMixin:
    kind: ClassVar[ModelKind]

    def parameters(self) -> dict[str, np.ndarray]:
        raise NotImplementedError

    @property
    def parameter_count(self) -> int:
        return sum(arr.size for arr in self.parameters().values())

    @property
    def quantum_parameter_count(self) -> int:
        return 0

    def flatten(self) -> np.ndarray:
        return np.concatenate([arr.reshape(-1) for arr in self.parameters().values()])

    def assign_flat(self, flat: np.ndarray) -> None:
        """Overwrite every parameter, in place, from a vector laid out like flatten()."""
        flat = np.asarray(flat, dtype=np.float64)
        if flat.shape != (self.parameter_count,):
            raise ShapeError("flat parameters", (self.parameter_count,), flat.shape)
        offset = 0
        for arr in self.parameters().values():
            arr[...] = flat[offset : offset + arr.size].reshape(arr.shape)
            offset += arr.size

    def shapes(self) -> dict[str, tuple[int, ...]]:
        return {name: arr.shape for name, arr in self.parameters().items()}


@dataclass
class HybridModel(_ParameterMixin):
    lstm: LstmWeights
    reducer: DenseLayer
    vqc_params: VqcParams
    vqc_cfg: VqcConfig
    head: DenseLayer
    dropout_rate: float = DEFAULT_DROPOUT

    kind: ClassVar[ModelKind] = ModelKind.HYBRID

    def __post_init__(self) -> None:
        _check_dropout(self.dropout_rate)
        n = self.vqc_cfg.n_qubits
        if self.reducer.in_features != self.lstm.hidden_size:
            raise ShapeError("reducer input", self.lstm.hidden_size, self.reducer.in_features)
        if self.reducer.out_features != n:
            raise ShapeError("reducer output", n, self.reducer.out_features)
        if self.head.in_features != n or self.head.out_features != 1:
            raise ShapeError("head", (1, n), self.head.weight.shape)
        self.vqc_params.check(self.vqc_cfg)

    @property
    def n_features(self) -> int:
        return self.lstm.input_size

    @property
    def quantum_parameter_count(self) -> int:
        return self.vqc_cfg.parameter_count

    def parameters(self) -> dict[str, np.ndarray]:
        return {
            **_lstm_arrays(self.lstm),
            "reducer.weight": self.reducer.weight,
            "reducer.bias": self.reducer.bias,
            "vqc.angles": self.vqc_params.angles,
            "head.weight": self.head.weight,
            "head.bias": self.head.bias,
        }

    @classmethod
    def initialize(
        cls,
        n_features: int,
        rng: np.random.Generator,
        hidden_size: int = DEFAULT_HIDDEN_SIZE,
        lstm_layers: int = 1,
        vqc_cfg: VqcConfig | None = None,
        dropout_rate: float = DEFAULT_DROPOUT,
    ) -> "HybridModel":
        """Glorot weights, zero biases and uniform circuit angles, all drawn from `rng`."""
        vqc_cfg = vqc_cfg or VqcConfig()
        return cls(
            lstm=LstmWeights.glorot(n_features, hidden_size, lstm_layers, rng),
            reducer=DenseLayer.glorot(hidden_size, vqc_cfg.n_qubits, rng),
            vqc_params=VqcParams.random(vqc_cfg, rng),
            vqc_cfg=vqc_cfg,
            head=DenseLayer.glorot(vqc_cfg.n_qubits, 1, rng),
            dropout_rate=dropout_rate,
        )

    @classmethod
    def zeros(
        cls, n_features: int, hidden_size: int, vqc_cfg: VqcConfig, lstm_layers: int = 1
    ) -> "HybridModel":
        return cls(
            lstm=LstmWeights.zeros(n_features, hidden_size, lstm_layers),
            reducer=DenseLayer.zeros(hidden_size, vqc_cfg.n_qubits),
            vqc_params=VqcParams.zeros(vqc_cfg),
            vqc_cfg=vqc_cfg,
            head=DenseLayer.zeros(vqc_cfg.n_qubits, 1),
            dropout_rate=0.0,
        )


@dataclass
class BaselineModel(_ParameterMixin):
    lstm: LstmWeights
    head: DenseLayer
    dropout_rate: float = DEFAULT_DROPOUT

    kind: ClassVar[ModelKind] = ModelKind.BASELINE

    def __post_init__(self) -> None:
        _check_dropout(self.dropout_rate)
        if self.head.in_features != self.lstm.hidden_size or self.head.out_features != 1:
            raise ShapeError("head", (1, self.lstm.hidden_size), self.head.weight.shape)

    @property
    def n_features(self) -> int:
        return self.lstm.input_size

    def parameters(self) -> dict[str, np.ndarray]:
        return {
            **_lstm_arrays(self.lstm),
            "head.weight": self.head.weight,
            "head.bias": self.head.bias,
        }

    @classmethod
    def initialize(
        cls,
        n_features: int,
        rng: np.random.Generator,
        hidden_size: int = DEFAULT_HIDDEN_SIZE,
        lstm_layers: int = 2,
        dropout_rate: float = DEFAULT_DROPOUT,
    ) -> "BaselineModel":
        return cls(
            lstm=LstmWeights.glorot(n_features, hidden_size, lstm_layers, rng),
            head=DenseLayer.glorot(hidden_size, 1, rng),
            dropout_rate=dropout_rate,
        )

    @classmethod
    def zeros(cls, n_features: int, hidden_size: int, lstm_layers: int = 2) -> "BaselineModel":
        return cls(
            lstm=LstmWeights.zeros(n_features, hidden_size, lstm_layers),
            head=DenseLayer.zeros(hidden_size, 1),
            dropout_rate=0.0,
        )


Model = HybridModel | BaselineModel
