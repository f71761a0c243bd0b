from datetime import datetime

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from sklearn.metrics import confusion_matrix

from qfraud.exceptions import InvalidArgumentError, ShapeError
from qfraud.hybrid import ModelKind

BASELINE_LSTM_LAYERS = 2


class TrainConfig(BaseModel):
    """Hyperparameters of one training run. Defaults follow the published setup."""

    model_config = ConfigDict(extra="forbid", frozen=True, protected_namespaces=())

    model_kind: ModelKind = ModelKind.HYBRID
    epochs: int = Field(default=80, ge=0)
    batch_size: int = Field(default=32, ge=1)
    lr: float = Field(default=1e-3, gt=0)
    weight_decay: float = Field(default=1e-4, ge=0)
    clip_norm: float = Field(default=5.0, gt=0)
    n_qubits: int = Field(default=10, ge=1, le=16)
    n_layers: int = Field(default=2, ge=1, le=8)
    hidden_size: int = Field(default=32, ge=1)
    lstm_layers: int = Field(default=1, ge=1)
    dropout: float = Field(default=0.3, ge=0, lt=1)
    threshold: float = Field(default=0.5, gt=0, lt=1)
    seed: int = 0

    @property
    def effective_lstm_layers(self) -> int:
        """The baseline is always a two-layer LSTM; the hybrid depth is configurable."""
        if self.model_kind == ModelKind.BASELINE:
            return BASELINE_LSTM_LAYERS
        return self.lstm_layers


class EpochRecord(BaseModel):
    epoch: int = Field(ge=1)
    train_loss: float = Field(ge=0)
    val_loss: float = Field(ge=0)
    val_accuracy: float = Field(ge=0, le=1)
    # zero only in timing-masked reports
    epoch_seconds: float = Field(ge=0)
    train_accuracy: float | None = Field(default=None, ge=0, le=1)


EPOCH_CSV_COLUMNS = ("epoch", "train_loss", "val_loss", "val_accuracy", "epoch_seconds")


class ConfusionMatrix(BaseModel):
    """Fraud is the positive class."""

    tp: int = Field(default=0, ge=0)
    fp: int = Field(default=0, ge=0)
    tn: int = Field(default=0, ge=0)
    fn: int = Field(default=0, ge=0)

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @classmethod
    def from_predictions(cls, labels, predictions) -> "ConfusionMatrix":
        y = np.asarray(labels, dtype=np.int64).ravel()
        p = np.asarray(predictions, dtype=np.int64).ravel()
        if y.shape != p.shape:
            raise ShapeError("predictions", y.shape, p.shape)
        tn, fp, fn, tp = confusion_matrix(y, p, labels=[0, 1]).ravel()
        return cls(tp=int(tp), fp=int(fp), tn=int(tn), fn=int(fn))


class MetricsReport(BaseModel):
    accuracy: float = Field(ge=0, le=1)
    precision: float = Field(ge=0, le=1)
    recall: float = Field(ge=0, le=1)
    f1: float = Field(ge=0, le=1)
    cm: ConfusionMatrix
    inference_seconds: float = Field(default=0.0, ge=0)
    threshold: float = 0.5

    @model_validator(mode="after")
    def _counts_consistent(self) -> "MetricsReport":
        if self.cm.total and abs(self.accuracy * self.cm.total - (self.cm.tp + self.cm.tn)) > 1e-6:
            raise ValueError("accuracy does not match the confusion matrix")
        return self


class RunInfo(BaseModel):
    """Contents of run.json."""

    model_config = ConfigDict(protected_namespaces=())

    run_id: str
    model_kind: ModelKind
    config: TrainConfig
    started_at: datetime
    ended_at: datetime | None = None
    n_train: int
    n_val: int
    parameter_count: int
    quantum_parameter_count: int
    optimizer_steps: int = 0
    best_epoch: int | None = None
    best_val_loss: float | None = None


class BenchmarkRow(BaseModel):
    model: ModelKind
    accuracy: float
    precision: float
    recall: float
    f1: float
    inference_seconds: float
    avg_epoch_seconds: float
    parameter_count: int
    quantum_parameter_count: int


class ScaleConfig(BaseModel):
    n_qubits: int = Field(ge=1, le=16)
    per_class: int = Field(ge=3)

    @classmethod
    def parse(cls, text: str) -> "ScaleConfig":
        """Parse `QUBITS:PER_CLASS`, e.g. `10:5000`."""
        qubits, sep, per_class = text.partition(":")
        if not sep or not qubits.strip().isdigit() or not per_class.strip().isdigit():
            raise InvalidArgumentError(f"expected QUBITS:PER_CLASS, got {text!r}")
        return cls(n_qubits=int(qubits), per_class=int(per_class))


class ScalingRow(BaseModel):
    n_qubits: int
    per_class: int
    samples: int
    accuracy: float
    recall: float
    f1: float
    avg_epoch_seconds: float


BENCHMARK_CSV_COLUMNS = tuple(BenchmarkRow.model_fields)
SCALING_CSV_COLUMNS = tuple(ScalingRow.model_fields)
