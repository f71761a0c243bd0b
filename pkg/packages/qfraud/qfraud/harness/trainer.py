"""
Training loop: seeded shuffling, mini-batches (the last one may be partial),
BCE-with-logits, backward, global-norm clipping and Adam, then a validation
pass. The best model by validation loss is checkpointed.
"""

import logging
import math
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from qfraud.dataprep import DatasetSplit
from qfraud.exceptions import InvalidArgumentError, NumericError
from qfraud.harness.checkpoint import save_checkpoint
from qfraud.harness.models import EpochRecord, RunInfo, TrainConfig
from qfraud.hybrid import (
    BaselineModel,
    HybridModel,
    Model,
    ModelKind,
    flatten_gradients,
    model_backward,
    model_forward,
    predict,
)
from qfraud.neural import AdamState, adam_step, bce_with_logits, clip_grad_norm
from qfraud.util.events import EventLogger, EventType, new_run_id
from qfraud.util.paths import atomic_write_text, ensure_dir
from qfraud.vqc import CircuitCounter, VqcConfig
from qfraud.vqc.circuit import DEFAULT_MAX_BATCH_AMPLITUDES

logger = logging.getLogger(__name__)

BEST_CHECKPOINT = "best.ckpt"
RUN_FILE = "run.json"
EVENTS_FILE = "events.jsonl"

EpochCallback = Callable[[EpochRecord], None]


@dataclass
class TrainResult:
    config: TrainConfig
    model: Model
    best_params: np.ndarray
    records: list[EpochRecord] = field(default_factory=list)
    best_epoch: int | None = None
    best_val_loss: float | None = None
    best_checkpoint: Path | None = None
    optimizer_steps: int = 0
    circuits: int = 0
    run_id: str = ""

    def best_model(self) -> Model:
        """A copy of the model carrying the best-validation parameters."""
        model = build_model(self.config, self.model.n_features, np.random.default_rng(0))
        model.assign_flat(self.best_params)
        return model

    @property
    def avg_epoch_seconds(self) -> float:
        if not self.records:
            return 0.0
        return sum(r.epoch_seconds for r in self.records) / len(self.records)


def build_model(cfg: TrainConfig, n_features: int, rng: np.random.Generator) -> Model:
    match cfg.model_kind:
        case ModelKind.HYBRID:
            return HybridModel.initialize(
                n_features,
                rng,
                hidden_size=cfg.hidden_size,
                lstm_layers=cfg.effective_lstm_layers,
                vqc_cfg=VqcConfig(n_qubits=cfg.n_qubits, n_layers=cfg.n_layers),
                dropout_rate=cfg.dropout,
            )
        case ModelKind.BASELINE:
            return BaselineModel.initialize(
                n_features,
                rng,
                hidden_size=cfg.hidden_size,
                lstm_layers=cfg.effective_lstm_layers,
                dropout_rate=cfg.dropout,
            )
    raise InvalidArgumentError(f"Unknown model kind {cfg.model_kind!r}")


def validation_pass(
    model: Model,
    features: np.ndarray,
    labels: np.ndarray,
    threshold: float,
    max_batch_amplitudes: int = DEFAULT_MAX_BATCH_AMPLITUDES,
) -> tuple[float, float]:
    """(mean BCE loss, accuracy) in eval mode."""
    logits, _ = model_forward(
        features, model, training=False, max_batch_amplitudes=max_batch_amplitudes
    )
    loss, _ = bce_with_logits(logits, labels)
    accuracy = float(np.mean(predict(logits, threshold) == labels))
    return loss, accuracy


def _write_run_info(path: Path, info: RunInfo) -> None:
    atomic_write_text(path, info.model_dump_json(indent=2) + "\n")


def train(
    cfg: TrainConfig,
    split: DatasetSplit,
    out_dir: Path | None = None,
    on_epoch: EpochCallback | None = None,
    max_batch_amplitudes: int = DEFAULT_MAX_BATCH_AMPLITUDES,
) -> TrainResult:
    """
    Train a model described by `cfg` on `split`.

    When `out_dir` is given, the run writes run.json, events.jsonl and
    best.ckpt there.

    Raises:
        InvalidArgumentError: empty train or validation set.
        NumericError: a batch produced a non-finite loss.
    """
    x_train, y_train = split.x_train, split.y_train
    x_val, y_val = split.x_val, split.y_val
    if y_train.size == 0 or y_val.size == 0:
        raise InvalidArgumentError("train and validation sets must be non-empty")

    rng = np.random.default_rng(cfg.seed)
    model = build_model(cfg, split.n_features, rng)
    adam = AdamState.for_params(model.flatten(), lr=cfg.lr, weight_decay=cfg.weight_decay)
    counter = CircuitCounter()

    run_id = new_run_id()
    events: EventLogger | None = None
    run_file = checkpoint_path = None
    info = RunInfo(
        run_id=run_id,
        model_kind=cfg.model_kind,
        config=cfg,
        started_at=datetime.now(timezone.utc),
        n_train=int(y_train.size),
        n_val=int(y_val.size),
        parameter_count=model.parameter_count,
        quantum_parameter_count=model.quantum_parameter_count,
    )
    if out_dir is not None:
        out_dir = ensure_dir(Path(out_dir))
        run_file = out_dir / RUN_FILE
        checkpoint_path = out_dir / BEST_CHECKPOINT
        _write_run_info(run_file, info)
        events = EventLogger(run_id, out_dir / EVENTS_FILE)
        events.log(EventType.RUN_STARTED, {"config": cfg.model_dump(mode="json")})

    logger.info(
        "Training %s model: %d parameters (%d quantum), %d train rows, %d epochs",
        cfg.model_kind,
        model.parameter_count,
        model.quantum_parameter_count,
        y_train.size,
        cfg.epochs,
    )

    result = TrainResult(config=cfg, model=model, best_params=model.flatten(), run_id=run_id)
    n_batches = math.ceil(y_train.size / cfg.batch_size)

    for epoch in range(1, cfg.epochs + 1):
        start = time.perf_counter()
        order = rng.permutation(y_train.size)
        loss_sum = 0.0
        correct = 0

        for batch_index in range(n_batches):
            idx = order[batch_index * cfg.batch_size : (batch_index + 1) * cfg.batch_size]
            xb, yb = x_train[idx], y_train[idx]

            logits, cache = model_forward(
                xb,
                model,
                training=True,
                rng=rng,
                counter=counter,
                max_batch_amplitudes=max_batch_amplitudes,
            )
            loss, dlogits = bce_with_logits(logits, yb)
            if not math.isfinite(loss):
                if events is not None:
                    events.log(
                        EventType.NUMERIC_FAILURE,
                        {"epoch": epoch, "batch": batch_index, "loss": str(loss)},
                    )
                raise NumericError(epoch, batch_index, loss)

            grads = model_backward(cache, dlogits, model, counter, max_batch_amplitudes)
            flat_grads = clip_grad_norm(flatten_gradients(grads, model), cfg.clip_norm)
            params, adam = adam_step(model.flatten(), flat_grads, adam)
            model.assign_flat(params)
            result.optimizer_steps += 1

            loss_sum += loss * yb.size
            correct += int(np.sum(predict(logits, cfg.threshold) == yb))

        val_loss, val_accuracy = validation_pass(
            model, x_val, y_val, cfg.threshold, max_batch_amplitudes
        )
        if not math.isfinite(val_loss):
            raise NumericError(epoch, -1, val_loss)
        seconds = time.perf_counter() - start

        record = EpochRecord(
            epoch=epoch,
            train_loss=loss_sum / y_train.size,
            val_loss=val_loss,
            val_accuracy=val_accuracy,
            epoch_seconds=seconds,
            train_accuracy=correct / y_train.size,
        )
        result.records.append(record)
        logger.info(
            "Epoch %d/%d: train_loss=%.4f val_loss=%.4f val_acc=%.4f (%.2fs)",
            epoch,
            cfg.epochs,
            record.train_loss,
            val_loss,
            val_accuracy,
            seconds,
        )
        if events is not None:
            events.log(EventType.EPOCH_FINISHED, record.model_dump(mode="json"))

        if result.best_val_loss is None or val_loss < result.best_val_loss:
            result.best_val_loss = val_loss
            result.best_epoch = epoch
            result.best_params = model.flatten()
            if checkpoint_path is not None:
                result.best_checkpoint = save_checkpoint(model, checkpoint_path, cfg)
                events.log(
                    EventType.CHECKPOINT_SAVED,
                    {"epoch": epoch, "val_loss": val_loss, "path": str(checkpoint_path)},
                )

        if on_epoch is not None:
            on_epoch(record)

    result.circuits = counter.count

    if run_file is not None:
        info = info.model_copy(
            update={
                "ended_at": datetime.now(timezone.utc),
                "optimizer_steps": result.optimizer_steps,
                "best_epoch": result.best_epoch,
                "best_val_loss": result.best_val_loss,
            }
        )
        _write_run_info(run_file, info)
        events.log(
            EventType.RUN_FINISHED,
            {
                "optimizer_steps": result.optimizer_steps,
                "best_epoch": result.best_epoch,
                "circuits": result.circuits,
            },
        )

    return result
