"""Side-by-side comparison of the hybrid and baseline models, and qubit/data scaling runs."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import pandas as pd

from qfraud.dataprep import DatasetSplit, preprocess
from qfraud.harness.metrics import evaluate
from qfraud.harness.models import (
    BENCHMARK_CSV_COLUMNS,
    SCALING_CSV_COLUMNS,
    BenchmarkRow,
    MetricsReport,
    ScaleConfig,
    ScalingRow,
    TrainConfig,
)
from qfraud.harness.report import emit_logs, write_csv
from qfraud.harness.trainer import EpochCallback, TrainResult, train
from qfraud.hybrid import ModelKind
from qfraud.util.paths import ensure_dir
from qfraud.vqc.circuit import DEFAULT_MAX_BATCH_AMPLITUDES

logger = logging.getLogger(__name__)

COMPARISON_FILE = "comparison.csv"
SCALING_FILE = "scaling.csv"


@dataclass
class ModelRun:
    kind: ModelKind
    result: TrainResult
    report: MetricsReport

    def row(self, mask_timing: bool = False) -> BenchmarkRow:
        model = self.result.model
        return BenchmarkRow(
            model=self.kind,
            accuracy=self.report.accuracy,
            precision=self.report.precision,
            recall=self.report.recall,
            f1=self.report.f1,
            inference_seconds=0.0 if mask_timing else self.report.inference_seconds,
            avg_epoch_seconds=0.0 if mask_timing else self.result.avg_epoch_seconds,
            parameter_count=model.parameter_count,
            quantum_parameter_count=model.quantum_parameter_count,
        )


def run_model(
    cfg: TrainConfig,
    split: DatasetSplit,
    out_dir: Path | None = None,
    mask_timing: bool = False,
    on_epoch: EpochCallback | None = None,
    max_batch_amplitudes: int = DEFAULT_MAX_BATCH_AMPLITUDES,
) -> ModelRun:
    """Train one model, then score its best-validation parameters on the test set."""
    result = train(
        cfg, split, out_dir=out_dir, on_epoch=on_epoch, max_batch_amplitudes=max_batch_amplitudes
    )
    report = evaluate(
        result.best_model(),
        split.x_test,
        split.y_test,
        threshold=cfg.threshold,
        max_batch_amplitudes=max_batch_amplitudes,
    )
    if out_dir is not None:
        emit_logs(result.records, report, out_dir, mask_timing=mask_timing)
    return ModelRun(kind=cfg.model_kind, result=result, report=report)


def benchmark(
    base_cfg: TrainConfig,
    split: DatasetSplit,
    out_dir: Path,
    mask_timing: bool = False,
    kinds: Sequence[ModelKind] = (ModelKind.HYBRID, ModelKind.BASELINE),
    on_epoch: EpochCallback | None = None,
    max_batch_amplitudes: int = DEFAULT_MAX_BATCH_AMPLITUDES,
) -> list[ModelRun]:
    """
    Train every model kind with the same hyperparameters and seed.

    Each kind gets its own `<out_dir>/<kind>/` directory with run.json,
    best.ckpt, epochs.csv and metrics.json; the summary lands in
    `<out_dir>/comparison.csv`.
    """
    out_dir = ensure_dir(Path(out_dir))
    runs = []
    for kind in kinds:
        cfg = base_cfg.model_copy(update={"model_kind": kind})
        logger.info("Benchmarking %s model", kind)
        runs.append(
            run_model(
                cfg,
                split,
                out_dir / kind.value,
                mask_timing=mask_timing,
                on_epoch=on_epoch,
                max_batch_amplitudes=max_batch_amplitudes,
            )
        )

    rows = [run.row(mask_timing) for run in runs]
    write_csv(rows, BENCHMARK_CSV_COLUMNS, out_dir / COMPARISON_FILE)
    return runs


def scale(
    raw: pd.DataFrame,
    configs: Sequence[ScaleConfig],
    base_cfg: TrainConfig,
    out_dir: Path,
    mask_timing: bool = False,
    source: Path | None = None,
    max_batch_amplitudes: int = DEFAULT_MAX_BATCH_AMPLITUDES,
) -> list[ScalingRow]:
    """
    Re-run preprocessing and hybrid training per (qubits, per-class size)
    configuration and tabulate test metrics against average epoch time.
    """
    out_dir = ensure_dir(Path(out_dir))
    rows = []
    for sc in configs:
        split = preprocess(raw, per_class=sc.per_class, seed=base_cfg.seed, source=source)
        cfg = base_cfg.model_copy(
            update={"model_kind": ModelKind.HYBRID, "n_qubits": sc.n_qubits}
        )
        run_dir = out_dir / f"q{sc.n_qubits}_n{sc.per_class}"
        run = run_model(
            cfg,
            split,
            run_dir,
            mask_timing=mask_timing,
            max_batch_amplitudes=max_batch_amplitudes,
        )
        rows.append(
            ScalingRow(
                n_qubits=sc.n_qubits,
                per_class=sc.per_class,
                samples=int(split.y_train.size + split.y_val.size + split.y_test.size),
                accuracy=run.report.accuracy,
                recall=run.report.recall,
                f1=run.report.f1,
                avg_epoch_seconds=0.0 if mask_timing else run.result.avg_epoch_seconds,
            )
        )
        logger.info(
            "Scaling run %d qubits x %d per class: accuracy=%.4f",
            sc.n_qubits,
            sc.per_class,
            run.report.accuracy,
        )

    write_csv(rows, SCALING_CSV_COLUMNS, out_dir / SCALING_FILE)
    return rows
