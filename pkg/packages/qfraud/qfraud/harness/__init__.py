from qfraud.harness.benchmark import ModelRun, benchmark, run_model, scale
from qfraud.harness.checkpoint import (
    CHECKPOINT_FORMAT_VERSION,
    load_checkpoint,
    read_checkpoint_meta,
    save_checkpoint,
)
from qfraud.harness.metrics import evaluate, metrics_from_cm
from qfraud.harness.models import (
    BenchmarkRow,
    ConfusionMatrix,
    EpochRecord,
    MetricsReport,
    RunInfo,
    ScaleConfig,
    ScalingRow,
    TrainConfig,
)
from qfraud.harness.report import (
    emit_logs,
    read_epochs_csv,
    read_metrics,
    write_epochs,
    write_metrics,
)
from qfraud.harness.trainer import TrainResult, build_model, train

__all__ = [
    "CHECKPOINT_FORMAT_VERSION",
    "BenchmarkRow",
    "ConfusionMatrix",
    "EpochRecord",
    "MetricsReport",
    "ModelRun",
    "RunInfo",
    "ScaleConfig",
    "ScalingRow",
    "TrainConfig",
    "TrainResult",
    "benchmark",
    "build_model",
    "emit_logs",
    "evaluate",
    "load_checkpoint",
    "metrics_from_cm",
    "read_checkpoint_meta",
    "read_epochs_csv",
    "read_metrics",
    "run_model",
    "save_checkpoint",
    "scale",
    "train",
    "write_epochs",
    "write_metrics",
]
