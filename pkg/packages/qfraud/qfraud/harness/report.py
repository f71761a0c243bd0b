import logging
from collections.abc import Sequence
from pathlib import Path

import pandas as pd
from pydantic import BaseModel

from qfraud.harness.models import EPOCH_CSV_COLUMNS, EpochRecord, MetricsReport
from qfraud.util.paths import atomic_write_text, ensure_dir

logger = logging.getLogger(__name__)

EPOCHS_FILE = "epochs.csv"
METRICS_FILE = "metrics.json"


def _frame(rows: Sequence[BaseModel], columns: Sequence[str]) -> pd.DataFrame:
    return pd.DataFrame([row.model_dump(mode="json") for row in rows], columns=list(columns))


def write_csv(rows: Sequence[BaseModel], columns: Sequence[str], path: Path) -> Path:
    """Write pydantic rows as CSV with a fixed column order and shortest round-trip floats."""
    text = _frame(rows, columns).to_csv(index=False, lineterminator="\n")
    return atomic_write_text(path, text)


def write_epochs(records: Sequence[EpochRecord], out_dir: Path, mask_timing: bool = False) -> Path:
    if mask_timing:
        records = [r.model_copy(update={"epoch_seconds": 0.0}) for r in records]
    path = write_csv(records, EPOCH_CSV_COLUMNS, ensure_dir(Path(out_dir)) / EPOCHS_FILE)
    logger.info("Wrote %d epoch records to %s", len(records), path)
    return path


def write_metrics(report: MetricsReport, out_dir: Path, mask_timing: bool = False) -> Path:
    if mask_timing:
        report = report.model_copy(update={"inference_seconds": 0.0})
    path = ensure_dir(Path(out_dir)) / METRICS_FILE
    return atomic_write_text(path, report.model_dump_json(indent=2) + "\n")


def emit_logs(
    records: Sequence[EpochRecord],
    report: MetricsReport | None,
    out_dir: Path,
    mask_timing: bool = False,
) -> tuple[Path, Path | None]:
    """
    Write epochs.csv (one row per epoch) and, when a report is given,
    metrics.json.

    With `mask_timing` every wall-clock field is written as 0.0, so two runs
    with the same seed, config and data produce identical files.
    """
    epochs_path = write_epochs(records, out_dir, mask_timing)
    metrics_path = None if report is None else write_metrics(report, out_dir, mask_timing)
    return epochs_path, metrics_path


def read_epochs_csv(path: Path) -> list[EpochRecord]:
    frame = pd.read_csv(path, float_precision="round_trip")
    return [EpochRecord.model_validate(row) for row in frame.to_dict(orient="records")]


def read_metrics(path: Path) -> MetricsReport:
    return MetricsReport.model_validate_json(Path(path).read_text(encoding="utf-8"))
