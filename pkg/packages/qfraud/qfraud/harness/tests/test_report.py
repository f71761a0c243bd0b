from qfraud.harness import (
    ConfusionMatrix,
    EpochRecord,
    emit_logs,
    metrics_from_cm,
    read_epochs_csv,
    read_metrics,
)
from qfraud.harness.models import EPOCH_CSV_COLUMNS


def records(n: int) -> list[EpochRecord]:
    return [
        EpochRecord(
            epoch=i,
            train_loss=1.0 / i,
            val_loss=0.9 / i + 0.1,
            val_accuracy=min(1.0, 0.5 + i / 200),
            epoch_seconds=0.25 * i,
        )
        for i in range(1, n + 1)
    ]


class TestEmitLogs:
    def test_one_line_per_epoch_plus_header(self, tmp_path):
        """epochs.csv holds a header and one line per epoch."""
        epochs_path, metrics_path = emit_logs(records(80), None, tmp_path)
        lines = epochs_path.read_text().splitlines()
        assert len(lines) == 81
        assert lines[0] == ",".join(EPOCH_CSV_COLUMNS)
        assert metrics_path is None

    def test_no_epochs_writes_header_only(self, tmp_path):
        """With no epochs only the header is written."""
        epochs_path, _ = emit_logs([], None, tmp_path)
        assert epochs_path.read_text().splitlines() == [",".join(EPOCH_CSV_COLUMNS)]

    def test_epochs_round_trip(self, tmp_path):
        """Epoch records read back unchanged."""
        rows = records(5)
        epochs_path, _ = emit_logs(rows, None, tmp_path)
        assert read_epochs_csv(epochs_path) == rows

    def test_metrics_round_trip(self, tmp_path):
        """The metrics report reads back unchanged."""
        report = metrics_from_cm(ConfusionMatrix(tp=7, fp=1, tn=6, fn=2), inference_seconds=0.3)
        _, metrics_path = emit_logs(records(1), report, tmp_path)
        assert read_metrics(metrics_path) == report

    def test_mask_timing_zeroes_wall_clock(self, tmp_path):
        """Masked timing writes zero seconds everywhere."""
        report = metrics_from_cm(ConfusionMatrix(tp=1, tn=1), inference_seconds=2.0)
        epochs_path, metrics_path = emit_logs(records(3), report, tmp_path, mask_timing=True)
        assert all(r.epoch_seconds == 0.0 for r in read_epochs_csv(epochs_path))
        assert read_metrics(metrics_path).inference_seconds == 0.0

    def test_masked_runs_are_byte_identical(self, tmp_path):
        """Runs differing only in timing produce identical masked files."""
        report = metrics_from_cm(ConfusionMatrix(tp=3, fp=1, tn=2, fn=0))
        slow = [r.model_copy(update={"epoch_seconds": 9.0}) for r in records(4)]
        a = emit_logs(records(4), report, tmp_path / "a", mask_timing=True)
        b = emit_logs(slow, report.model_copy(update={"inference_seconds": 4.0}), tmp_path / "b", mask_timing=True)
        assert a[0].read_bytes() == b[0].read_bytes()
        assert a[1].read_bytes() == b[1].read_bytes()
