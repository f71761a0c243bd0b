import pandas as pd
import pytest

from qfraud.dataprep import generate_synthetic
from qfraud.exceptions import InvalidArgumentError
from qfraud.harness import ScaleConfig, benchmark, read_metrics, scale
from qfraud.hybrid import ModelKind


class TestBenchmark:
    def test_compares_both_models(self, toy_split, hybrid_cfg, tmp_path):
        """benchmark trains both models and writes their artifacts and comparison."""
        runs = benchmark(hybrid_cfg.model_copy(update={"epochs": 1}), toy_split, tmp_path, mask_timing=True)
        assert [run.kind for run in runs] == [ModelKind.HYBRID, ModelKind.BASELINE]

        table = pd.read_csv(tmp_path / "comparison.csv")
        assert table["model"].tolist() == ["hybrid", "baseline"]
        assert table.loc[1, "quantum_parameter_count"] == 0
        assert table.loc[0, "quantum_parameter_count"] == 6
        assert (table["inference_seconds"] == 0.0).all()

        for kind in ("hybrid", "baseline"):
            run_dir = tmp_path / kind
            assert (run_dir / "epochs.csv").exists()
            assert (run_dir / "best.ckpt").exists()
            assert (run_dir / "run.json").exists()
        assert read_metrics(tmp_path / "hybrid" / "metrics.json") == runs[0].report.model_copy(
            update={"inference_seconds": 0.0}
        )

    def test_rows_reflect_reports(self, toy_split, baseline_cfg, tmp_path):
        """Comparison rows carry the report metrics and mean epoch time."""
        runs = benchmark(baseline_cfg, toy_split, tmp_path, kinds=(ModelKind.BASELINE,))
        row = runs[0].row()
        assert row.accuracy == runs[0].report.accuracy
        assert row.avg_epoch_seconds == pytest.approx(
            sum(r.epoch_seconds for r in runs[0].result.records) / 3
        )


class TestScale:
    def test_one_row_per_config(self, hybrid_cfg, tmp_path):
        """scale writes one row and one run directory per configuration."""
        raw = generate_synthetic(400, seed=2)
        configs = [ScaleConfig(n_qubits=2, per_class=20), ScaleConfig(n_qubits=3, per_class=30)]
        rows = scale(raw, configs, hybrid_cfg.model_copy(update={"epochs": 1}), tmp_path)
        assert [(r.n_qubits, r.samples) for r in rows] == [(2, 40), (3, 60)]

        table = pd.read_csv(tmp_path / "scaling.csv")
        assert table["per_class"].tolist() == [20, 30]
        assert (tmp_path / "q3_n30" / "metrics.json").exists()


class TestScaleConfig:
    def test_parse(self):
        """QUBITS:PER_CLASS parses into a ScaleConfig."""
        assert ScaleConfig.parse("10:5000") == ScaleConfig(n_qubits=10, per_class=5000)

    @pytest.mark.parametrize("text", ["10", "a:b", "10:", ":5"])
    def test_parse_rejects_malformed(self, text):
        """Malformed scale points are rejected."""
        with pytest.raises(InvalidArgumentError):
            ScaleConfig.parse(text)
