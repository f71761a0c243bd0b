"""End-to-end runs: synthetic data through preprocessing, training and evaluation."""

import pytest

from qfraud.dataprep import (
    generate_synthetic,
    load_split,
    preprocess,
    read_transactions,
    save_split,
    write_transactions,
)
from qfraud.harness import TrainConfig, emit_logs, evaluate, load_checkpoint, train
from qfraud.hybrid import ModelKind


def full_run(root, seed: int):
    raw_path = root / "data.csv"
    write_transactions(generate_synthetic(600, seed=seed), raw_path)
    split = preprocess(read_transactions(raw_path), per_class=100, seed=seed)
    split_dir = save_split(split, root / "splits", fractions=(0.7, 0.15, 0.15), per_class=100)

    cfg = TrainConfig(model_kind=ModelKind.BASELINE, epochs=3, hidden_size=8, seed=seed)
    loaded = load_split(split_dir)
    result = train(cfg, loaded, out_dir=root / "run")
    model = load_checkpoint(result.best_checkpoint, ModelKind.BASELINE)
    report = evaluate(model, loaded.x_test, loaded.y_test)
    return emit_logs(result.records, report, root / "report", mask_timing=True)


class TestPipelineDeterminism:
    def test_same_seed_byte_identical_reports(self, tmp_path):
        """Two runs with the same seed write byte-identical epoch and metrics files."""
        epochs_a, metrics_a = full_run(tmp_path / "a", seed=21)
        epochs_b, metrics_b = full_run(tmp_path / "b", seed=21)
        assert epochs_a.read_bytes() == epochs_b.read_bytes()
        assert metrics_a.read_bytes() == metrics_b.read_bytes()


@pytest.mark.integration
class TestDeskScaleAccuracy:
    """10,000 seeded synthetic rows, 70/15/15 split, at most 30 epochs."""

    @pytest.fixture(scope="class")
    def split(self):
        return preprocess(generate_synthetic(10_000, seed=0), per_class=5000, seed=0)

    def test_hybrid_four_qubits(self, split):
        """The 4-qubit hybrid reaches 0.90 accuracy and F1 on the test split."""
        cfg = TrainConfig(model_kind=ModelKind.HYBRID, epochs=30, n_qubits=4, n_layers=2, seed=0)
        result = train(cfg, split)
        report = evaluate(result.best_model(), split.x_test, split.y_test)
        assert report.accuracy >= 0.90
        assert report.f1 >= 0.90

    def test_baseline(self, split):
        """The two-layer LSTM baseline reaches 0.90 accuracy and F1 on the test split."""
        cfg = TrainConfig(model_kind=ModelKind.BASELINE, epochs=30, seed=0)
        result = train(cfg, split)
        report = evaluate(result.best_model(), split.x_test, split.y_test)
        assert report.accuracy >= 0.90
        assert report.f1 >= 0.90
