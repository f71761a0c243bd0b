import json

import numpy as np
import pytest

from qfraud.exceptions import (
    CheckpointCorruptError,
    CheckpointShapeError,
    CheckpointVersionError,
    ModelKindMismatchError,
)
from qfraud.harness import TrainConfig, load_checkpoint, read_checkpoint_meta, save_checkpoint
from qfraud.harness.checkpoint import META_KEY
from qfraud.hybrid import BaselineModel, HybridModel, ModelKind
from qfraud.vqc import VqcConfig


@pytest.fixture
def hybrid():
    return HybridModel.initialize(
        5, np.random.default_rng(0), hidden_size=6, vqc_cfg=VqcConfig(n_qubits=3, n_layers=2)
    )


def rewrite(path, mutate):
    """Load the raw archive, let `mutate` edit (meta, arrays), write it back."""
    with np.load(path) as archive:
        arrays = {name: archive[name] for name in archive.files}
    meta = json.loads(str(arrays.pop(META_KEY)))
    mutate(meta, arrays)
    with open(path, "wb") as f:
        np.savez(f, **{META_KEY: np.array(json.dumps(meta))}, **arrays)


class TestRoundTrip:
    def test_hybrid_bit_exact(self, hybrid, tmp_path):
        """A hybrid model survives save and load bit for bit."""
        path = save_checkpoint(hybrid, tmp_path / "best.ckpt")
        loaded = load_checkpoint(path)
        assert isinstance(loaded, HybridModel)
        assert loaded.vqc_cfg == hybrid.vqc_cfg
        assert loaded.dropout_rate == hybrid.dropout_rate
        for name, arr in hybrid.parameters().items():
            np.testing.assert_array_equal(loaded.parameters()[name], arr)

    def test_baseline_bit_exact(self, tmp_path):
        """A baseline model survives save and load bit for bit."""
        model = BaselineModel.initialize(4, np.random.default_rng(1), hidden_size=5)
        loaded = load_checkpoint(save_checkpoint(model, tmp_path / "b.ckpt"), ModelKind.BASELINE)
        assert loaded.lstm.n_layers == 2
        np.testing.assert_array_equal(loaded.flatten(), model.flatten())

    def test_config_stored_in_meta(self, hybrid, tmp_path):
        """The training config and parameter shapes are stored in the metadata."""
        cfg = TrainConfig(n_qubits=3, hidden_size=6, seed=9)
        path = save_checkpoint(hybrid, tmp_path / "best.ckpt", cfg)
        meta = read_checkpoint_meta(path)
        assert meta.config == cfg
        assert meta.architecture.model_kind == ModelKind.HYBRID
        assert meta.parameters["vqc.angles"] == [2, 3, 3]

    def test_overwrite_leaves_no_temp_files(self, hybrid, tmp_path):
        """Overwriting a checkpoint leaves only the final file behind."""
        save_checkpoint(hybrid, tmp_path / "best.ckpt")
        save_checkpoint(hybrid, tmp_path / "best.ckpt")
        assert [p.name for p in tmp_path.iterdir()] == ["best.ckpt"]


class TestFailures:
    def test_missing_file(self, tmp_path):
        """A missing checkpoint raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            load_checkpoint(tmp_path / "nope.ckpt")

    def test_garbage_is_corrupt(self, tmp_path):
        """A file that is not an archive is reported as corrupt."""
        path = tmp_path / "bad.ckpt"
        path.write_bytes(b"definitely not a zip archive")
        with pytest.raises(CheckpointCorruptError):
            load_checkpoint(path)

    def test_truncated_is_corrupt(self, hybrid, tmp_path):
        """A truncated archive is reported as corrupt."""
        path = save_checkpoint(hybrid, tmp_path / "best.ckpt")
        data = path.read_bytes()
        path.write_bytes(data[: len(data) // 2])
        with pytest.raises(CheckpointCorruptError):
            load_checkpoint(path)

    def test_unknown_version(self, hybrid, tmp_path):
        """An unknown format version raises CheckpointVersionError."""
        path = save_checkpoint(hybrid, tmp_path / "best.ckpt")
        rewrite(path, lambda meta, arrays: meta.update(format_version=99))
        with pytest.raises(CheckpointVersionError):
            load_checkpoint(path)

    def test_kind_mismatch(self, hybrid, tmp_path):
        """Loading a hybrid checkpoint as a baseline raises ModelKindMismatchError."""
        path = save_checkpoint(hybrid, tmp_path / "best.ckpt")
        with pytest.raises(ModelKindMismatchError):
            load_checkpoint(path, expected_kind=ModelKind.BASELINE)

    def test_wrong_parameter_shape(self, hybrid, tmp_path):
        """A parameter with the wrong shape raises CheckpointShapeError."""
        path = save_checkpoint(hybrid, tmp_path / "best.ckpt")

        def shrink(meta, arrays):
            arrays["head.weight"] = arrays["head.weight"][:, :2]

        rewrite(path, shrink)
        with pytest.raises(CheckpointShapeError):
            load_checkpoint(path)

    def test_missing_parameter(self, hybrid, tmp_path):
        """A missing parameter array raises CheckpointShapeError."""
        path = save_checkpoint(hybrid, tmp_path / "best.ckpt")
        rewrite(path, lambda meta, arrays: arrays.pop("reducer.bias"))
        with pytest.raises(CheckpointShapeError):
            load_checkpoint(path)
