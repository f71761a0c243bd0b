import numpy as np
import pytest

from qfraud.dataprep import DatasetSplit, stratified_split
from qfraud.harness import TrainConfig
from qfraud.hybrid import ModelKind


@pytest.fixture
def toy_split() -> DatasetSplit:
    rng = np.random.default_rng(3)
    x = rng.normal(size=(160, 4))
    y = (x[:, 0] + 0.5 * x[:, 1] > 0).astype(np.int64)
    return stratified_split(x, y, seed=3)


@pytest.fixture
def baseline_cfg() -> TrainConfig:
    return TrainConfig(
        model_kind=ModelKind.BASELINE, epochs=3, batch_size=16, hidden_size=4, dropout=0.1, seed=5
    )


@pytest.fixture
def hybrid_cfg() -> TrainConfig:
    return TrainConfig(
        model_kind=ModelKind.HYBRID,
        epochs=2,
        batch_size=16,
        hidden_size=4,
        n_qubits=2,
        n_layers=1,
        dropout=0.1,
        seed=5,
    )
