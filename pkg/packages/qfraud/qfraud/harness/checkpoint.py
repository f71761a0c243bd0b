"""
Checkpoint files: a NumPy .npz archive holding one array per named parameter
plus a `__meta__` entry with JSON metadata (format version, model kind,
architecture, training config, parameter shapes).
"""

import io
import json
import logging
import zipfile
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError

from qfraud.exceptions import (
    CheckpointCorruptError,
    CheckpointShapeError,
    CheckpointVersionError,
    ModelKindMismatchError,
)
from qfraud.harness.models import TrainConfig
from qfraud.hybrid import BaselineModel, HybridModel, Model, ModelKind
from qfraud.util.paths import atomic_write_bytes
from qfraud.vqc import VqcConfig

logger = logging.getLogger(__name__)

CHECKPOINT_FORMAT_VERSION = 1
META_KEY = "__meta__"


class Architecture(BaseModel):
    model_config = ConfigDict(protected_namespaces=())

    model_kind: ModelKind
    n_features: int
    hidden_size: int
    lstm_layers: int
    dropout: float
    n_qubits: int | None = None
    n_layers: int | None = None

    @classmethod
    def of(cls, model: Model) -> "Architecture":
        vqc_cfg = model.vqc_cfg if isinstance(model, HybridModel) else None
        return cls(
            model_kind=model.kind,
            n_features=model.n_features,
            hidden_size=model.lstm.hidden_size,
            lstm_layers=model.lstm.n_layers,
            dropout=model.dropout_rate,
            n_qubits=vqc_cfg.n_qubits if vqc_cfg else None,
            n_layers=vqc_cfg.n_layers if vqc_cfg else None,
        )

    def empty_model(self) -> Model:
        match self.model_kind:
            case ModelKind.HYBRID:
                cfg = VqcConfig(n_qubits=self.n_qubits, n_layers=self.n_layers)
                model = HybridModel.zeros(self.n_features, self.hidden_size, cfg, self.lstm_layers)
            case ModelKind.BASELINE:
                model = BaselineModel.zeros(self.n_features, self.hidden_size, self.lstm_layers)
        model.dropout_rate = self.dropout
        return model


class CheckpointMeta(BaseModel):
    format_version: int
    architecture: Architecture
    config: TrainConfig | None = None
    parameters: dict[str, list[int]]


def save_checkpoint(model: Model, path: Path, config: TrainConfig | None = None) -> Path:
    """Write `model` atomically; the file is replaced only once fully written."""
    path = Path(path)
    params = model.parameters()
    meta = CheckpointMeta(
        format_version=CHECKPOINT_FORMAT_VERSION,
        architecture=Architecture.of(model),
        config=config,
        parameters={name: list(arr.shape) for name, arr in params.items()},
    )

    buffer = io.BytesIO()
    np.savez(buffer, **{META_KEY: np.array(meta.model_dump_json())}, **params)
    atomic_write_bytes(path, buffer.getvalue())
    logger.debug("Saved %s checkpoint to %s", model.kind, path)
    return path


def read_checkpoint_meta(path: Path) -> CheckpointMeta:
    return _read(Path(path))[0]


def _read(path: Path) -> tuple[CheckpointMeta, dict[str, np.ndarray]]:
    if not path.exists():
        raise FileNotFoundError(path)

    try:
        with np.load(path, allow_pickle=False) as archive:
            arrays = {name: archive[name] for name in archive.files}
    except (zipfile.BadZipFile, ValueError, OSError, EOFError) as e:
        raise CheckpointCorruptError(path, f"unreadable archive ({e})") from e

    if META_KEY not in arrays:
        raise CheckpointCorruptError(path, "missing metadata")
    try:
        raw = json.loads(str(arrays.pop(META_KEY)))
    except json.JSONDecodeError as e:
        raise CheckpointCorruptError(path, f"metadata is not JSON ({e})") from e

    version = raw.get("format_version") if isinstance(raw, dict) else None
    if version != CHECKPOINT_FORMAT_VERSION:
        raise CheckpointVersionError(
            path, f"format version {version!r}, expected {CHECKPOINT_FORMAT_VERSION}"
        )
    try:
        meta = CheckpointMeta.model_validate(raw)
    except ValidationError as e:
        raise CheckpointCorruptError(path, f"invalid metadata ({e})") from e
    return meta, arrays


def load_checkpoint(path: Path, expected_kind: ModelKind | None = None) -> Model:
    """
    Rebuild the model stored at `path`, bit-for-bit.

    Raises:
        CheckpointCorruptError: truncated or unparsable file.
        CheckpointVersionError: unknown format version.
        ModelKindMismatchError: stored kind differs from `expected_kind`.
        CheckpointShapeError: a parameter is missing or has the wrong shape.
    """
    path = Path(path)
    meta, arrays = _read(path)
    arch = meta.architecture

    if expected_kind is not None and arch.model_kind != expected_kind:
        raise ModelKindMismatchError(
            path, f"holds a {arch.model_kind} model, expected {expected_kind}"
        )

    try:
        model = arch.empty_model()
    except (ValueError, TypeError) as e:
        raise CheckpointCorruptError(path, f"invalid architecture ({e})") from e

    for name, target in model.parameters().items():
        if name not in arrays:
            raise CheckpointShapeError(path, f"missing parameter {name!r}")
        stored = arrays[name]
        if stored.shape != target.shape:
            raise CheckpointShapeError(
                path, f"parameter {name!r} has shape {stored.shape}, expected {target.shape}"
            )
        target[...] = stored

    logger.debug("Loaded %s checkpoint from %s", arch.model_kind, path)
    return model
