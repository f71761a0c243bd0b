import logging
from pathlib import Path

import numpy as np
import pandas as pd
import yaml
from pydantic import BaseModel, ValidationError

from qfraud.dataprep.encoding import CategoryMap
from qfraud.dataprep.normalize import NormStats
from qfraud.dataprep.schema import FEATURE_COLUMNS, LABEL_COLUMN, RAW_COLUMNS, RawTransaction
from qfraud.dataprep.split import DatasetSplit
from qfraud.exceptions import DataError
from qfraud.util.paths import atomic_write_text

logger = logging.getLogger(__name__)

SPLIT_FORMAT_VERSION = 1
SPLIT_PARTS = ("train", "val", "test")
METADATA_FILE = "metadata.yaml"


class SplitMetadata(BaseModel):
    format_version: int = SPLIT_FORMAT_VERSION
    seed: int
    per_class: int | None = None
    fractions: tuple[float, float, float]
    feature_columns: list[str]
    encoders: dict[str, CategoryMap]
    norm_stats: dict[str, list[float]]
    rows: dict[str, int]


def read_transactions(path: Path) -> pd.DataFrame:
    """
    Read a raw transaction CSV and validate every row.

    Raises:
        DataError: missing columns or an unparsable row, naming its 1-based
            data row number.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(path)

    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise DataError(f"unreadable CSV: {e}", source=path) from e

    missing = [c for c in RAW_COLUMNS if c not in frame.columns]
    if missing:
        raise DataError(f"missing columns {missing}", source=path)

    records = []
    for row_number, record in enumerate(frame.to_dict(orient="records"), start=1):
        try:
            records.append(RawTransaction.model_validate(record).model_dump())
        except ValidationError as e:
            first = e.errors()[0]
            field = ".".join(str(p) for p in first["loc"])
            raise DataError(f"{field}: {first['msg']}", source=path, row=row_number) from e

    if not records:
        raise DataError("no data rows", source=path)

    logger.debug("Read %d transactions from %s", len(records), path)
    return pd.DataFrame.from_records(records, columns=list(RawTransaction.model_fields))


def write_transactions(frame: pd.DataFrame, path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    atomic_write_text(path, frame.to_csv(index=False, lineterminator="\n"))


def save_split(
    split: DatasetSplit,
    out_dir: Path,
    fractions: tuple[float, float, float],
    per_class: int | None = None,
) -> Path:
    """Write train/val/test CSVs (features then label) and metadata.yaml."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    columns = split.feature_names or list(FEATURE_COLUMNS)

    rows = {}
    for name in SPLIT_PARTS:
        x, y = split.part(name)
        frame = pd.DataFrame(x, columns=columns)
        frame[LABEL_COLUMN] = y
        atomic_write_text(
            out_dir / f"{name}.csv",
            frame.to_csv(index=False, float_format="%.17g", lineterminator="\n"),
        )
        rows[name] = int(y.size)

    metadata = SplitMetadata(
        seed=split.seed,
        per_class=per_class,
        fractions=fractions,
        feature_columns=columns,
        encoders=split.encoders,
        norm_stats=split.norm_stats.to_dict(),
        rows=rows,
    )
    atomic_write_text(
        out_dir / METADATA_FILE,
        yaml.safe_dump(metadata.model_dump(mode="json"), sort_keys=False),
    )
    logger.info("Saved split to %s (%s)", out_dir, rows)
    return out_dir


def load_metadata(split_dir: Path) -> SplitMetadata:
    meta_path = Path(split_dir) / METADATA_FILE
    if not meta_path.exists():
        raise DataError(f"no {METADATA_FILE} in split directory", source=Path(split_dir))

    with open(meta_path) as f:
        raw = yaml.safe_load(f)
    try:
        metadata = SplitMetadata.model_validate(raw)
    except ValidationError as e:
        raise DataError(f"invalid metadata: {e}", source=meta_path) from e

    if metadata.format_version != SPLIT_FORMAT_VERSION:
        raise DataError(
            f"unsupported split format version {metadata.format_version}", source=meta_path
        )
    return metadata


def load_split(split_dir: Path) -> DatasetSplit:
    """Read a directory written by save_split."""
    split_dir = Path(split_dir)
    metadata = load_metadata(split_dir)
    expected = [*metadata.feature_columns, LABEL_COLUMN]

    parts = {}
    for name in SPLIT_PARTS:
        csv_path = split_dir / f"{name}.csv"
        if not csv_path.exists():
            raise DataError(f"missing {name}.csv", source=split_dir)
        frame = pd.read_csv(csv_path, float_precision="round_trip")
        if list(frame.columns) != expected:
            raise DataError("column order does not match metadata", source=csv_path)
        if frame.empty:
            raise DataError("split part is empty", source=csv_path)
        if frame.isna().any().any():
            row = int(np.flatnonzero(frame.isna().any(axis=1).to_numpy())[0]) + 1
            raise DataError("missing value", source=csv_path, row=row)
        parts[name] = (
            frame[metadata.feature_columns].to_numpy(dtype=np.float64),
            frame[LABEL_COLUMN].to_numpy(dtype=np.int64),
        )

    return DatasetSplit(
        x_train=parts["train"][0],
        y_train=parts["train"][1],
        x_val=parts["val"][0],
        y_val=parts["val"][1],
        x_test=parts["test"][0],
        y_test=parts["test"][1],
        norm_stats=NormStats.from_dict(metadata.norm_stats),
        seed=metadata.seed,
        feature_names=metadata.feature_columns,
        encoders=metadata.encoders,
    )
