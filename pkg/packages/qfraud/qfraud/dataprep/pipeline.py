import logging
from pathlib import Path

import numpy as np
import pandas as pd

from qfraud.dataprep.encoding import CategoryMap, encode_with, label_encode
from qfraud.dataprep.features import engineer_features
from qfraud.dataprep.schema import CATEGORICAL_COLUMNS, FEATURE_COLUMNS, RAW_LABEL_COLUMN
from qfraud.dataprep.split import DEFAULT_FRACTIONS, DatasetSplit, balance_subset, stratified_split
from qfraud.exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)

DEFAULT_PER_CLASS = 5000


def build_feature_matrix(
    raw: pd.DataFrame,
    source: Path | None = None,
    encoders: dict[str, CategoryMap] | None = None,
) -> tuple[np.ndarray, np.ndarray, dict[str, CategoryMap]]:
    """
    Engineer and label-encode a validated raw frame.

    Without `encoders`, one is fitted per categorical column on every row here,
    before any subsetting. With `encoders` (from an earlier split), those
    mappings are applied as they are and an unseen category raises
    EncodingError.

    Returns (features in FEATURE_COLUMNS order, labels, encoders).
    """
    if encoders is not None:
        missing = [c for c in CATEGORICAL_COLUMNS if c not in encoders]
        if missing:
            raise InvalidArgumentError(f"no fitted encoder for columns {missing}")

    frame = engineer_features(raw, source=source)
    fitted: dict[str, CategoryMap] = {}
    for column in CATEGORICAL_COLUMNS:
        values = frame[column].astype(str).tolist()
        if encoders is None:
            codes, fitted[column] = label_encode(values)
        else:
            fitted[column] = dict(encoders[column])
            codes = encode_with(values, fitted[column], name=column)
        frame[column] = codes

    features = frame[list(FEATURE_COLUMNS)].to_numpy(dtype=np.float64)
    labels = frame[RAW_LABEL_COLUMN].to_numpy(dtype=np.int64)
    return features, labels, fitted


def preprocess(
    raw: pd.DataFrame,
    per_class: int = DEFAULT_PER_CLASS,
    seed: int = 0,
    fractions: tuple[float, float, float] = DEFAULT_FRACTIONS,
    source: Path | None = None,
    encoders: dict[str, CategoryMap] | None = None,
) -> DatasetSplit:
    """Engineer, encode, balance to `per_class` rows per class, split and normalize."""
    features, labels, encoders = build_feature_matrix(raw, source=source, encoders=encoders)
    logger.info(
        "Engineered %d rows x %d features (%d fraud)",
        features.shape[0],
        features.shape[1],
        int(labels.sum()),
    )
    x, y = balance_subset(features, labels, per_class, seed)
    return stratified_split(
        x,
        y,
        fractions=fractions,
        seed=seed,
        feature_names=list(FEATURE_COLUMNS),
        encoders=encoders,
    )
