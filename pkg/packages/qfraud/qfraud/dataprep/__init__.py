from qfraud.dataprep.encoding import CategoryMap, encode_with, fitted_encoder, label_encode
from qfraud.dataprep.features import (
    EARTH_RADIUS_KM,
    TimeFeatures,
    compute_age_years,
    engineer_features,
    extract_time_features,
    haversine_km,
)
from qfraud.dataprep.storage import (
    SplitMetadata,
    load_metadata,
    load_split,
    read_transactions,
    save_split,
    write_transactions,
)
from qfraud.dataprep.normalize import NormStats, zscore_apply, zscore_fit
from qfraud.dataprep.pipeline import DEFAULT_PER_CLASS, build_feature_matrix, preprocess
from qfraud.dataprep.schema import (
    CATEGORICAL_COLUMNS,
    FEATURE_COLUMNS,
    LABEL_COLUMN,
    RAW_COLUMNS,
    RawTransaction,
)
from qfraud.dataprep.split import (
    DEFAULT_FRACTIONS,
    DatasetSplit,
    balance_subset,
    stratified_split,
)
from qfraud.dataprep.synthetic import generate_synthetic

__all__ = [
    "CATEGORICAL_COLUMNS",
    "DEFAULT_FRACTIONS",
    "DEFAULT_PER_CLASS",
    "EARTH_RADIUS_KM",
    "FEATURE_COLUMNS",
    "LABEL_COLUMN",
    "RAW_COLUMNS",
    "CategoryMap",
    "DatasetSplit",
    "NormStats",
    "RawTransaction",
    "SplitMetadata",
    "TimeFeatures",
    "balance_subset",
    "build_feature_matrix",
    "compute_age_years",
    "encode_with",
    "engineer_features",
    "extract_time_features",
    "fitted_encoder",
    "generate_synthetic",
    "haversine_km",
    "label_encode",
    "load_metadata",
    "load_split",
    "preprocess",
    "read_transactions",
    "save_split",
    "stratified_split",
    "write_transactions",
    "zscore_apply",
    "zscore_fit",
]
