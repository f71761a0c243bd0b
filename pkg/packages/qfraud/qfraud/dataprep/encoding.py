"""Categorical label encoding on top of sklearn's LabelEncoder."""

from collections.abc import Iterable, Mapping, Sequence

import numpy as np
from sklearn.preprocessing import LabelEncoder

from qfraud.exceptions import EncodingError, InvalidArgumentError

CategoryMap = dict[str, int]


def label_encode(column: Sequence[str]) -> tuple[np.ndarray, CategoryMap]:
    """
    Assign codes 0..K-1 to the distinct values of `column` in lexicographic order.

    Returns the per-row codes and the category -> code mapping.
    """
    values = np.array([str(v) for v in column], dtype=str)
    if values.size == 0:
        raise InvalidArgumentError("cannot label-encode an empty column")
    encoder = LabelEncoder()
    codes = encoder.fit_transform(values)
    mapping = {str(category): code for code, category in enumerate(encoder.classes_)}
    return codes.astype(np.int64), mapping


def fitted_encoder(mapping: Mapping[str, int]) -> LabelEncoder:
    """Rebuild a LabelEncoder from a persisted category -> code mapping."""
    encoder = LabelEncoder()
    encoder.classes_ = np.array(sorted(mapping, key=mapping.__getitem__), dtype=str)
    return encoder


def encode_with(column: Iterable[str], mapping: Mapping[str, int], name: str = "") -> np.ndarray:
    """Apply a fitted mapping. Raises EncodingError naming the first unseen value."""
    values = np.array([str(v) for v in column], dtype=str)
    try:
        return fitted_encoder(mapping).transform(values).astype(np.int64)
    except ValueError as e:
        unseen = next((str(v) for v in values if v not in mapping), None)
        if unseen is None:
            raise
        raise EncodingError(name, unseen) from e
