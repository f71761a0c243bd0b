"""Z-score normalisation on top of sklearn's StandardScaler.

The fitted statistics live in NormStats so they can be written to the split
metadata and rebuilt into a scaler later.
"""

from dataclasses import dataclass

import numpy as np
from sklearn.preprocessing import StandardScaler

from qfraud.exceptions import InvalidArgumentError, ShapeError

DEGENERATE_STD = 1e-12


@dataclass
class NormStats:
    """Per-feature mean and population standard deviation."""

    mean: np.ndarray
    std: np.ndarray

    def __post_init__(self) -> None:
        self.mean = np.asarray(self.mean, dtype=np.float64)
        self.std = np.asarray(self.std, dtype=np.float64)
        if self.mean.shape != self.std.shape or self.mean.ndim != 1:
            raise ShapeError("NormStats.std", self.mean.shape, self.std.shape)
        if np.any(self.std <= 0):
            raise InvalidArgumentError("NormStats.std entries must be positive")

    def to_dict(self) -> dict[str, list[float]]:
        return {"mean": self.mean.tolist(), "std": self.std.tolist()}

    @classmethod
    def from_dict(cls, data: dict[str, list[float]]) -> "NormStats":
        return cls(np.array(data["mean"]), np.array(data["std"]))

    def scaler(self) -> StandardScaler:
        """A fitted StandardScaler carrying these statistics."""
        scaler = StandardScaler()
        scaler.mean_ = self.mean.copy()
        scaler.scale_ = self.std.copy()
        scaler.var_ = self.std**2
        scaler.n_features_in_ = self.mean.shape[0]
        scaler.n_samples_seen_ = 0
        return scaler


def zscore_fit(features: np.ndarray) -> NormStats:
    """Fit mean/std over rows; columns with std < 1e-12 get std = 1."""
    features = np.asarray(features, dtype=np.float64)
    if features.ndim != 2:
        raise ShapeError("features", ("N", "F"), features.shape)
    if features.shape[0] < 2:
        raise InvalidArgumentError(f"z-score fit needs at least 2 rows, got {features.shape[0]}")

    scaler = StandardScaler().fit(features)
    # scale_ has its own near-zero rule; the stored std follows ours
    std = np.sqrt(scaler.var_)
    std[std < DEGENERATE_STD] = 1.0
    return NormStats(scaler.mean_, std)


def zscore_apply(features: np.ndarray, stats: NormStats) -> np.ndarray:
    features = np.asarray(features, dtype=np.float64)
    if features.ndim != 2 or features.shape[1] != stats.mean.shape[0]:
        raise ShapeError("features", ("N", stats.mean.shape[0]), features.shape)
    if features.shape[0] == 0:
        return features.copy()
    return stats.scaler().transform(features)
