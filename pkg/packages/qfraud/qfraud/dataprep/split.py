"""Class balancing and stratified train/validation/test splitting."""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from qfraud.dataprep.encoding import CategoryMap
from qfraud.dataprep.normalize import NormStats, zscore_apply, zscore_fit
from qfraud.exceptions import InvalidArgumentError, ShapeError

logger = logging.getLogger(__name__)

DEFAULT_FRACTIONS = (0.70, 0.15, 0.15)
MIN_ROWS_PER_CLASS = 3


@dataclass
class DatasetSplit:
    x_train: np.ndarray
    y_train: np.ndarray
    x_val: np.ndarray
    y_val: np.ndarray
    x_test: np.ndarray
    y_test: np.ndarray
    norm_stats: NormStats
    seed: int
    feature_names: list[str] = field(default_factory=list)
    encoders: dict[str, CategoryMap] = field(default_factory=dict)
    # Row indices into the array handed to stratified_split.
    indices: dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def n_features(self) -> int:
        return self.x_train.shape[1]

    def part(self, name: str) -> tuple[np.ndarray, np.ndarray]:
        match name:
            case "train":
                return self.x_train, self.y_train
            case "val":
                return self.x_val, self.y_val
            case "test":
                return self.x_test, self.y_test
        raise InvalidArgumentError(f"Unknown split part {name!r}")


def _check_rows(features: np.ndarray, labels: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if features.ndim != 2 or labels.shape != (features.shape[0],):
        raise ShapeError("labels", (features.shape[0],), labels.shape)
    if not np.all((labels == 0) | (labels == 1)):
        raise InvalidArgumentError("labels must be 0 or 1")
    return features, labels


def balance_subset(
    features: np.ndarray, labels: np.ndarray, per_class: int, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    """
    Return exactly `per_class` rows of each class, shuffled.

    A class with surplus rows is sampled without replacement. A class with a
    deficit keeps all of its rows and draws the missing ones with replacement.
    """
    features, labels = _check_rows(features, labels)
    if per_class < 1:
        raise InvalidArgumentError(f"per_class must be positive, got {per_class}")

    rng = np.random.default_rng(seed)
    chosen = []
    for cls in (0, 1):
        members = np.flatnonzero(labels == cls)
        if members.size == 0:
            raise InvalidArgumentError(f"class {cls} is absent; cannot balance")
        if members.size >= per_class:
            picked = rng.choice(members, size=per_class, replace=False)
        else:
            extra = rng.choice(members, size=per_class - members.size, replace=True)
            picked = np.concatenate([members, extra])
            logger.info(
                "Oversampled class %d from %d to %d rows", cls, members.size, per_class
            )
        chosen.append(picked)

    order = rng.permutation(np.concatenate(chosen))
    return features[order], labels[order]


def _allocate(total: int, counts: dict[int, int], remaining: dict[int, int]) -> dict[int, int]:
    """Split `total` across classes proportionally to `counts` by largest remainder."""
    n = sum(counts.values())
    quotas = {c: total * counts[c] / n for c in counts}
    alloc = {c: math.floor(q) for c, q in quotas.items()}
    leftover = total - sum(alloc.values())
    # larger fractional part first, then more rows left, then lower label
    order = sorted(counts, key=lambda c: (-(quotas[c] - alloc[c]), -remaining[c], c))
    for c in order[:leftover]:
        alloc[c] += 1
    return alloc


def stratified_split(
    features: np.ndarray,
    labels: np.ndarray,
    fractions: tuple[float, float, float] = DEFAULT_FRACTIONS,
    seed: int = 0,
    feature_names: list[str] | None = None,
    encoders: dict[str, CategoryMap] | None = None,
) -> DatasetSplit:
    """
    Shuffle each class, slice it into train/validation/test and z-score all
    three parts with statistics fitted on train.

    Validation and test each get floor(N * fraction) rows, the remainder goes
    to train, and every part follows the global class ratio within one row.
    """
    features, labels = _check_rows(features, labels)
    if len(fractions) != 3 or any(f <= 0 for f in fractions) or abs(sum(fractions) - 1) > 1e-9:
        raise InvalidArgumentError(
            f"fractions must be three positive numbers summing to 1, got {fractions}"
        )

    counts = {c: int(np.sum(labels == c)) for c in (0, 1)}
    for c, count in counts.items():
        if count < MIN_ROWS_PER_CLASS:
            raise InvalidArgumentError(
                f"class {c} has {count} rows; "
                f"stratified splitting needs at least {MIN_ROWS_PER_CLASS}"
            )

    n = labels.size
    # tolerance keeps e.g. 10000 * 0.15 from flooring to 1499
    n_val = math.floor(n * fractions[1] + 1e-9)
    n_test = math.floor(n * fractions[2] + 1e-9)

    remaining = dict(counts)
    val_alloc = _allocate(n_val, counts, remaining)
    remaining = {c: remaining[c] - val_alloc[c] for c in counts}
    test_alloc = _allocate(n_test, counts, remaining)

    rng = np.random.default_rng(seed)
    parts: dict[str, list[np.ndarray]] = {"train": [], "val": [], "test": []}
    for c in (0, 1):
        members = rng.permutation(np.flatnonzero(labels == c))
        v, t = val_alloc[c], test_alloc[c]
        parts["val"].append(members[:v])
        parts["test"].append(members[v : v + t])
        parts["train"].append(members[v + t :])

    indices = {name: rng.permutation(np.concatenate(chunks)) for name, chunks in parts.items()}
    stats = zscore_fit(features[indices["train"]])

    def take(name: str) -> tuple[np.ndarray, np.ndarray]:
        idx = indices[name]
        return zscore_apply(features[idx], stats), labels[idx]

    x_train, y_train = take("train")
    x_val, y_val = take("val")
    x_test, y_test = take("test")
    logger.info(
        "Split %d rows into train=%d val=%d test=%d", n, y_train.size, y_val.size, y_test.size
    )
    return DatasetSplit(
        x_train=x_train,
        y_train=y_train,
        x_val=x_val,
        y_val=y_val,
        x_test=x_test,
        y_test=y_test,
        norm_stats=stats,
        seed=seed,
        feature_names=list(feature_names or []),
        encoders=dict(encoders or {}),
        indices=indices,
    )
