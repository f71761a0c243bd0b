import numpy as np
import pytest

from qfraud.dataprep import balance_subset, stratified_split
from qfraud.exceptions import InvalidArgumentError


def labelled(n_neg: int, n_pos: int, n_features: int = 3):
    rng = np.random.default_rng(n_neg + n_pos)
    labels = np.array([0] * n_neg + [1] * n_pos)
    features = rng.normal(size=(labels.size, n_features))
    # first column doubles as a row id
    features[:, 0] = np.arange(labels.size)
    return features, labels


class TestBalanceSubset:
    def test_downsamples_and_oversamples(self):
        """The majority is sampled down and the minority topped up with replacement."""
        x, y = labelled(9000, 1000)
        bx, by = balance_subset(x, y, 5000, seed=0)
        assert np.sum(by == 0) == 5000
        assert np.sum(by == 1) == 5000

        neg_ids = bx[by == 0, 0]
        assert np.unique(neg_ids).size == 5000
        pos_ids = bx[by == 1, 0]
        # every minority row survives; the deficit is drawn with replacement
        assert set(np.flatnonzero(y == 1)) <= set(pos_ids.astype(int))

    def test_exact_size_is_a_permutation(self):
        """When both classes already have the target size the rows are only shuffled."""
        x, y = labelled(50, 50)
        bx, by = balance_subset(x, y, 50, seed=3)
        assert sorted(bx[:, 0].tolist()) == list(range(100))
        assert by.sum() == 50

    def test_deterministic(self):
        """The same seed gives the same result."""
        x, y = labelled(300, 40)
        a = balance_subset(x, y, 100, seed=7)
        b = balance_subset(x, y, 100, seed=7)
        np.testing.assert_array_equal(a[0], b[0])
        np.testing.assert_array_equal(a[1], b[1])

    def test_missing_class(self):
        """A class with no rows is rejected."""
        x, y = labelled(10, 0)
        with pytest.raises(InvalidArgumentError):
            balance_subset(x, y, 5, seed=0)


class TestStratifiedSplit:
    def test_ten_thousand_row_split(self):
        """10,000 balanced rows split 7000/1500/1500 with balance kept."""
        x, y = labelled(5000, 5000)
        split = stratified_split(x, y, seed=0)
        assert (split.y_train.size, split.y_val.size, split.y_test.size) == (7000, 1500, 1500)
        for part in (split.y_train, split.y_val, split.y_test):
            assert part.sum() * 2 == part.size

    def test_small_split_remainder_goes_to_train(self):
        """Rounding leftovers go to the training part."""
        x, y = labelled(5, 5)
        split = stratified_split(x, y, seed=0)
        assert (split.y_train.size, split.y_val.size, split.y_test.size) == (8, 1, 1)
        assert abs(int(split.y_train.sum()) - 4) <= 1

    def test_class_ratio_preserved_within_one_row(self):
        """Each part keeps the class ratio to within one row."""
        x, y = labelled(700, 300)
        split = stratified_split(x, y, seed=1)
        for part in (split.y_train, split.y_val, split.y_test):
            assert abs(part.sum() - 0.3 * part.size) <= 1

    def test_indices_disjoint_and_cover(self):
        """The parts are disjoint and together cover every row."""
        x, y = labelled(40, 37)
        split = stratified_split(x, y, seed=2)
        parts = [set(split.indices[name].tolist()) for name in ("train", "val", "test")]
        assert not (parts[0] & parts[1] or parts[0] & parts[2] or parts[1] & parts[2])
        assert set().union(*parts) == set(range(77))

    def test_normalisation_fitted_on_train_only(self):
        """Normalization statistics come from the training rows only."""
        x, y = labelled(60, 60)
        split = stratified_split(x, y, seed=3)
        raw_train = x[split.indices["train"]]
        np.testing.assert_allclose(split.norm_stats.mean, raw_train.mean(axis=0))
        np.testing.assert_allclose(split.x_train.mean(axis=0), 0, atol=1e-10)
        np.testing.assert_allclose(
            split.x_val, (x[split.indices["val"]] - raw_train.mean(axis=0)) / raw_train.std(axis=0)
        )

    def test_deterministic_membership(self):
        """The same seed puts the same rows in each part."""
        x, y = labelled(100, 100)
        a = stratified_split(x, y, seed=9)
        b = stratified_split(x, y, seed=9)
        for name in ("train", "val", "test"):
            np.testing.assert_array_equal(a.indices[name], b.indices[name])

    def test_too_few_rows_in_a_class(self):
        """A class too small to reach every part is rejected."""
        x, y = labelled(10, 2)
        with pytest.raises(InvalidArgumentError):
            stratified_split(x, y)

    def test_fractions_must_sum_to_one(self):
        """Fractions that do not sum to one are rejected."""
        x, y = labelled(10, 10)
        with pytest.raises(InvalidArgumentError):
            stratified_split(x, y, fractions=(0.5, 0.2, 0.2))
