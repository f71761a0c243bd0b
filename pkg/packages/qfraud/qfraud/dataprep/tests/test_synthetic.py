import numpy as np
import pytest

from qfraud.dataprep import (
    RAW_COLUMNS,
    build_feature_matrix,
    generate_synthetic,
    haversine_km,
    write_transactions,
)
from qfraud.exceptions import EncodingError, InvalidArgumentError


def best_stump_accuracy(values: np.ndarray, labels: np.ndarray) -> float:
    """Best single-threshold accuracy predicting fraud above the cut."""
    order = np.argsort(values)
    sorted_labels = labels[order]
    # predict 1 for indices >= k
    ones_above = np.concatenate([[labels.sum()], labels.sum() - np.cumsum(sorted_labels)])
    zeros_below = np.concatenate([[0], np.cumsum(1 - sorted_labels)])
    return float(((ones_above + zeros_below) / labels.size).max())


@pytest.fixture(scope="module")
def generated():
    return generate_synthetic(10_000, seed=7)


class TestGenerateSynthetic:
    def test_row_count_and_balance(self, generated):
        """The generator writes the requested rows with about half fraud."""
        assert len(generated) == 10_000
        assert abs(generated["is_fraud"].sum() - 5000) <= 200

    def test_schema_columns_present(self, generated):
        """Every raw column is present."""
        for column in RAW_COLUMNS:
            assert column in generated.columns

    def test_same_seed_gives_identical_csv(self, tmp_path):
        """The same seed writes an identical CSV."""
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_transactions(generate_synthetic(500, seed=3), a)
        write_transactions(generate_synthetic(500, seed=3), b)
        assert a.read_bytes() == b.read_bytes()

    def test_different_seed_differs(self):
        """Different seeds give different data."""
        a = generate_synthetic(200, seed=1)
        b = generate_synthetic(200, seed=2)
        assert not a.equals(b)

    def test_amount_and_distance_stump_beats_75_percent(self, generated):
        """Amount or distance alone separates the classes at least 75% of the time."""
        labels = generated["is_fraud"].to_numpy()
        distance = haversine_km(
            generated["lat"], generated["long"], generated["merch_lat"], generated["merch_long"]
        )
        amount = generated["amt"].to_numpy()
        best = max(best_stump_accuracy(amount, labels), best_stump_accuracy(distance, labels))
        assert best >= 0.75

    def test_feature_matrix_is_finite(self, generated):
        """The engineered matrix has 22 finite columns."""
        features, labels, encoders = build_feature_matrix(generated)
        assert features.shape == (10_000, 22)
        assert np.isfinite(features).all()
        assert set(encoders) >= {"merchant", "city", "category"}

    def test_too_few_rows(self):
        """Fewer than 100 rows are rejected."""
        with pytest.raises(InvalidArgumentError):
            generate_synthetic(99, seed=0)


class TestBuildFeatureMatrix:
    """Tests for reusing fitted category encoders."""

    def test_reused_encoders_reproduce_codes(self, generated):
        """Encoding with the encoders fitted on the same rows gives the same matrix."""
        features, labels, encoders = build_feature_matrix(generated)
        again, again_labels, reused = build_feature_matrix(generated, encoders=encoders)
        np.testing.assert_array_equal(again, features)
        np.testing.assert_array_equal(again_labels, labels)
        assert reused == encoders

    def test_subset_keeps_codes_of_full_fit(self, generated):
        """A subset encoded with reused encoders keeps the full set's codes."""
        features, _, encoders = build_feature_matrix(generated)
        subset, _, _ = build_feature_matrix(generated.iloc[::7].reset_index(drop=True), encoders=encoders)
        np.testing.assert_array_equal(subset, features[::7])

    def test_unseen_category_raises(self, generated):
        """A category missing from the reused encoders raises EncodingError."""
        _, _, encoders = build_feature_matrix(generated)
        changed = generated.head(20).copy()
        changed.loc[3, "category"] = "unicorns"
        with pytest.raises(EncodingError, match="unicorns"):
            build_feature_matrix(changed, encoders=encoders)

    def test_missing_encoder_column_rejected(self, generated):
        """Encoders lacking a categorical column are rejected up front."""
        _, _, encoders = build_feature_matrix(generated)
        del encoders["category"]
        with pytest.raises(InvalidArgumentError, match="category"):
            build_feature_matrix(generated, encoders=encoders)
