import numpy as np
import pytest

from qfraud.exceptions import InvalidArgumentError, ShapeError
from qfraud.neural import AdamState, adam_step, clip_grad_norm


class TestAdamStep:
    def test_zero_gradient_without_decay_leaves_params(self):
        """A zero gradient without weight decay leaves parameters alone."""
        params = np.array([0.5, -1.0, 2.0])
        st = AdamState.for_params(params, weight_decay=0.0)
        new, st = adam_step(params, np.zeros(3), st)
        np.testing.assert_array_equal(new, params)
        assert st.t == 1

    def test_first_step_moves_by_learning_rate(self):
        """The first bias-corrected step moves by the learning rate."""
        params = np.zeros(1)
        new, st = adam_step(params, np.ones(1), AdamState.for_params(params))
        assert new[0] == pytest.approx(-0.001, rel=1e-6)
        assert st.m[0] == pytest.approx(0.1)
        assert st.v[0] == pytest.approx(0.001)

    def test_does_not_mutate_inputs(self):
        """adam_step returns new arrays and leaves its inputs untouched."""
        params = np.ones(2)
        st = AdamState.for_params(params)
        adam_step(params, np.ones(2), st)
        np.testing.assert_array_equal(params, np.ones(2))
        assert st.t == 0 and not st.m.any()

    def test_identical_params_evolve_identically(self):
        """Equal parameters with equal gradients stay equal."""
        params = np.array([0.3, 0.3])
        st = AdamState.for_params(params)
        rng = np.random.default_rng(0)
        for _ in range(100):
            g = rng.normal()
            params, st = adam_step(params, np.array([g, g]), st)
        assert params[0] == params[1]

    def test_deterministic(self):
        """The same inputs give the same step."""
        params, grads = np.array([1.0, -2.0]), np.array([0.1, 0.4])
        st = AdamState.for_params(params)
        a, _ = adam_step(params, grads, st)
        b, _ = adam_step(params, grads, st)
        np.testing.assert_array_equal(a, b)

    def test_weight_decay_pulls_towards_zero(self):
        """Weight decay shrinks parameters with no gradient."""
        params = np.array([5.0])
        new, _ = adam_step(params, np.zeros(1), AdamState.for_params(params, weight_decay=0.1))
        assert new[0] < 5.0

    def test_shape_mismatch(self):
        """Gradients must match the parameter shape."""
        with pytest.raises(ShapeError):
            adam_step(np.zeros(3), np.zeros(2), AdamState.for_params(np.zeros(3)))

    def test_negative_second_moment_rejected(self):
        """A negative second moment is rejected."""
        with pytest.raises(InvalidArgumentError):
            AdamState(m=np.zeros(1), v=np.array([-1.0]))


class TestClipGradNorm:
    def test_halves_when_twice_the_limit(self):
        """A gradient twice the limit is scaled by one half."""
        grads = np.array([6.0, 8.0])
        clipped = clip_grad_norm(grads, 5.0)
        np.testing.assert_allclose(clipped, [3.0, 4.0])
        assert np.linalg.norm(clipped) == pytest.approx(5.0)

    def test_below_limit_unchanged(self):
        """A gradient within the limit is returned unchanged."""
        grads = np.array([0.0, 3.0])
        np.testing.assert_array_equal(clip_grad_norm(grads, 5.0), grads)

    def test_norm_is_min_of_norm_and_limit(self):
        """The clipped norm is the smaller of the norm and the limit."""
        rng = np.random.default_rng(1)
        for _ in range(50):
            grads = rng.normal(scale=rng.uniform(0.1, 10), size=20)
            limit = rng.uniform(0.5, 20)
            clipped = clip_grad_norm(grads, limit)
            expected = min(np.linalg.norm(grads), limit)
            assert np.linalg.norm(clipped) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("limit", [0.0, -1.0])
    def test_non_positive_limit(self, limit):
        """A non-positive limit is rejected."""
        with pytest.raises(InvalidArgumentError):
            clip_grad_norm(np.ones(2), limit)
