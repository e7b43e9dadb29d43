"""Tests for the reproducible random streams and variate generators."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from ics_mixture.exceptions import DegenerateLikelihoodError, ParameterDomainError
from ics_mixture.randcore import (
    RngStream,
    beta_draw,
    categorical_draw,
    categorical_from_log_weights,
    dirichlet_draw,
    gamma_draw,
    tilted_stable_draw,
)


class TestRngStream:

    def test_same_key_same_sequence(self):
        a = RngStream(5, (3, 1)).generator.random(8)
        b = RngStream(5, (3, 1)).generator.random(8)
        np.testing.assert_array_equal(a, b)

    def test_substream_ignores_parent_consumption(self):
        parent = RngStream(5)
        fresh = parent.substream(4).generator.random(4)
        parent.generator.random(100)
        np.testing.assert_array_equal(parent.substream(4).generator.random(4), fresh)

    def test_substreams_differ(self):
        root = RngStream(5)
        assert root.substream(1).stream_id != root.substream(2).stream_id
        assert not np.array_equal(root.substream(1).generator.random(4), root.substream(2).generator.random(4))

    def test_nested_path_equals_flat_key(self):
        assert RngStream(9).substream(2).substream(3).stream_id == RngStream(9, (2, 3)).stream_id

    def test_rejects_negative_seed(self):
        with pytest.raises(ParameterDomainError):
            RngStream(-1)


class TestDirichlet:

    def test_single_component(self, rng):
        np.testing.assert_array_equal(dirichlet_draw(rng, [1.0]), [1.0])

    def test_symmetric_mean(self, rng):
        draws = np.array([dirichlet_draw(rng, [1.0, 1.0]) for _ in range(20000)])
        np.testing.assert_allclose(draws.mean(axis=0), [0.5, 0.5], atol=0.01)

    def test_posterior_weight_mean(self, rng):
        draws = np.array([dirichlet_draw(rng, [2.0, 1.5, 1.5]) for _ in range(20000)])
        assert draws[:, 0].mean() == pytest.approx(0.4, abs=0.01)

    @pytest.mark.parametrize("alpha", [[], [1.0, 0.0], [1.0, -2.0]])
    def test_rejects_invalid(self, rng, alpha):
        with pytest.raises(ParameterDomainError):
            dirichlet_draw(rng, alpha)

    @settings(max_examples=200, deadline=None)
    @given(alpha=st.lists(st.floats(min_value=1e-3, max_value=50.0), min_size=1, max_size=30),
           seed=st.integers(min_value=0, max_value=2 ** 32))
    def test_draws_on_simplex(self, alpha, seed):
        p = dirichlet_draw(RngStream(seed), alpha)
        assert p.shape == (len(alpha),)
        assert np.all(p >= 0)
        assert p.sum() == pytest.approx(1.0, abs=1e-12)


class TestScalarDraws:

    def test_uniform_beta_mean(self, rng):
        assert beta_draw(rng, 1.0, 1.0, size=100000).mean() == pytest.approx(0.5, abs=0.01)

    def test_gamma_mean(self, rng):
        assert gamma_draw(rng, 2.0, 1.0, size=100000).mean() == pytest.approx(2.0, rel=0.02)

    def test_gamma_rate(self, rng):
        assert gamma_draw(rng, 2.0, 4.0, size=100000).mean() == pytest.approx(0.5, rel=0.02)

    def test_degenerate_categorical(self, rng):
        assert {categorical_draw(rng, [0.0, 0.0, 3.0]) for _ in range(500)} == {2}

    def test_categorical_frequencies(self, rng):
        draws = np.array([categorical_draw(rng, [1.0, 3.0]) for _ in range(20000)])
        assert draws.mean() == pytest.approx(0.75, abs=0.015)

    @pytest.mark.parametrize("weights", [[0.0, 0.0], [1.0, -1.0], []])
    def test_categorical_rejects(self, rng, weights):
        with pytest.raises(ParameterDomainError):
            categorical_draw(rng, weights)

    @settings(max_examples=100, deadline=None)
    @given(weights=st.lists(st.sampled_from([0.0, 0.5, 1.0, 7.0]), min_size=1, max_size=12)
           .filter(lambda w: sum(w) > 0),
           seed=st.integers(min_value=0, max_value=2 ** 32))
    def test_categorical_never_picks_zero_weight(self, weights, seed):
        assert weights[categorical_draw(RngStream(seed), weights)] > 0


class TestLogWeightCategorical:

    def test_thresholds_follow_normalized_weights(self):
        # p0 (m_l / m) K = 0.5 * 1 * 0.2 against p1 K = 0.5 * 0.3
        log_w = np.log([[0.5 * 0.2, 0.5 * 0.3]] * 2)
        np.testing.assert_array_equal(categorical_from_log_weights(np.array([0.39, 0.41]), log_w), [0, 1])

    def test_scale_invariance(self):
        log_w = np.log([[0.1, 0.2, 0.7]])
        u = np.array([0.25])
        assert categorical_from_log_weights(u, log_w) == categorical_from_log_weights(u, log_w - 800.0)

    def test_skips_zero_weight(self):
        log_w = np.array([[0.0, -np.inf, 0.0]])
        for u in np.linspace(0.0, 0.999, 25):
            assert categorical_from_log_weights(np.array([u]), log_w)[0] != 1

    def test_all_vanishing_row(self):
        with pytest.raises(DegenerateLikelihoodError):
            categorical_from_log_weights(np.array([0.5]), np.full((1, 3), -np.inf))


def _half_stable_density(t):
    return np.exp(-1.0 / (4.0 * t)) / (2.0 * np.sqrt(np.pi) * t ** 1.5)


class TestTiltedStable:

    def test_positive(self, rng):
        assert np.all(tilted_stable_draw(rng, 0.3, 2.0, size=1000) > 0)

    def test_scalar_draw(self, rng):
        assert isinstance(tilted_stable_draw(rng, 0.5, 1.0), float)

    def test_untilted_laplace_transform(self, rng):
        draws = tilted_stable_draw(rng, 0.5, 0.0, size=100000)
        assert np.exp(-draws).mean() == pytest.approx(np.exp(-1.0), abs=0.01)

    def test_tilted_laplace_transform_matches_quadrature(self, rng):
        num = integrate.quad(lambda t: np.exp(-t) * _half_stable_density(t) / t, 0, np.inf)[0]
        den = integrate.quad(lambda t: _half_stable_density(t) / t, 0, np.inf)[0]
        draws = tilted_stable_draw(rng, 0.5, 1.0, size=100000)
        assert np.exp(-draws).mean() == pytest.approx(num / den, rel=0.01)

    def test_negative_tilt(self, rng):
        draws = tilted_stable_draw(rng, 0.5, -0.25, size=2000)
        assert np.all(np.isfinite(draws)) and np.all(draws > 0)

    @pytest.mark.parametrize("sigma,theta", [(0.0, 1.0), (1.0, 1.0), (0.5, -0.5)])
    def test_rejects_domain(self, rng, sigma, theta):
        with pytest.raises(ParameterDomainError):
            tilted_stable_draw(rng, sigma, theta)
