"""Tests for the GM-DDP weights, the grouped ICS sampler and its prior predictive."""

import numpy as np
import pytest
from scipy import stats

from ics_mixture.core.data_reader import synthetic_dataset, two_gaussian_sample
from ics_mixture.exceptions import ParameterDomainError, SamplerError
from ics_mixture.kernels import Atom, AtomArray
from ics_mixture.models.params import GMDDPParams
from ics_mixture.models.state import MeasureSummary
from ics_mixture.randcore import RngStream, categorical_from_log_weights
from ics_mixture.samplers import GMDDPSampler
from ics_mixture.samplers.gmddp import (
    WeightUpdater,
    gmddp_prior_predictive_counts,
    gmddp_prior_weights,
    group_realization,
    log_prior_density,
    w_logdensity_fullcond,
)
from ics_mixture.samplers.gmddp.weights import fullcond_target


def _summary(loc, aux_loc, weights):
    fixed = AtomArray.from_atoms([Atom.univariate(mu, 1.0) for mu in loc]) if loc else AtomArray.empty(1)
    aux = AtomArray.from_atoms([Atom.univariate(mu, 1.0) for mu in aux_loc])
    return MeasureSummary(fixed, aux, np.ones(len(aux_loc), dtype=np.int64), np.asarray(weights))


class TestPriorWeights:

    def test_mean_is_z(self):
        root = RngStream(21)
        params = GMDDPParams(theta=1.0, z=0.5, L=2)
        draws = np.array([gmddp_prior_weights(root.substream(r), params) for r in range(20000)])
        assert draws.shape == (20000, 2)
        np.testing.assert_allclose(draws.mean(axis=0), [0.5, 0.5], atol=0.01)

    def test_marginal_is_beta(self):
        root = RngStream(22)
        params = GMDDPParams(theta=2.0, z=0.3, L=1)
        draws = np.array([gmddp_prior_weights(root.substream(r), params)[0] for r in range(5000)])
        assert stats.kstest(draws, stats.beta(0.6, 1.4).cdf).pvalue > 1e-3

    def test_strictly_inside_unit_interval(self):
        root = RngStream(23)
        params = GMDDPParams(theta=0.2, z=0.5, L=3)
        draws = np.array([gmddp_prior_weights(root.substream(r), params) for r in range(2000)])
        assert np.all((draws > 0) & (draws < 1))

    def test_nearly_all_idiosyncratic(self):
        root = RngStream(24)
        params = GMDDPParams(theta=1.0, z=1.0 - 1e-9, L=2)
        draws = np.array([gmddp_prior_weights(root.substream(r), params) for r in range(500)])
        assert draws.mean() > 0.99
        assert np.all(draws < 1)

    def test_single_group_density_is_beta(self):
        params = GMDDPParams(theta=2.0, z=0.3, L=1)
        a, b = np.array([0.2]), np.array([0.7])
        expected = stats.beta.logpdf(0.2, 0.6, 1.4) - stats.beta.logpdf(0.7, 0.6, 1.4)
        assert log_prior_density(a, params) - log_prior_density(b, params) == pytest.approx(expected)


class TestFullConditional:

    @pytest.fixture
    def stepped(self, grouped_data, nig):
        X, groups = grouped_data
        params = GMDDPParams(theta=1.0, z=0.5, L=2)
        sampler = GMDDPSampler(X, nig, params, groups=groups, m=5)
        root = RngStream(31)
        state = sampler.step(root.substream(1), sampler.initialize(root.substream(0))).state
        return state, params, X

    def test_finite_inside_cube(self, stepped):
        state, params, X = stepped
        assert np.isfinite(w_logdensity_fullcond([0.5, 0.5], state, params, X))

    @pytest.mark.parametrize("v", [[0.0, 0.5], [0.5, 1.0], [0.5]])
    def test_rejects_outside_cube(self, stepped, v):
        state, params, X = stepped
        with pytest.raises(ParameterDomainError):
            w_logdensity_fullcond(v, state, params, X)

    def test_no_data_reduces_to_prior(self):
        params = GMDDPParams(theta=1.5, z=0.4, L=2)
        target = fullcond_target(params, np.empty(0, dtype=np.int64), np.empty(0), np.empty(0))
        a, b = np.array([0.3, 0.6]), np.array([0.8, 0.1])
        assert target(a) - target(b) == pytest.approx(log_prior_density(a, params) - log_prior_density(b, params))

    def test_metropolis_recovers_prior_mean(self):
        params = GMDDPParams(theta=1.0, z=0.5, L=2)
        target = fullcond_target(params, np.empty(0, dtype=np.int64), np.empty(0), np.empty(0))
        updater = WeightUpdater(2, adapt_steps=2000)
        root = RngStream(33)
        w = np.array([0.5, 0.5])
        trace = []
        for r in range(42000):
            w = updater.update(root.substream(r), w, target)
            if r >= 2000:
                trace.append(w)
        trace = np.array(trace)
        np.testing.assert_allclose(trace.mean(axis=0), [0.5, 0.5], atol=0.03)
        assert all(0.2 < rate < 0.7 for rate in updater.acceptance_rates())

    def test_updater_needs_coordinates(self):
        with pytest.raises(ParameterDomainError):
            WeightUpdater(0)


class TestGroupRealization:

    def test_four_candidate_kinds(self):
        own = _summary([2.0], [-2.0], [0.4, 0.6])
        common = _summary([], [0.0], [1.0])
        w = np.array([0.25])
        realization = group_realization([common, own], w, 0)
        np.testing.assert_allclose(realization.weights, [0.1, 0.15, 0.75])
        assert realization.total_mass == pytest.approx(1.0)

    def test_equal_branches_split_allocations(self):
        own = _summary([], [0.0], [1.0])
        common = _summary([], [0.0], [1.0])
        realization = group_realization([common, own], np.array([0.5]), 0)
        np.testing.assert_allclose(realization.weights, [0.5, 0.5])
        log_w = np.log(np.tile(realization.weights, (2, 1)))
        np.testing.assert_array_equal(categorical_from_log_weights(np.array([0.49, 0.51]), log_w), [0, 1])


class TestGMDDPSampler:

    def test_state_invariants(self, grouped_data, nig):
        X, groups = grouped_data
        sampler = GMDDPSampler(X, nig, GMDDPParams(theta=1.0, z=0.5, L=2), groups=groups, m=5, adapt_steps=10)
        root = RngStream(41)
        state = sampler.initialize(root.substream(0))
        assert state.validate()
        for r in range(1, 51):
            result = sampler.step(root.substream(r), state)
            state = result.state
            assert state.validate()
            assert set(result.realization) == {0, 1}
            for realization in result.realization.values():
                assert realization.total_mass == pytest.approx(1.0)
            assert 0.0 <= state.common_share() <= 1.0
        assert state.allocation.validate()
        assert sampler.get_metadata()['group_sizes'] == np.bincount(groups).tolist()

    def test_group_with_single_observation(self, nig):
        X = np.array([[0.1], [-0.3], [0.4], [2.0]])
        groups = np.array([0, 0, 0, 1])
        sampler = GMDDPSampler(X, nig, GMDDPParams(theta=1.0, z=0.5, L=2), groups=groups, m=3)
        root = RngStream(42)
        state = sampler.initialize(root.substream(0))
        for r in range(1, 21):
            state = sampler.step(root.substream(r), state).state
            assert state.validate()
            assert state.process[3] in (0, 2)

    def test_needs_groups(self, two_gaussian, nig):
        with pytest.raises(SamplerError):
            GMDDPSampler(two_gaussian, nig, GMDDPParams(L=2))

    def test_rejects_out_of_range_groups(self, two_gaussian, nig):
        groups = np.full(len(two_gaussian), 2)
        with pytest.raises(SamplerError):
            GMDDPSampler(two_gaussian, nig, GMDDPParams(L=2), groups=groups)

    @pytest.mark.slow
    def test_long_run_invariants(self, nig):
        dataset = synthetic_dataset('two-gaussian', 200, seed=43, n_groups=2)
        X = (dataset.X - dataset.X.mean(axis=0)) / dataset.X.std(axis=0, ddof=1)
        sampler = GMDDPSampler(X, nig, GMDDPParams(theta=1.0, z=0.5, L=2), groups=dataset.groups, m=5,
                               adapt_steps=200)
        root = RngStream(44)
        state = sampler.initialize(root.substream(0))
        for r in range(1, 1001):
            state = sampler.step(root.substream(r), state).state
            assert state.validate()
            allocation = state.allocation
            assert allocation.validate()
            recomputed = np.concatenate([state.process_counts(p) for p in range(state.L + 1)])
            np.testing.assert_array_equal(allocation.counts, recomputed)
            for group in range(state.L):
                members = state.groups == group
                own = np.count_nonzero(state.process[members] == group + 1)
                shared = np.count_nonzero(state.process[members] == 0)
                assert own + shared == np.count_nonzero(members)

    @pytest.mark.slow
    def test_identical_groups_share_the_common_process(self, nig):
        shares = []
        for seed in range(20):
            x = two_gaussian_sample(RngStream(seed), 50)
            X = np.concatenate([x, x])
            X = ((X - X.mean()) / X.std(ddof=1))[:, None]
            groups = np.repeat([0, 1], 50)
            sampler = GMDDPSampler(X, nig, GMDDPParams(theta=1.0, z=0.5, L=2), groups=groups, m=5,
                                   adapt_steps=50)
            root = RngStream(1000 + seed)
            state = sampler.initialize(root.substream(0))
            for r in range(1, 201):
                state = sampler.step(root.substream(r), state).state
                if r > 50:
                    shares.append(state.common_share())
        assert np.mean(shares) > 0.1


class TestPriorPredictive:

    def test_each_group_is_marginally_dirichlet(self):
        # Distinct values among 10 draws from DP(1): harmonic number H_10
        root = RngStream(51)
        params = GMDDPParams(theta=1.0, z=0.5, L=2)
        counts = np.array([gmddp_prior_predictive_counts(root.substream(r), params, [10, 10])
                           for r in range(4000)])
        h10 = np.sum(1.0 / np.arange(1, 11))
        se = counts.std(axis=0, ddof=1) / np.sqrt(counts.shape[0])
        assert np.all(np.abs(counts.mean(axis=0) - h10) < 4 * se)

    def test_empty_group(self):
        counts = gmddp_prior_predictive_counts(RngStream(52), GMDDPParams(L=2), [5, 0])
        assert counts[1] == 0
        assert 1 <= counts[0] <= 5

    def test_rejects_wrong_sizes(self):
        with pytest.raises(ParameterDomainError):
            gmddp_prior_predictive_counts(RngStream(53), GMDDPParams(L=2), [5])
