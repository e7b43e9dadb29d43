"""Tests for the ICS, marginal and slice-efficient samplers."""

import numpy as np
import pytest

from ics_mixture.core.data_reader import synthetic_dataset
from ics_mixture.exceptions import ConfigurationError, ParameterDomainError, SamplerError
from ics_mixture.kernels import AtomArray, NIGBase
from ics_mixture.models.params import PYParams
from ics_mixture.models.state import AllocationState, MeasureSummary, SliceState
from ics_mixture.randcore import RngStream
from ics_mixture.samplers import (
    ICSSampler,
    MarginalSampler,
    SliceEfficientSampler,
    create_sampler,
    get_all_samplers,
    ics_step,
)
from ics_mixture.samplers.marginal import marginal_log_weights
from ics_mixture.samplers.slice_efficient import stick_update


def run_steps(sampler, steps, seed=1):
    root = RngStream(seed)
    state = sampler.initialize(root.substream(0))
    results = []
    for r in range(1, steps + 1):
        result = sampler.step(root.substream(r), state)
        state = result.state
        results.append(result)
    return results


class TestRegistry:

    def test_names(self):
        assert set(get_all_samplers()) == {'ics', 'marginal', 'slice-dep', 'slice-indep', 'gmddp-ics'}

    def test_unknown_name(self):
        with pytest.raises(ConfigurationError):
            create_sampler('gibbs')

    def test_slice_variant_fixed_by_name(self, two_gaussian, nig):
        sampler = create_sampler('slice-indep', data=two_gaussian, base=nig, params=PYParams(), m=3)
        assert isinstance(sampler, SliceEfficientSampler)
        assert sampler.variant == 'independent'

    def test_metadata_timestamp_is_utc(self, two_gaussian, nig):
        created_at = ICSSampler(two_gaussian, nig, PYParams()).get_metadata()['created_at']
        assert created_at.endswith('+00:00')


class TestICS:

    def test_single_observation_forms_one_cluster(self, nig):
        sampler = ICSSampler(np.array([[0.3]]), nig, PYParams(0.5, 1.0), m=5)
        assert all(result.state.k == 1 for result in run_steps(sampler, 20))

    def test_summary_weights(self, two_gaussian, nig):
        state = AllocationState(np.zeros(len(two_gaussian), dtype=np.int64), nig.prior_draw(RngStream(2), 1))
        new_state, summary = ics_step(RngStream(3), state, two_gaussian, PYParams(0.25, 1.0), nig, 10)
        assert summary.m == 10
        assert summary.weights.sum() == pytest.approx(1.0)
        assert summary.component_weights().sum() == pytest.approx(1.0)
        assert summary.realization().total_mass == pytest.approx(1.0)
        assert new_state.validate()

    def test_component_weight_arithmetic(self):
        atoms = AtomArray.from_atoms([NIGBase().prior_draw(RngStream(1), 1)[0]])
        summary = MeasureSummary(atoms, atoms, np.array([10]), np.array([0.5, 0.5]))
        weights = summary.component_weights() * np.array([0.2, 0.3])
        np.testing.assert_allclose(weights / weights.sum(), [0.4, 0.6])

    def test_state_invariants(self, two_gaussian, nig):
        sampler = ICSSampler(two_gaussian, nig, PYParams(0.3, 1.0), m=4)
        for result in run_steps(sampler, 25):
            assert result.state.validate()
            assert result.state.n == len(two_gaussian)

    def test_reproducible(self, two_gaussian, nig):
        a = run_steps(ICSSampler(two_gaussian, nig, PYParams(0.3, 1.0), m=4), 10, seed=5)[-1].state
        b = run_steps(ICSSampler(two_gaussian, nig, PYParams(0.3, 1.0), m=4), 10, seed=5)[-1].state
        np.testing.assert_array_equal(a.labels, b.labels)
        np.testing.assert_array_equal(a.atoms.loc, b.atoms.loc)

    def test_identical_across_thread_counts(self, nig):
        x = synthetic_dataset('two-gaussian', 700, seed=3).X
        x = (x - x.mean()) / x.std()
        with ICSSampler(x, nig, PYParams(0.2, 1.0), m=10, threads=1) as serial:
            a = run_steps(serial, 5, seed=8)[-1].state
        with ICSSampler(x, nig, PYParams(0.2, 1.0), m=10, threads=8) as pooled:
            b = run_steps(pooled, 5, seed=8)[-1].state
        np.testing.assert_array_equal(a.labels, b.labels)
        np.testing.assert_array_equal(a.atoms.loc, b.atoms.loc)
        np.testing.assert_array_equal(a.atoms.cov, b.atoms.cov)

    def test_rejects_empty_auxiliary_sample(self, two_gaussian, nig):
        with pytest.raises(ParameterDomainError):
            ICSSampler(two_gaussian, nig, PYParams(), m=0)


class TestMarginal:

    def test_allocation_weight_arithmetic(self):
        log_w = marginal_log_weights(np.array([2.0, 1.0]), np.log([0.3, 0.2]), np.log(0.1), PYParams(0.5, 1.0))
        p = np.exp(log_w - log_w.max())
        np.testing.assert_allclose(p / p.sum(), [0.45 / 0.75, 0.10 / 0.75, 0.20 / 0.75])

    def test_dirichlet_reduces_to_crp(self):
        log_w = marginal_log_weights(np.array([4.0, 2.0]), np.log([0.5, 0.25]), np.log(0.2), PYParams(0.0, 1.5))
        np.testing.assert_allclose(np.exp(log_w), [4.0 * 0.5, 2.0 * 0.25, 1.5 * 0.2])

    def test_single_observation_refreshes_atom(self, nig):
        sampler = MarginalSampler(np.array([[0.3]]), nig, PYParams(0.5, 1.0))
        results = run_steps(sampler, 10)
        assert all(result.state.k == 1 for result in results)
        assert len({float(result.state.atoms.loc[0, 0]) for result in results}) == 10

    def test_state_invariants_and_urn_density(self, two_gaussian, nig):
        sampler = MarginalSampler(two_gaussian, nig, PYParams(0.4, 2.0))
        for result in run_steps(sampler, 15):
            assert result.state.validate()
            assert result.realization.total_mass == pytest.approx(1.0)


class TestSliceEfficient:

    def test_stick_update_all_mass_in_first_cluster(self):
        root = RngStream(4)
        labels = np.zeros(5, dtype=np.int64)
        v = np.array([stick_update(root.substream(r), labels, 1, PYParams(0.0, 1.0))[0] for r in range(20000)])
        assert v.mean() == pytest.approx(6.0 / 7.0, abs=0.005)

    @pytest.mark.parametrize("variant", ['dependent', 'independent'])
    def test_state_invariants(self, two_gaussian, nig, variant):
        sampler = SliceEfficientSampler(two_gaussian, nig, PYParams(0.25, 1.0), variant=variant)
        for result in run_steps(sampler, 20):
            state = result.state
            assert state.validate()
            assert np.all(state.u < state.bounds[state.labels])
            assert result.jumps_drawn >= state.k_active
            assert not result.cap_hit
            assert result.realization.total_mass == pytest.approx(1.0)

    def test_independent_bounds_are_expected_weights(self, two_gaussian, nig):
        sampler = SliceEfficientSampler(two_gaussian, nig, PYParams(0.0, 1.0), variant='independent')
        state = run_steps(sampler, 3)[-1].state
        np.testing.assert_allclose(state.xi, 0.5 ** np.arange(1, state.k_active + 1))

    @pytest.mark.parametrize("variant", ['dependent', 'independent'])
    def test_cap_hit_is_reported(self, two_gaussian, nig, variant):
        sampler = SliceEfficientSampler(two_gaussian, nig, PYParams(0.9, 1.0), variant=variant, jump_cap=3)
        results = run_steps(sampler, 5)
        assert any(result.cap_hit for result in results)
        assert all(result.jumps_drawn <= 3 for result in results)
        assert sampler.get_metadata()['cap_hits'] >= 1

    def test_cap_below_active_sticks(self, two_gaussian, nig):
        sampler = SliceEfficientSampler(two_gaussian, nig, PYParams(0.25, 1.0))
        state = sampler.initialize(RngStream(1))
        grown = SliceState(state.labels, np.array([0.3, 0.3]), nig.prior_draw(RngStream(2), 2),
                           state.u, 'dependent')
        sampler.jump_cap = 1
        with pytest.raises(SamplerError):
            sampler.step(RngStream(3), grown)

    def test_unknown_variant(self, two_gaussian, nig):
        with pytest.raises(SamplerError):
            SliceEfficientSampler(two_gaussian, nig, PYParams(), variant='sideways')
