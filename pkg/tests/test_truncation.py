"""Tests for the stick-count (M_n) study and its asymptotic proxies."""

import math

import numpy as np
import pytest

from ics_mixture.exceptions import ParameterDomainError
from ics_mixture.models.params import PYParams
from ics_mixture.randcore import RngStream
from ics_mixture.truncation import (
    effective_cap,
    exceedance_table,
    expected_Ln,
    sample_Ln,
    sample_Mn,
    sample_Mn_batch,
    sample_Mn_poisson_mixture,
    summarize_reports,
    truncation_study,
)

# 1 + H_100
DIRICHLET_MEAN_MN_100 = 6.18738


class TestMn:

    def test_at_least_one_stick(self, rng):
        for _ in range(200):
            count, capped = sample_Mn(rng, 10, PYParams(0.5, 1.0))
            assert count >= 1 and not capped

    def test_dirichlet_mean(self, rng):
        counts, capped = sample_Mn_batch(rng, 100, PYParams(0.0, 1.0), reps=20000, cap=10 ** 6)
        assert not capped.any()
        assert counts.mean() == pytest.approx(DIRICHLET_MEAN_MN_100, rel=0.02)

    def test_poisson_mixture_mean(self, rng):
        draws = sample_Mn_poisson_mixture(rng, 100, 1.0, size=20000)
        assert draws.min() >= 1
        assert draws.mean() == pytest.approx(DIRICHLET_MEAN_MN_100, rel=0.02)

    def test_cap_reported(self, rng):
        counts, capped = sample_Mn_batch(rng, 10 ** 6, PYParams(0.9, 1.0), reps=50, cap=5)
        assert capped.any()
        assert counts.max() <= 5
        assert np.all(counts[capped] == 5)

    def test_batches_independent_of_workers(self):
        import concurrent.futures
        params = PYParams(0.3, 2.0)
        serial = sample_Mn_batch(RngStream(81), 50, params, reps=9000, cap=10 ** 5)
        with concurrent.futures.ThreadPoolExecutor(max_workers=3) as pool:
            pooled = sample_Mn_batch(RngStream(81), 50, params, reps=9000, cap=10 ** 5, executor=pool)
        np.testing.assert_array_equal(serial[0], pooled[0])

    def test_rejects_invalid(self, rng):
        with pytest.raises(ParameterDomainError):
            sample_Mn(rng, 0, PYParams())
        with pytest.raises(ParameterDomainError):
            sample_Mn_batch(rng, 10, PYParams(), reps=0)


class TestLn:

    def test_undefined_for_dirichlet(self, rng):
        with pytest.raises(ParameterDomainError):
            sample_Ln(rng, 100, PYParams(0.0, 1.0))

    def test_scalar_and_log(self, rng):
        assert isinstance(sample_Ln(rng, 100, PYParams(0.5, 1.0)), float)
        logs = sample_Ln(RngStream(82), 100, PYParams(0.5, 1.0), size=10, log=True)
        values = sample_Ln(RngStream(82), 100, PYParams(0.5, 1.0), size=10)
        np.testing.assert_allclose(np.exp(logs), values)

    def test_mean_matches_closed_form(self):
        params = PYParams(0.25, 1.0)
        draws = sample_Ln(RngStream(83), 100, params, size=40000)
        assert draws.mean() == pytest.approx(expected_Ln(100, params), rel=0.05)

    def test_infinite_mean_from_one_half(self):
        assert math.isinf(expected_Ln(100, PYParams(0.5, 1.0)))
        assert math.isinf(expected_Ln(100, PYParams(0.8, 1.0)))

    def test_grows_with_n(self):
        params = PYParams(0.3, 1.0)
        assert expected_Ln(1000, params) > expected_Ln(100, params)


class TestExceedance:

    def test_effective_cap(self):
        assert effective_cap([10 ** 3, 10 ** 6], 10 ** 4) == 1001
        assert effective_cap([10 ** 6], 100) == 100

    def test_direct_table(self, rng):
        report = exceedance_table(rng, 50, PYParams(0.3, 1.0), [0, 5, 50], reps=500, cap=10 ** 5)
        assert report.exceedance[0] == 1.0
        assert report.source == ['direct'] * 3
        assert np.all(np.diff(report.exceedance) <= 0)
        assert all(0.0 <= p <= 1.0 for p in report.exceedance)
        assert report.quantiles['q25'] <= report.quantiles['median'] <= report.quantiles['q75']

    def test_proxy_beyond_cap(self, rng):
        report = exceedance_table(rng, 100, PYParams(0.8, 1.0), [10 ** 3, 10 ** 6], reps=200, cap=10 ** 4)
        assert report.cap == 1001
        assert report.source == ['direct', 'proxy_ln']
        assert math.isnan(report.mn_exceedance[1])
        assert report.exceedance[1] <= report.exceedance[0]
        assert report.log_ln_draws.shape == (200,)

    def test_poisson_proxy_for_dirichlet(self, rng):
        report = exceedance_table(rng, 100, PYParams(0.0, 1.0), [10, 10 ** 9], reps=300, cap=100)
        assert report.source == ['direct', 'poisson_mixture']
        assert report.exceedance[1] == 0.0
        assert report.log_ln_draws is None
        assert math.isnan(report.ln_exceedance[0])

    def test_unsorted_thresholds(self, rng):
        with pytest.raises(ParameterDomainError):
            exceedance_table(rng, 10, PYParams(), [100, 10], reps=10)

    def test_frames(self, rng):
        report = exceedance_table(rng, 20, PYParams(0.5, 1.0), [2, 20], reps=30, cap=1000)
        assert len(report.draws_frame()) == 30
        assert list(report.exceedance_frame()['threshold']) == [2, 20]

    @pytest.mark.slow
    def test_proxy_tracks_direct_count(self):
        report = exceedance_table(RngStream(84), 100, PYParams(0.4, 1.0), [10 ** 4], reps=10 ** 4,
                                  cap=10 ** 5)
        assert report.source == ['direct']
        assert abs(report.mn_exceedance[0] - report.ln_exceedance[0]) < 0.05

    @pytest.mark.slow
    @pytest.mark.parametrize("theta,expected", [(0.1, 0.35), (1.0, 0.42), (10.0, 0.63)])
    def test_billion_sticks_exceedance(self, theta, expected):
        log_ln = sample_Ln(RngStream(85), 100, PYParams(0.8, theta), size=10 ** 4, log=True)
        assert np.mean(log_ln > np.log(1e9)) == pytest.approx(expected, abs=0.1)

    @pytest.mark.slow
    def test_median_increases_with_sigma(self):
        medians = [np.median(sample_Mn_batch(RngStream(86), 100, PYParams(sigma, 1.0), reps=10 ** 4,
                                             cap=10 ** 7)[0])
                   for sigma in (0.0, 0.2, 0.4)]
        assert medians[0] <= medians[1] <= medians[2]


class TestStudy:

    def test_cells_in_grid_order(self):
        reports = truncation_study(5, ns=[20], sigmas=[0.0, 0.5], thetas=[1.0], thresholds=[3, 30],
                                   reps=40, cap=1000)
        assert [(r.sigma, r.n) for r in reports] == [(0.0, 20), (0.5, 20)]
        summaries = summarize_reports(reports)
        assert summaries[1]['reps'] == 40

    def test_reproducible(self):
        kwargs = dict(ns=[30], sigmas=[0.25], thetas=[2.0], thresholds=[5], reps=50, cap=1000)
        a = truncation_study(6, **kwargs)[0]
        b = truncation_study(6, **kwargs)[0]
        np.testing.assert_array_equal(a.mn_draws, b.mn_draws)
        np.testing.assert_array_equal(a.log_ln_draws, b.log_ln_draws)
