"""Tests for Gaussian atoms, conjugate base measures and mixture realizations."""

import numpy as np
import pytest
from scipy import integrate, stats

from ics_mixture.exceptions import ParameterDomainError
from ics_mixture.kernels import (
    Atom,
    AtomArray,
    MixtureRealization,
    NIGBase,
    NIWBase,
    default_base,
    kernel_density,
    marginal_likelihood,
    posterior_draw,
    prior_draw,
)
from ics_mixture.randcore import RngStream


class TestAtoms:

    def test_standard_normal_at_zero(self):
        assert kernel_density(0.0, Atom.univariate(0.0, 1.0)) == pytest.approx(0.398942, abs=1e-6)

    def test_bivariate_standard_normal_at_origin(self):
        atom = Atom(np.zeros(2), np.eye(2))
        assert kernel_density([0.0, 0.0], atom) == pytest.approx(0.159155, abs=1e-6)

    def test_log_kernel_matches_scipy(self):
        cov = np.array([[2.0, 0.3], [0.3, 0.5]])
        atoms = AtomArray.from_atoms([Atom([1.0, -1.0], cov), Atom([0.0, 0.0], np.eye(2))])
        X = np.array([[0.5, 0.5], [2.0, -3.0]])
        expected = np.column_stack([
            stats.multivariate_normal.logpdf(X, mean=[1.0, -1.0], cov=cov),
            stats.multivariate_normal.logpdf(X, mean=[0.0, 0.0], cov=np.eye(2)),
        ])
        np.testing.assert_allclose(atoms.log_kernel(X), expected, rtol=1e-10)

    @pytest.mark.parametrize("mu,cov", [
        ([0.0], [[-1.0]]),
        ([0.0, 0.0], [[1.0, 2.0], [2.0, 1.0]]),
        ([0.0, 0.0], [[1.0]]),
    ])
    def test_rejects_invalid(self, mu, cov):
        with pytest.raises(ParameterDomainError):
            Atom(mu, cov)

    def test_empty_array_has_no_columns(self):
        assert AtomArray.empty(1).log_kernel(np.zeros((3, 1))).shape == (3, 0)

    def test_dimension_mismatch(self):
        with pytest.raises(ParameterDomainError):
            AtomArray.from_atoms([Atom(np.zeros(2), np.eye(2))]).log_kernel(np.zeros((2, 3)))


class TestNIG:

    def test_marginal_likelihood_at_zero(self, nig):
        assert marginal_likelihood(nig, 0.0) == pytest.approx(0.21650, abs=1e-5)

    def test_marginal_is_student_t(self, nig):
        x = np.array([-3.0, 0.5, 4.0])
        expected = stats.t.pdf(x, 4.0, loc=0.0, scale=np.sqrt(3.0))
        np.testing.assert_allclose(np.exp(nig.log_marginal_likelihood(x)), expected, rtol=1e-10)

    def test_posterior_params(self, nig):
        post = nig.posterior_params(np.array([-1.0, 0.0, 1.0, 2.0]))
        assert post.k0 == pytest.approx(4.2)
        assert post.m0 == pytest.approx(2.0 / 4.2)
        assert post.a0 == pytest.approx(4.0)
        assert post.b0 == pytest.approx(3.5 + 0.2 * 4 * 0.25 / 8.4)

    def test_posterior_draw_moments(self, nig):
        post = nig.posterior_params(np.array([-1.0, 0.0, 1.0, 2.0]))
        atoms = post.prior_draw(RngStream(3), 50000)
        assert atoms.cov[:, 0, 0].mean() == pytest.approx(post.b0 / (post.a0 - 1.0), rel=0.02)
        assert atoms.loc[:, 0].mean() == pytest.approx(post.m0, abs=0.01)

    def test_posterior_draw_without_data_matches_prior(self, nig):
        a = posterior_draw(RngStream(4), nig, np.empty(0))
        b = prior_draw(RngStream(4), nig)
        np.testing.assert_array_equal(a.mu, b.mu)
        np.testing.assert_array_equal(a.cov, b.cov)

    def test_refresh_fills_empty_clusters(self, nig):
        data = np.array([[0.1], [0.2], [3.0]])
        atoms = nig.refresh_atoms(RngStream(5), data, np.array([0, 0, 2]), 4)
        assert len(atoms) == 4
        assert np.all(atoms.cov[:, 0, 0] > 0)

    @pytest.mark.parametrize("field", ['k0', 'a0', 'b0'])
    def test_rejects_nonpositive(self, field):
        with pytest.raises(ParameterDomainError):
            NIGBase(**{field: 0.0})


class TestNIW:

    def test_marginal_likelihood_at_origin(self, niw):
        # Student-t with 4 df and shape 0.375 I
        assert marginal_likelihood(niw, [0.0, 0.0]) == pytest.approx(2.0 / (4.0 * np.pi * 0.375), rel=1e-8)

    def test_posterior_draw_moments(self, niw):
        X = np.array([[1.0, 0.0], [2.0, 1.0], [0.0, -1.0], [1.5, 0.5]])
        post = niw.posterior_params(X)
        atoms = post.prior_draw(RngStream(6), 20000)
        expected_cov = post.S0 / (post.nu0 - 2 - 1)
        np.testing.assert_allclose(atoms.cov.mean(axis=0), expected_cov, rtol=0.05, atol=0.01)
        np.testing.assert_allclose(atoms.loc.mean(axis=0), post.m0, atol=0.02)

    def test_rejects_small_dof(self):
        with pytest.raises(ParameterDomainError):
            NIWBase(m0=np.zeros(2), nu0=0.5)

    def test_default_bases(self):
        assert isinstance(default_base(1), NIGBase)
        base = default_base(2)
        assert isinstance(base, NIWBase) and base.nu0 == 5.0


class TestMixtureRealization:

    def test_density_integrates_to_one(self):
        atoms = AtomArray.from_atoms([Atom.univariate(-2.5, 1.0), Atom.univariate(2.5, 1.0)])
        realization = MixtureRealization(np.array([0.75, 0.25]), atoms)
        grid = np.linspace(-12.0, 12.0, 2001)
        assert integrate.trapezoid(realization.density(grid[:, None]), grid) == pytest.approx(1.0, abs=1e-6)

    def test_residual_mass(self, nig):
        atoms = AtomArray.from_atoms([Atom.univariate(0.0, 1.0)])
        realization = MixtureRealization(np.array([0.6]), atoms, 0.4, nig)
        assert realization.total_mass == pytest.approx(1.0)
        expected = 0.6 * stats.norm.pdf(0.0) + 0.4 * marginal_likelihood(nig, 0.0)
        assert realization.density(np.zeros((1, 1)))[0] == pytest.approx(expected)

    def test_residual_needs_base(self):
        with pytest.raises(ParameterDomainError):
            MixtureRealization(np.array([0.5]), AtomArray.from_atoms([Atom.univariate(0.0, 1.0)]), 0.5)

    def test_marginal_matches_integrated_density(self):
        cov = np.array([[1.0, 0.6], [0.6, 2.0]])
        realization = MixtureRealization(np.array([1.0]), AtomArray.from_atoms([Atom([0.5, -1.0], cov)]))
        values = np.array([-1.0, 0.5, 2.0])
        expected = stats.norm.pdf(values, loc=0.5, scale=1.0)
        np.testing.assert_allclose(realization.marginal_density(0, values), expected, rtol=1e-10)

    def test_conditional_probability_of_one_gaussian(self):
        cov = np.array([[1.0, 0.5], [0.5, 1.0]])
        realization = MixtureRealization(np.array([1.0]), AtomArray.from_atoms([Atom(np.zeros(2), cov)]))
        x = np.array([-1.0, 0.0, 2.0])
        expected = stats.norm.cdf((0.3 - 0.5 * x) / np.sqrt(0.75))
        np.testing.assert_allclose(realization.conditional_probability(0.3, 0, 1, x), expected, rtol=1e-8)

    def test_conditional_probability_in_unit_interval(self, niw):
        atoms = niw.prior_draw(RngStream(8), 5)
        realization = MixtureRealization(np.full(5, 0.18), atoms, 0.1, niw)
        p = realization.conditional_probability(0.0, 1, 0, np.linspace(-4.0, 4.0, 17))
        assert np.all((p >= 0.0) & (p <= 1.0))
