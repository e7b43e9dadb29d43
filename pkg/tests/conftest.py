"""Shared fixtures for the ics_mixture test suite."""

import numpy as np
import pytest

from ics_mixture.core.data_reader import synthetic_dataset
from ics_mixture.kernels import NIGBase, NIWBase
from ics_mixture.randcore import RngStream


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the long Monte-Carlo acceptance checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return RngStream(20261017)


@pytest.fixture
def nig():
    return NIGBase(m0=0.0, k0=0.2, a0=2.0, b0=1.0)


@pytest.fixture
def niw():
    return NIWBase(m0=np.zeros(2), k0=2.0, nu0=5.0, S0=np.eye(2))


@pytest.fixture
def two_gaussian():
    """Standardized two-Gaussian sample, n=60."""
    dataset = synthetic_dataset('two-gaussian', 60, seed=7)
    x = dataset.X
    return (x - x.mean(axis=0)) / x.std(axis=0, ddof=1)


@pytest.fixture
def grouped_data():
    """Standardized two-group two-Gaussian sample, n=60."""
    dataset = synthetic_dataset('two-gaussian', 60, seed=11, n_groups=2)
    x = dataset.X
    return (x - x.mean(axis=0)) / x.std(axis=0, ddof=1), dataset.groups
