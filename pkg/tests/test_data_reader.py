"""Tests for CSV ingestion and the synthetic data sets."""

import numpy as np
import pytest
from scipy import stats

from ics_mixture.core.data_reader import ingest_csv, synthetic_dataset, two_gaussian_sample
from ics_mixture.exceptions import DataFormatError, ParameterDomainError
from ics_mixture.randcore import RngStream


@pytest.fixture
def write_csv(tmp_path):
    def write(text, name='data.csv'):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


class TestIngestCSV:

    def test_single_column(self, write_csv):
        dataset = ingest_csv(write_csv("1.0\n2.0\n"))
        np.testing.assert_array_equal(dataset.X, [[1.0], [2.0]])
        assert dataset.groups is None

    def test_three_columns_carry_groups(self, write_csv):
        dataset = ingest_csv(write_csv("1,0.5,30\n2,0.7,35\n"))
        assert dataset.dim == 2
        assert dataset.group_names == [1, 2]
        np.testing.assert_array_equal(dataset.groups, [0, 1])

    def test_header_names_group_column(self, write_csv):
        dataset = ingest_csv(write_csv("group,value\n3,0.5\n7,0.1\n3,0.2\n"))
        assert dataset.dim == 1
        assert dataset.group_names == [3, 7]
        np.testing.assert_array_equal(dataset.groups, [0, 1, 0])
        assert dataset.columns == ['value']

    def test_two_value_columns(self, write_csv):
        dataset = ingest_csv(write_csv("x1,x2\n0.5,30\n0.7,35\n"))
        assert dataset.dim == 2 and dataset.groups is None

    def test_required_groups(self, write_csv):
        dataset = ingest_csv(write_csv("1,0.5\n2,0.7\n"), require_groups=True)
        assert dataset.n_groups == 2
        with pytest.raises(DataFormatError):
            ingest_csv(write_csv("0.5\n0.7\n", 'single.csv'), require_groups=True)

    def test_bad_value_reports_line(self, write_csv):
        with pytest.raises(DataFormatError, match="Row 2"):
            ingest_csv(write_csv("1.0\nabc\n"))

    def test_non_integer_group(self, write_csv):
        with pytest.raises(DataFormatError, match="Row 1, column 1"):
            ingest_csv(write_csv("1.5,0.5,30\n"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataFormatError):
            ingest_csv(str(tmp_path / 'absent.csv'))

    def test_empty_file(self, write_csv):
        with pytest.raises(DataFormatError):
            ingest_csv(write_csv(""))

    def test_header_only(self, write_csv):
        with pytest.raises(DataFormatError):
            ingest_csv(write_csv("x\n"))

    def test_too_many_columns(self, write_csv):
        with pytest.raises(DataFormatError):
            ingest_csv(write_csv("1,2,3,4\n5,6,7,8\n"))


class TestSynthetic:

    def test_mixture_moments(self):
        x = two_gaussian_sample(RngStream(91), 40000)
        # 0.75 (-2.5) + 0.25 (2.5) = -1.25
        assert x.mean() == pytest.approx(-1.25, abs=0.05)
        assert np.mean(x > 0) == pytest.approx(0.25 * stats.norm.sf(-2.5) + 0.75 * stats.norm.sf(2.5), abs=0.01)

    def test_reproducible(self):
        a = synthetic_dataset('two-gaussian', 50, seed=4)
        b = synthetic_dataset('two-gaussian', 50, seed=4)
        np.testing.assert_array_equal(a.X, b.X)

    def test_contiguous_groups(self):
        dataset = synthetic_dataset('two-gaussian', 10, seed=4, n_groups=2)
        np.testing.assert_array_equal(dataset.groups, [0] * 5 + [1] * 5)
        assert dataset.group_names == [1, 2]

    def test_unknown_generator(self):
        with pytest.raises(DataFormatError):
            synthetic_dataset('three-gaussian', 10, seed=1)

    def test_rejects_empty_sample(self):
        with pytest.raises(ParameterDomainError):
            two_gaussian_sample(RngStream(1), 0)
