"""Tests for configuration files, coercion and precedence."""

import pytest

from ics_mixture.core.config_loader import load_run_config, merge_config, read_config_file
from ics_mixture.exceptions import ConfigurationError
from ics_mixture.models.config import RunConfig


@pytest.fixture
def config_file(tmp_path):
    def write(text):
        path = tmp_path / 'run.cfg'
        path.write_text(text)
        return str(path)
    return write


class TestReadConfigFile:

    def test_typed_values(self, config_file):
        values = read_config_file(config_file(
            "# chain\n"
            "algorithm = slice-dep\n"
            "sigma = 0.25  # discount\n"
            "iterations = 2e3\n"
            "jump-cap = 500\n"
            "standardize = no\n"
            "sigmas = 0, 0.25 0.5\n"
            "threshold = none\n"
        ))
        assert values == {
            'algorithm': 'slice-dep',
            'sigma': 0.25,
            'iterations': 2000,
            'jump_cap': 500,
            'standardize': False,
            'sigmas': [0.0, 0.25, 0.5],
            'threshold': None,
        }

    def test_unknown_key(self, config_file):
        with pytest.raises(ConfigurationError, match="line 1"):
            read_config_file(config_file("temperature = 3\n"))

    def test_line_without_assignment(self, config_file):
        with pytest.raises(ConfigurationError):
            read_config_file(config_file("sigma 0.5\n"))

    @pytest.mark.parametrize("line", ["iterations = 2.5", "standardize = maybe", "sigma = high"])
    def test_bad_value(self, config_file, line):
        with pytest.raises(ConfigurationError):
            read_config_file(config_file(line + "\n"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            read_config_file(str(tmp_path / 'absent.cfg'))


class TestMergeConfig:

    def test_defaults(self):
        assert merge_config() == RunConfig()

    def test_command_line_beats_file(self):
        config = merge_config({'sigma': 0.5, 'seed': None}, {'sigma': 0.1, 'seed': 7, 'theta': 3.0})
        assert config.sigma == 0.5
        assert config.seed == 7
        assert config.theta == 3.0

    def test_dashed_keys(self):
        assert merge_config({'band-level': 0.5}).band_level == 0.5

    def test_unknown_key(self):
        with pytest.raises(ConfigurationError):
            merge_config({'sigmaa': 0.1})

    def test_constraints_checked(self):
        with pytest.raises(ConfigurationError):
            merge_config({'iterations': 10, 'burnin': 20})
        with pytest.raises(ConfigurationError):
            merge_config({'algorithms': ['ics', 'gibbs']})

    def test_thresholds_sorted(self):
        assert merge_config({'thresholds': [10 ** 6, 10]}).thresholds == [10, 10 ** 6]

    def test_load_with_file(self, config_file):
        config = load_run_config({'command': 'benchmark'}, config_file("replicates = 3\nms = 5 10\n"))
        assert config.command == 'benchmark'
        assert config.replicates == 3
        assert config.ms == [5, 10]
