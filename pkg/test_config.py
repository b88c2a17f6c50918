#!/usr/bin/env python3
"""
Tests for ConfigManager and AppLogger
"""

import copy
from fractions import Fraction

import pytest
import yaml

from src.config import DEFAULTS, ConfigManager
from src.errors import ConfigError
from src.logger import AppLogger
from src.symalg import ExactScalar


def write_config(tmp_path, data):
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump(data))
    return str(path)


@pytest.mark.fast
def test_builtin_defaults():
    config = ConfigManager(None)
    assert config.get_planck() == ExactScalar(1)
    assert config.get_star_order() == 6
    assert config.get_star_variant() == "factorial"
    assert config.get_grid_points() == 1024
    assert config.get('grid', 'missing', 'fallback') == 'fallback'
    assert config.get_section('output')['json_indent'] == 2


@pytest.mark.fast
def test_missing_explicit_file(tmp_path):
    with pytest.raises(ConfigError):
        ConfigManager(str(tmp_path / "absent.yaml"))


@pytest.mark.fast
def test_file_values(tmp_path):
    data = copy.deepcopy(DEFAULTS)
    data['quantization']['h'] = "1/3"
    data['verification']['jobs'] = 3
    config = ConfigManager(write_config(tmp_path, data))
    assert config.get_planck() == ExactScalar(Fraction(1, 3))
    assert config.get_jobs() == 3


@pytest.mark.fast
def test_missing_section(tmp_path):
    with pytest.raises(ConfigError):
        ConfigManager(write_config(tmp_path, {'quantization': {'h': "1"}}))


@pytest.mark.fast
def test_invalid_values(tmp_path):
    data = copy.deepcopy(DEFAULTS)
    data['verification']['profile'] = None
    data['grid']['line_points'] = 1000
    with pytest.raises(ConfigError):
        ConfigManager(write_config(tmp_path, data))

    with pytest.raises(ConfigError):
        ConfigManager(None, overrides={'quantization': {'h': "0"}})
    with pytest.raises(ConfigError):
        ConfigManager(None, overrides={'quantization': {'star_variant': "binomial"}})
    with pytest.raises(ConfigError):
        ConfigManager(None, overrides={'verification': {'profile': "exhaustive"}})


@pytest.mark.fast
def test_bad_yaml(tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("quantization: [unclosed\n")
    with pytest.raises(ConfigError):
        ConfigManager(str(path))


@pytest.mark.fast
def test_overrides_and_profiles():
    config = ConfigManager(None, overrides={'quantization': {'h': "1/2"}, 'grid': {}})
    assert config.get_planck() == ExactScalar(Fraction(1, 2))
    quick = ConfigManager(None, overrides={'verification': {'profile': "quick"}})
    assert quick.get_grid_points() == 512
    assert quick.get('verification', 'sl2_lambdas') == ["1"]
    assert ConfigManager(None).get_jobs() >= 1


@pytest.mark.fast
def test_logger_files(tmp_path):
    logger = AppLogger(str(tmp_path), "DEBUG", console=False)
    logger.info("loaded", "Test")
    logger.warning("slow grid", "Test")
    logger.log_case_event("affR:star(X,Y)", "fail", "residual 1")
    logger.log_error_event("UsageError", "bad flag")
    logger.flush()

    stats = logger.get_log_stats()
    assert all(stats[name] is not None for name in ('app.log', 'errors.log', 'warnings.log', 'events.log'))
    assert "[Test] loaded" in (tmp_path / "app.log").read_text()
    assert "slow grid" in (tmp_path / "warnings.log").read_text()
    assert "affR:star(X,Y)" in (tmp_path / "warnings.log").read_text()
    assert "UsageError: bad flag" in (tmp_path / "errors.log").read_text()
    assert "[CASE]" in (tmp_path / "events.log").read_text()
