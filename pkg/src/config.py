"""
Configuration Manager for orbitquant
Handles loading and accessing configuration from YAML file
"""

import copy
import logging
import os
from typing import Any, Dict, Optional

import yaml

from .errors import ConfigError, UsageError
from .moyal import VARIANTS
from .symalg import ExactScalar


DEFAULT_CONFIG_PATH = "config.yaml"

DEFAULTS: Dict[str, Dict[str, Any]] = {
    'quantization': {
        'h': "1",
        'star_order': 6,
        'star_variant': "factorial",
        'max_r': 8,
    },
    'verification': {
        'profile': "standard",
        'seed': 20240917,
        'jobs': "auto",
        'property_cases': 500,
        'orbit_samples': 200,
        'expad_draws': 100,
        'affc_branches': [-1, 0, 1],
        'sl2_lambdas': ["1", "1/2", "1/8"],
    },
    'grid': {
        'line_points': 1024,
        'line_range': [-3.0, 3.0],
        'circle_points': 1024,
        'affc_points': [256, 64],
        'cfl': 0.25,
        'times': [0.25, 0.5, 1.0],
        'bump_width': 0.25,
        'max_ram_usage_percent': 25,
    },
    'output': {
        'directory': "./reports",
        'json_indent': 2,
    },
    'advanced': {
        'log_level': "INFO",
        'log_dir': "logs",
        'max_jobs': 8,
    },
}

REQUIRED_SECTIONS = ['quantization', 'verification', 'grid', 'output', 'advanced']

# Verification profiles; profile takes precedence over individual values
PROFILES = {
    'quick': {
        'verification': {'property_cases': 50, 'orbit_samples': 40, 'expad_draws': 20,
                         'affc_branches': [0], 'sl2_lambdas': ["1"]},
        'grid': {'line_points': 512, 'circle_points': 256, 'times': [0.25]},
    },
    'standard': {
        'verification': {'property_cases': 500, 'orbit_samples': 200, 'expad_draws': 100,
                         'affc_branches': [-1, 0, 1], 'sl2_lambdas': ["1", "1/2", "1/8"]},
        'grid': {'line_points': 1024, 'circle_points': 1024, 'times': [0.25, 0.5, 1.0]},
    },
    'thorough': {
        'verification': {'property_cases': 2000, 'orbit_samples': 1000, 'expad_draws': 500,
                         'affc_branches': [-2, -1, 0, 1, 2], 'sl2_lambdas': ["1", "1/2", "1/8", "3/8", "5/2"]},
        'grid': {'line_points': 2048, 'circle_points': 2048, 'times': [0.25, 0.5, 1.0]},
    },
}


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class ConfigManager:
    """Manages toolkit configuration from YAML file"""

    def __init__(self, config_path: Optional[str] = DEFAULT_CONFIG_PATH, logger=None,
                 overrides: Optional[Dict[str, Dict[str, Any]]] = None):
        """
        Initialize configuration manager

        Args:
            config_path: Path to YAML configuration file (None for built-in defaults)
            logger: Optional logger instance
            overrides: Section values taking precedence over the file (CLI flags)
        """
        self.config_path = config_path
        self.config: Dict[str, Any] = {}
        self.logger = logger
        self.overrides = overrides or {}
        self.load_config()

    def load_config(self) -> None:
        """Load configuration from YAML file"""
        try:
            loaded: Dict[str, Any] = {}
            if self.config_path:
                if os.path.exists(self.config_path):
                    with open(self.config_path, 'r') as f:
                        loaded = yaml.safe_load(f) or {}
                elif self.config_path != DEFAULT_CONFIG_PATH:
                    raise ConfigError(f"Configuration file not found: {self.config_path}")
            if not isinstance(loaded, dict):
                raise ConfigError(f"Configuration root must be a mapping: {self.config_path}")

            # Validate required sections
            if loaded:
                for section in REQUIRED_SECTIONS:
                    if section not in loaded:
                        raise ConfigError(f"Missing required configuration section: {section}")

            self.config = _deep_merge(DEFAULTS, loaded)
            profile = self.overrides.get('verification', {}).get('profile')
            if profile:
                self.config['verification']['profile'] = profile
            self._apply_profile()
            self.config = _deep_merge(self.config, {k: v for k, v in self.overrides.items() if v})
            self._validate()

            self._create_directories()

            logging.info(f"Configuration loaded from {self.config_path if loaded else 'built-in defaults'}")

        except yaml.YAMLError as e:
            logging.error(f"Error parsing configuration: {e}")
            raise ConfigError(f"Invalid YAML in {self.config_path}: {e}") from e
        except Exception as e:
            logging.error(f"Error loading configuration: {e}")
            raise

    def _apply_profile(self) -> None:
        """Apply verification profile presets"""
        profile = self.get('verification', 'profile', 'standard')
        if profile is None:
            self._log_info("Using custom verification settings (profile: null)")
            return
        if profile not in PROFILES:
            raise ConfigError(f"Unknown verification profile {profile!r} "
                              f"(expected one of: {', '.join(PROFILES)}, or null)")
        self.config = _deep_merge(self.config, PROFILES[profile])
        self._log_info(f"Applied verification profile: {profile}")

    def _validate(self) -> None:
        try:
            self.get_planck()
        except UsageError as e:
            raise ConfigError(f"quantization.h: {e}") from e
        if self.get_star_variant() not in VARIANTS:
            raise ConfigError(f"quantization.star_variant must be one of: {', '.join(VARIANTS)}")
        if int(self.get('quantization', 'star_order')) < 1:
            raise ConfigError("quantization.star_order must be at least 1")
        points = self.get_grid_points()
        if points < 2 or points & (points - 1):
            raise ConfigError(f"grid.line_points must be a power of two, got {points}")
        jobs = self.get('verification', 'jobs')
        if jobs != "auto" and (not isinstance(jobs, int) or jobs < 1):
            raise ConfigError(f"verification.jobs must be 'auto' or a positive integer, got {jobs!r}")

    def _create_directories(self) -> None:
        """Create report output directory if configured and missing"""
        directory = self.get('output', 'directory')
        if directory and self.get('output', 'create_directory', False) and not os.path.exists(directory):
            os.makedirs(directory, exist_ok=True)
            logging.info(f"Created directory: {directory}")

    def _log_info(self, message: str) -> None:
        if self.logger:
            self.logger.info(message, "ConfigManager")
        else:
            logging.info(f"ConfigManager: {message}")

    def get(self, section: str, key: str, default: Any = None) -> Any:
        """
        Get configuration value

        Args:
            section: Configuration section name
            key: Configuration key name
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        try:
            return self.config.get(section, {}).get(key, default)
        except Exception:
            return default

    def get_section(self, section: str) -> Dict[str, Any]:
        """
        Get entire configuration section

        Args:
            section: Configuration section name

        Returns:
            Dictionary containing section configuration
        """
        return self.config.get(section, {})

    def get_planck(self) -> ExactScalar:
        """Planck parameter as an exact nonzero scalar"""
        h = ExactScalar.coerce(str(self.get('quantization', 'h', "1")))
        if h.is_zero():
            raise UsageError("h must be nonzero")
        return h

    def get_star_order(self) -> int:
        return int(self.get('quantization', 'star_order', 6))

    def get_star_variant(self) -> str:
        return self.get('quantization', 'star_variant', "factorial")

    def get_seed(self) -> int:
        return int(self.get('verification', 'seed', 0))

    def get_jobs(self) -> int:
        """
        Worker count for verification suites

        Returns:
            Configured count, or the resource manager's choice for 'auto'
        """
        jobs = self.get('verification', 'jobs', "auto")
        if jobs == "auto":
            from .resource_manager import get_optimal_jobs
            return get_optimal_jobs(self.get('advanced', 'max_jobs', 8), logger=self.logger)
        return int(jobs)

    def get_grid_points(self) -> int:
        return int(self.get('grid', 'line_points', 1024))

    def __repr__(self) -> str:
        """String representation of configuration"""
        return f"ConfigManager(config_path='{self.config_path}')"
