"""
Configuration Module for flagshare.

Loads run defaults (noise, trial counts, seeds, workers, output directory)
and logging settings from a JSON file. Command-line flags override
environment variables, which override the file, which overrides
DEFAULT_CONFIG.

Dependencies:
    - python-dotenv: Loads FLAGSHARE_* variables from a .env file

Note:
    If the configuration file doesn't exist, it will be created with default
    values. A file that fails to parse is ignored with an error in the log.
"""

import copy
import json
import logging
import os
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from .errors import ConfigError

# Initialize logger
logger = logging.getLogger(__name__)

ENV_CONFIG = "FLAGSHARE_CONFIG"
ENV_WORKERS = "FLAGSHARE_WORKERS"


class Config:
    """
    Configuration management for flagshare commands.

    Attributes:
        DEFAULT_CONFIG (Dict[str, Any]): Default configuration values
        config_path (str): Path to the configuration file
        config (Dict[str, Any]): Current configuration dictionary
    """

    DEFAULT_CONFIG: Dict[str, Any] = {
        "logging": {
            "level": "INFO",
            "log_dir": "logs",
            "max_log_files": 5,
            "max_log_size_mb": 10
        },
        "simulation": {
            "p": 1e-3,
            "gamma": 1.0,
            "seed": 0,
            "trials": 10000,
            "max_trials": 10000000,
            "budget": 100000000,
            "workers": 1,
            "out_dir": "out",
            "max_iters": 20000,
            "p_min": 1e-5,
            "p_max": 5e-2,
            "points": 7
        }
    }

    def __init__(self, config_path: Optional[str] = None) -> None:
        """
        Initialize configuration from file or use defaults.

        Args:
            config_path (Optional[str]): Path to the configuration file.
                Defaults to $FLAGSHARE_CONFIG, then "config.json".
        """
        load_dotenv()
        self.config_path = config_path or os.environ.get(ENV_CONFIG, "config.json")
        logger.debug(f"Initializing configuration from: {self.config_path}")
        self.config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """
        Load configuration from file or create default if not exists.

        Returns:
            Dict[str, Any]: Defaults with the file's sections merged in
        """
        config = copy.deepcopy(self.DEFAULT_CONFIG)
        try:
            if os.path.exists(self.config_path):
                with open(self.config_path, 'r', encoding='utf-8') as f:
                    loaded = json.load(f)
                if not isinstance(loaded, dict):
                    raise ConfigError("top level of the configuration must be an object")
                self._deep_update(config, loaded)
                logger.debug("Configuration loaded successfully")
            else:
                logger.warning(
                    f"Configuration file not found: {self.config_path}. "
                    "Creating with default values."
                )
                self.save_config(config)
        except (json.JSONDecodeError, ConfigError) as e:
            logger.error(
                f"Invalid configuration file: {self.config_path}. "
                f"Error: {str(e)}"
            )
        except OSError as e:
            logger.error(
                f"Error loading configuration: {str(e)}. "
                "Using default configuration."
            )
        return config

    def get_logging_config(self) -> Dict[str, Any]:
        """
        Returns:
            Dict[str, Any]: level, log_dir, max_log_files, max_log_size_mb
        """
        return self.config["logging"]

    def get_simulation_config(self) -> Dict[str, Any]:
        """
        Simulation defaults with environment overrides applied.

        Raises:
            ConfigError: If FLAGSHARE_WORKERS is not a positive integer
        """
        simulation = dict(self.config["simulation"])
        workers = os.environ.get(ENV_WORKERS)
        if workers:
            try:
                simulation["workers"] = int(workers)
            except ValueError:
                raise ConfigError(f"{ENV_WORKERS} must be an integer, got {workers!r}")
        if simulation["workers"] < 1:
            raise ConfigError("workers must be at least 1")
        return simulation

    def get(self, key: str, override: Any = None) -> Any:
        """Simulation setting ``key`` unless a command-line override is given."""
        if override is not None:
            return override
        simulation = self.get_simulation_config()
        if key not in simulation:
            raise ConfigError(f"unknown simulation setting {key!r}")
        return simulation[key]

    def save_config(self, config: Optional[Dict[str, Any]] = None) -> None:
        """
        Write config (the loaded configuration by default) to config_path.

        Raises:
            OSError: If the configuration file cannot be written
        """
        try:
            with open(self.config_path, 'w', encoding='utf-8') as f:
                json.dump(config or self.config, f, indent=4)
            logger.info(f"Configuration saved to: {self.config_path}")
        except OSError as e:
            logger.error(f"Failed to save configuration: {str(e)}")
            raise

    def _deep_update(self, base: Dict[str, Any], updates: Dict[str, Any]) -> None:
        for key, value in updates.items():
            if (
                key in base and
                isinstance(base[key], dict) and
                isinstance(value, dict)
            ):
                self._deep_update(base[key], value)
            else:
                base[key] = value
