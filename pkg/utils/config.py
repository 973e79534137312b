"""
Configuration: YAML defaults with environment overrides
"""
import logging
import os
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

from utils.error_handler import ValidationError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'cm_config.yml')
OUTPUT_FORMATS = ('json', 'csv', 'text')


class Config:
    """Runtime settings for the CLI and the sweep harness"""

    def __init__(self, config_path: Optional[str] = None, load_env: bool = True):
        if load_env:
            load_dotenv()

        self.config_path = config_path or os.getenv('CMROOTS_CONFIG', DEFAULT_CONFIG_PATH)
        raw = self._load_yaml(self.config_path)

        cache = raw.get('cache', {})
        logging_cfg = raw.get('logging', {})
        sweep = raw.get('sweep', {})
        roots = raw.get('roots', {})
        classpoly = raw.get('classpoly', {})
        output = raw.get('output', {})

        self.cache_path: str = os.getenv('CMROOTS_CACHE', cache.get('path', './hpoly.cache'))
        self.log_level: str = os.getenv('CMROOTS_LOG_LEVEL', logging_cfg.get('level', 'INFO'))
        self.log_dir: str = os.getenv('CMROOTS_LOG_DIR', logging_cfg.get('directory', 'logs'))
        self.log_to_file: bool = bool(logging_cfg.get('to_file', True))
        self.max_workers: int = int(os.getenv('CMROOTS_WORKERS', sweep.get('max_workers', 1)))
        self.max_disc_cap: int = int(sweep.get('max_disc_cap', 10000))
        self.max_prime_cap: int = int(sweep.get('max_prime_cap', 1000000))
        self.root_listing_cap: int = int(roots.get('listing_cap', 1000000))
        self.precision_retries: int = int(classpoly.get('precision_retries', 3))
        self.default_format: str = str(output.get('default_format', 'json'))

        self.validate()

    @staticmethod
    def _load_yaml(path: str) -> Dict[str, Any]:
        if not os.path.exists(path):
            logger.debug(f"Config file {path} not found, using built-in defaults")
            return {}
        with open(path, 'r', encoding='utf-8') as handle:
            data = yaml.safe_load(handle) or {}
        if not isinstance(data, dict):
            raise ValidationError(f"Config file {path} must contain a mapping")
        return data

    def validate(self) -> None:
        """Reject settings no command could work with"""
        for name in ('max_workers', 'max_disc_cap', 'max_prime_cap', 'root_listing_cap'):
            if getattr(self, name) <= 0:
                raise ValidationError(f"Config value {name} must be positive")
        if self.precision_retries < 0:
            raise ValidationError("Config value precision_retries must be non-negative")
        if self.default_format not in OUTPUT_FORMATS:
            raise ValidationError(f"Unknown output format {self.default_format!r}")
        if self.log_level.upper() not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            raise ValidationError(f"Unknown log level {self.log_level!r}")
