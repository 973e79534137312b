import os

import pytest
import yaml
from hypothesis import settings

from database.cache import PolyCacheManager
from utils.config import Config

settings.register_profile("default", settings(max_examples=100, deadline=None))
settings.register_profile("ci", settings(max_examples=1000, deadline=None))
settings.register_profile("dev", settings(max_examples=20, deadline=None))
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def config_file(tmp_path):
    data = {
        'cache': {'path': str(tmp_path / 'hpoly.cache')},
        'logging': {'level': 'INFO', 'directory': str(tmp_path / 'logs'), 'to_file': False},
        'sweep': {'max_workers': 1, 'max_disc_cap': 10000, 'max_prime_cap': 1000000},
        'roots': {'listing_cap': 1000000},
        'classpoly': {'precision_retries': 3},
        'output': {'default_format': 'json'},
    }
    path = tmp_path / 'cm_config.yml'
    path.write_text(yaml.safe_dump(data), encoding='utf-8')
    return path


@pytest.fixture
def config(config_file, monkeypatch):
    for name in ('CMROOTS_CACHE', 'CMROOTS_LOG_LEVEL', 'CMROOTS_LOG_DIR', 'CMROOTS_WORKERS'):
        monkeypatch.delenv(name, raising=False)
    return Config(str(config_file), load_env=False)


@pytest.fixture
def cache(config):
    return PolyCacheManager(config.cache_path)
