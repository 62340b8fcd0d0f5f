import math

import numpy as np
import pytest

from cghz_toolkit.config import ConfigManager
from cghz_toolkit.core.models import CghzParams

SQRT1_2 = 1 / math.sqrt(2)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: m·N = 9 protocol runs (deselect with -m 'not slow')")


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch, tmp_path):
    """Packaged defaults only: no user override, no cap override, logs in tmp."""
    monkeypatch.delenv("CGHZ_MAX_MN", raising=False)
    monkeypatch.setenv("HOME", str(tmp_path / "home"))
    monkeypatch.setenv("CGHZ_LOG_DIR", str(tmp_path / "logs"))
    ConfigManager.reset()
    yield
    ConfigManager.reset()


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def pair_params():
    return CghzParams.from_alpha(2, 2, 0.6)


@pytest.fixture
def triple_params():
    return CghzParams.from_alpha(3, 2, 0.6)


@pytest.fixture
def balanced_pair():
    return CghzParams.from_alpha(2, 2, SQRT1_2)
