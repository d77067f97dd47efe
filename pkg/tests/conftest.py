"""Shared fixtures and the hypothesis profiles for the test suite."""

import random

import pytest
from hypothesis import HealthCheck, settings

from ykh.logging_config import configure_logging
from ykh.trace import TraceEngine
from ykh.utils.config import Settings

settings.register_profile("default", max_examples=30, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=200, deadline=None)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def fresh_settings():
    """Settings.from_env is cached per process; every test starts from the environment."""
    Settings.from_env.cache_clear()
    yield
    Settings.from_env.cache_clear()


@pytest.fixture(autouse=True)
def fresh_logging():
    """CLI tests configure structlog onto capsys's stderr, which is closed after the test; rebind it."""
    configure_logging("ykh")
    yield


@pytest.fixture
def engine():
    return TraceEngine("memo")


@pytest.fixture
def rng():
    return random.Random(7)
