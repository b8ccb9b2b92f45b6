#!/usr/bin/env python3
"""
Test settings - defaults, GFE_* environment, validated overrides
"""

import pytest

from gfemod.core.errors import ConfigurationError, GfeError
from gfemod.core.settings import GfeSettings


def test_defaults():
    settings = GfeSettings()
    assert settings.precision == 64
    assert settings.threads == 1
    assert settings.log_level == "WARNING"


def test_from_env():
    settings = GfeSettings.from_env({"GFE_PRECISION": "128", "GFE_THREADS": "4", "GFE_LOG_LEVEL": "debug"})
    assert (settings.precision, settings.threads, settings.log_level) == (128, 4, "DEBUG")


def test_from_env_ignores_unrelated_variables():
    assert GfeSettings.from_env({"HOME": "/root"}) == GfeSettings()


@pytest.mark.parametrize("environ", [{"GFE_PRECISION": "0"}, {"GFE_THREADS": "many"}, {"GFE_LOG_LEVEL": "LOUD"}])
def test_invalid_environment(environ):
    with pytest.raises(ConfigurationError):
        GfeSettings.from_env(environ)


def test_override_skips_none():
    settings = GfeSettings().override(precision=None, threads=2)
    assert settings.precision == 64
    assert settings.threads == 2


def test_invalid_override_is_a_gfe_error():
    with pytest.raises(GfeError):
        GfeSettings().override(threads=0)


def test_settings_are_frozen():
    settings = GfeSettings()
    with pytest.raises(Exception):
        settings.threads = 3
