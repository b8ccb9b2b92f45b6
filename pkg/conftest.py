"""Shared fixtures for the gfemod test suites."""

import random

import pytest

from gfemod.core.settings import GfeSettings


@pytest.fixture
def settings() -> GfeSettings:
    """Default settings, independent of GFE_* in the environment."""
    return GfeSettings()


@pytest.fixture
def rng(settings) -> random.Random:
    return random.Random(settings.seed)
