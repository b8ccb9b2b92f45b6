"""
Settings - Process-wide configuration

Defaults for ell-adic precision, worker threads, enumeration bounds and the
oracle sweeps. Values come from the GFE_* environment variables and can be
overridden per call (the CLI flags go through override_settings).
"""

import os
import typing as tp
from functools import lru_cache

from pydantic import BaseModel, Field, ValidationError, field_validator

from .errors import ConfigurationError

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

_ENV_FIELDS = {
    "GFE_PRECISION": "precision",
    "GFE_THREADS": "threads",
    "GFE_LOG_LEVEL": "log_level",
    "GFE_SEED": "seed",
}


class GfeSettings(BaseModel):
    """Validated runtime settings."""

    precision: int = Field(default=64, ge=1)
    threads: int = Field(default=1, ge=1)
    brute_force_bound: int = Field(default=31, ge=2)
    oracle_samples: int = Field(default=200, ge=1)
    seed: int = 20240601
    log_level: str = "WARNING"

    model_config = {"frozen": True}

    @field_validator("log_level")
    @classmethod
    def _check_level(cls, value: str) -> str:
        value = value.upper()
        if value not in _LOG_LEVELS:
            raise ValueError(f"log level must be one of {', '.join(_LOG_LEVELS)}")
        return value

    @classmethod
    def from_env(cls, environ: tp.Optional[tp.Mapping[str, str]] = None) -> "GfeSettings":
        """Build settings from GFE_* environment variables."""
        environ = os.environ if environ is None else environ
        values = {name: environ[var] for var, name in _ENV_FIELDS.items() if var in environ}
        try:
            return cls(**values)
        except ValidationError as exc:
            raise ConfigurationError(f"invalid GFE_* environment: {exc}") from exc

    def override(self, **overrides: tp.Any) -> "GfeSettings":
        """Return a validated copy with the non-None overrides applied."""
        values = self.model_dump()
        values.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return GfeSettings(**values)
        except ValidationError as exc:
            raise ConfigurationError(f"invalid settings override: {exc}") from exc


@lru_cache(maxsize=1)
def get_settings() -> GfeSettings:
    """Cached settings read once from the environment."""
    return GfeSettings.from_env()


def override_settings(**overrides: tp.Any) -> GfeSettings:
    return get_settings().override(**overrides)
