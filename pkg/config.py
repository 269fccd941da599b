"""
config.py
~~~~~~~~~~~~~~~~~~~~~~

Centralised configuration loader for the multiverse simulator.
───────────────────────────────────────────────────────────────
• Reads process-wide settings from MVSIM_* variables or a .env file
  (via Pydantic BaseSettings).
• Caches the Settings instance so other modules can simply:
      from config import settings
• Loads experiment files (flat key=value, read with python-dotenv) and merges
  command-line overrides into a validated ExperimentConfig.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from dotenv import dotenv_values
from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from models import ExperimentConfig
from utils.errors import ConfigError

logger = logging.getLogger(__name__)

EXPERIMENT_KEYS = frozenset({
    "experiment", "nq", "steps", "interlude", "paths", "p", "p1", "p2", "channels",
    "suppress", "seed", "format", "out", "circuit", "fidelity_method", "workers",
})


class Settings(BaseSettings):
    # ── Logging ───────────────────────────────────────────────
    log_level: str = Field(default="INFO")
    log_dir: str = Field(default="logs")
    console_log: bool = Field(default=False)

    # ── Runs ──────────────────────────────────────────────────
    workers: int = Field(default=1, ge=1)
    default_seed: int = Field(default=20100101, ge=0)
    display_tolerance: float = Field(default=1e-10, gt=0.0)
    output_dir: str = Field(default="traces")

    # ── Pydantic config ───────────────────────────────────────
    model_config = SettingsConfigDict(
        env_prefix="MVSIM_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    @property
    def numeric_log_level(self) -> int:
        level = logging.getLevelName(self.log_level.upper())
        return level if isinstance(level, int) else logging.INFO


@lru_cache()
def get_settings() -> Settings:
    """
    Returns a cached instance of Settings.
    """
    return Settings()


# convenient shortcut so other modules can just `from config import settings`
settings = get_settings()


def read_experiment_file(path: Union[str, Path]) -> Dict[str, str]:
    """key=value pairs of an experiment file, keys lower-cased, empty values dropped."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    values = {key.strip().lower(): value for key, value in dotenv_values(path).items()}
    unknown = sorted(set(values) - EXPERIMENT_KEYS)
    if unknown:
        raise ConfigError(f"{path}: unknown key(s) {', '.join(unknown)}")
    return {key: value for key, value in values.items() if value not in (None, "")}


def _p2_to_p1(values: Dict[str, Any]) -> Dict[str, Any]:
    # the config keeps p1 only; p2 is its complement
    p2 = values.pop("p2", None)
    if p2 is None:
        return values
    p2 = float(p2)
    if "p1" in values and abs(float(values["p1"]) + p2 - 1.0) > 1e-12:
        raise ConfigError(f"p1 + p2 must equal 1 (got {values['p1']} + {p2})")
    values.setdefault("p1", 1.0 - p2)
    return values


def load_experiment_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    app_settings: Optional[Settings] = None,
) -> ExperimentConfig:
    """
    Merge defaults < file < overrides into an ExperimentConfig.
    Overrides whose value is None are ignored.
    """
    app_settings = app_settings or settings
    values: Dict[str, Any] = {}
    if path is not None:
        values.update(read_experiment_file(path))
        if "seed" not in values:
            logger.warning(f"{path} has no seed; using default seed {app_settings.default_seed}")
            values["seed"] = app_settings.default_seed
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    values.setdefault("workers", app_settings.workers)
    try:
        config = ExperimentConfig(**_p2_to_p1(values))
    except (ValidationError, ValueError) as e:
        raise ConfigError(f"invalid experiment configuration: {e}") from e
    logger.debug(f"experiment config: {config.model_dump(mode='json')}")
    return config
