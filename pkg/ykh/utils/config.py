"""Engine configuration management."""

import os
from dataclasses import dataclass, fields
from functools import lru_cache
from typing import Optional

import yaml
from dotenv import load_dotenv

from .exceptions import InvalidParameterError

STRATEGIES = ("naive", "power", "memo")


@dataclass
class Settings:
    """Engine configuration."""

    cache_dir: Optional[str] = None
    strategy: str = "memo"
    output: str = "text"
    workers: int = 1
    series_order: int = 4
    random_seed: int = 0
    basis_guard: int = 10**6
    env: str = "production"
    log_level: str = "WARNING"

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise InvalidParameterError(f"Unknown strategy {self.strategy!r}; expected one of {', '.join(STRATEGIES)}")
        if self.output not in ("text", "json"):
            raise InvalidParameterError(f"Unknown output format {self.output!r}")
        if self.workers < 1:
            raise InvalidParameterError("workers must be at least 1")
        if self.series_order < 1:
            raise InvalidParameterError("series_order must be at least 1")

    @classmethod
    @lru_cache()
    def from_env(cls) -> "Settings":
        """Create settings from environment variables and an optional YAML file."""
        load_dotenv()
        values = cls._load_yaml(os.environ.get("YKH_CONFIG"))
        env_map = {
            "cache_dir": os.environ.get("YKH_CACHE_DIR"),
            "strategy": os.environ.get("YKH_STRATEGY"),
            "output": os.environ.get("YKH_OUTPUT"),
            "workers": os.environ.get("YKH_WORKERS"),
            "series_order": os.environ.get("YKH_SERIES_ORDER"),
            "random_seed": os.environ.get("YKH_SEED"),
            "env": os.environ.get("YKH_ENV"),
            "log_level": os.environ.get("YKH_LOG_LEVEL") or os.environ.get("LOG_LEVEL"),
        }
        values.update({k: v for k, v in env_map.items() if v is not None})
        return cls.from_mapping(values)

    @classmethod
    def from_mapping(cls, values: dict) -> "Settings":
        """Build settings from a plain mapping, coercing integer fields."""
        known = {f.name: f for f in fields(cls)}
        kwargs = {}
        for key, value in values.items():
            if key not in known:
                raise InvalidParameterError(f"Unknown setting {key!r}")
            if known[key].type in (int, "int"):
                try:
                    value = int(value)
                except (TypeError, ValueError):
                    raise InvalidParameterError(f"Setting {key!r} must be an integer, got {value!r}")
            kwargs[key] = value
        return cls(**kwargs)

    @staticmethod
    def _load_yaml(path: Optional[str]) -> dict:
        if not path:
            return {}
        try:
            with open(path) as f:
                data = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as e:
            raise InvalidParameterError(f"Failed to load config file {path}: {e}")
        if not isinstance(data, dict):
            raise InvalidParameterError(f"Config file {path} must contain a mapping")
        return data

    def to_dict(self) -> dict:
        """Convert settings to dictionary."""
        return {k: v for k, v in self.__dict__.items() if not k.startswith("_")}
