"""Toolkit configuration.

Settings are plain dataclass fields with defaults; a YAML file may override
any subset of them:

    fresh_prefix: "#"
    max_candidate_sets: 200000
    oracle_reserve_extra: 1
    log_level: DEBUG
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any

import yaml

_LOG_LEVELS = ("CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG")


@dataclass
class ToolkitConfig:
    """Configuration shared by the decision procedures and the CLI."""

    fresh_prefix: str = "#"
    """Prefix of generated fresh names (``#0``, ``#1``, ...)."""

    max_candidate_sets: int = 200_000
    """Strongly connected subsets the emptiness check may visit before giving up."""

    oracle_reserve_extra: int = 1
    """Reserve names added on top of the largest register count in loop search."""

    log_level: str = "WARNING"
    """Level applied by the CLI to the root logger."""

    def __post_init__(self) -> None:
        if not self.fresh_prefix:
            raise ValueError("fresh_prefix must not be empty")
        if self.max_candidate_sets < 1:
            raise ValueError(f"max_candidate_sets must be positive, got {self.max_candidate_sets}")
        if self.oracle_reserve_extra < 1:
            raise ValueError(
                f"oracle_reserve_extra must be positive, got {self.oracle_reserve_extra}"
            )
        self.log_level = str(self.log_level).upper()
        if self.log_level not in _LOG_LEVELS:
            raise ValueError(f"Unknown log level: {self.log_level}")

    @property
    def logging_level(self) -> int:
        """The numeric :mod:`logging` level for ``log_level``."""
        return int(getattr(logging, self.log_level))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ToolkitConfig:
        """Create a config from a dictionary, rejecting unknown keys."""
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"Unknown configuration keys: {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def from_yaml(cls, yaml_str: str) -> ToolkitConfig:
        """Create a config from a YAML document (empty documents give defaults)."""
        data = yaml.safe_load(yaml_str) or {}
        if not isinstance(data, dict):
            raise ValueError("Configuration document must be a mapping")
        return cls.from_dict(data)


DEFAULT_CONFIG = ToolkitConfig()


def load_config(path: str | Path) -> ToolkitConfig:
    """Load a configuration from a YAML file.

    Args:
        path: Path to the YAML file.

    Returns:
        The loaded configuration.
    """
    return ToolkitConfig.from_yaml(Path(path).read_text(encoding="utf-8"))


__all__ = ["DEFAULT_CONFIG", "ToolkitConfig", "load_config"]
