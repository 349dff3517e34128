"""Run configuration management."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, fields
from typing import TYPE_CHECKING, Any

from envlab.category.deflations import DEFAULT_MAX_CANDIDATES
from envlab.category.exact_structure import DEFAULT_DEPTH
from envlab.config.errors import ConfigError

if TYPE_CHECKING:
    from pathlib import Path

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("human", "machine")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class RunConfig:
    """Settings shared by every task of a run."""

    depth: int = DEFAULT_DEPTH
    seed: int = 0
    output_format: str = "human"
    workers: int = 1
    fuzz_instances: int = 100
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    log_level: str = "WARNING"

    @classmethod
    def load_from_file(cls, path: Path) -> RunConfig:
        """Load run configuration from a JSON file."""
        if not path.exists():
            msg = f"Run configuration file not found at {path}"
            logger.error(msg)
            raise FileNotFoundError(msg)
        try:
            with path.open() as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            logger.exception("Invalid JSON in run configuration file.")
            msg = f"Invalid JSON in run configuration file at line {e.lineno}"
            raise ConfigError(msg) from e
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RunConfig:
        """Load run configuration from a dictionary; missing fields keep their defaults."""
        if not isinstance(data, dict):
            msg = "Run configuration must be a JSON object"
            raise ConfigError(msg)
        known = {f.name: f for f in fields(cls)}
        unknown = sorted(set(data) - set(known))
        if unknown:
            msg = f"Unknown run configuration fields: {', '.join(unknown)}"
            logger.error(msg)
            raise ConfigError(msg)
        for name, value in data.items():
            expected = int if name not in ("output_format", "log_level") else str
            if not isinstance(value, expected) or isinstance(value, bool):
                msg = f"Field {name} must be of type {expected.__name__}, got {type(value).__name__}"
                logger.error(msg)
                raise ConfigError(msg)
        config = cls(**data)
        config.validate()
        return config

    def validate(self) -> None:
        """Range checks."""
        if self.depth < 0:
            msg = f"depth must be non-negative, got {self.depth}"
            raise ConfigError(msg)
        if self.workers < 1:
            msg = f"workers must be at least 1, got {self.workers}"
            raise ConfigError(msg)
        if self.fuzz_instances < 0 or self.max_candidates < 1:
            msg = "fuzz_instances must be non-negative and max_candidates positive"
            raise ConfigError(msg)
        if self.output_format not in OUTPUT_FORMATS:
            msg = f"Invalid output_format: {self.output_format}. Must be 'human' or 'machine'"
            raise ConfigError(msg)
        if self.log_level.upper() not in LOG_LEVELS:
            msg = f"Invalid log_level: {self.log_level}"
            raise ConfigError(msg)

    def with_overrides(self, **overrides: Any) -> RunConfig:  # noqa: ANN401
        """Copy with the given non-None values replaced."""
        data = {f.name: getattr(self, f.name) for f in fields(self)}
        data.update({k: v for k, v in overrides.items() if v is not None})
        return RunConfig.from_dict(data)
