"""The bundled fixture corpus shipped as package data."""

from __future__ import annotations

import json
import logging
from importlib import resources
from typing import TYPE_CHECKING

from envlab.config.errors import ConfigError
from envlab.config.workbench_input import WorkbenchInput

if TYPE_CHECKING:
    from importlib.resources.abc import Traversable

logger = logging.getLogger(__name__)

CORPUS_PACKAGE = "envlab.corpus"


def _files() -> dict[str, Traversable]:
    root = resources.files(CORPUS_PACKAGE)
    return {entry.name.removesuffix(".json"): entry for entry in root.iterdir() if entry.name.endswith(".json")}


def corpus_names() -> list[str]:
    """Names of the bundled inputs, sorted."""
    return sorted(_files())


def load_corpus(name: str) -> WorkbenchInput:
    """Parse a bundled input by name."""
    files = _files()
    if name not in files:
        msg = f"Unknown corpus entry {name!r}; available: {', '.join(sorted(files))}"
        logger.error(msg)
        raise ConfigError(msg)
    try:
        data = json.loads(files[name].read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        msg = f"Corpus entry {name} is not valid JSON at line {e.lineno}, column {e.colno}"
        logger.exception(msg)
        raise ConfigError(msg) from e
    return WorkbenchInput.from_dict(data, default_name=name)


def show_corpus(name: str) -> str:
    """Canonical JSON of a bundled input."""
    return load_corpus(name).canonical_json() + "\n"
