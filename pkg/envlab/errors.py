"""Error types shared by every envlab package.

Each error carries a stable ``code`` string so reports can name the failure
without depending on Python class names.
"""

from __future__ import annotations

from typing import Any


class EnvlabError(Exception):
    """Base class for all workbench errors."""

    code = "E_ENVLAB"


class BadInputError(EnvlabError):
    """Malformed or inconsistent input data."""

    code = "E_BAD_INPUT"


class DimensionMismatchError(EnvlabError):
    """Objects that must live over the same algebra or have matching shapes do not."""

    code = "E_DIM_MISMATCH"


class NotFiniteDimensionalError(EnvlabError):
    """A quiver with relations could not be certified finite dimensional."""

    code = "E_NOT_FD"


class AxiomFailureError(EnvlabError):
    """An exact-structure axiom fails on a concrete instance."""

    code = "E_AXIOM_FAIL"

    def __init__(self, msg: str, instance: dict[str, Any] | None = None) -> None:
        """Keep the violating instance next to the message."""
        super().__init__(msg)
        self.instance = instance or {}


class SearchExhaustedError(EnvlabError):
    """A bounded deflation search ended without a certificate."""

    code = "E_SEARCH_EXHAUSTED"
