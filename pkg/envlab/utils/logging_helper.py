"""Utility module for logging checks, envelopes and tasks in a structured manner."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from envlab.state import TaskState
    from envlab.verdicts import CheckReport

logger = logging.getLogger(__name__)


def log_check(report: CheckReport) -> None:
    """Log a finished check."""
    logger.info(
        "Check - Name: %s, Verdict: %s, Passed: %s, Counterexamples: %d, Depth: %s, Elapsed: %.3fs",
        report.name,
        report.verdict.value,
        report.fraction(),
        len(report.counterexamples),
        report.depth if report.depth is not None else "N/A",
        report.elapsed,
    )


def log_envelope(summary: dict[str, Any]) -> None:
    """Log the dimensions of a constructed envelope."""
    logger.info(
        "Envelope - Structure: %s, Kind: %s, dim Gamma: %d, dim eGammae: %d, Simples: %d -> %d, Def: %s",
        summary["structure"],
        summary["kind"],
        summary["dim_gamma"],
        summary["dim_envelope_algebra"],
        summary["simples"],
        summary["envelope_simples"],
        ", ".join(summary["def_simples"]) or "none",
    )


def log_task(index: int, op: str, state: TaskState) -> None:
    """Log the outcome of a task."""
    logger.info("Task - Index: %d, Operation: %s, State: %s", index, op, state.value)
