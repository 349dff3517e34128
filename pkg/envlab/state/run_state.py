"""Module for tracking the state and results of workbench tasks."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from threading import Lock
from typing import Any

logger = logging.getLogger(__name__)


# Task State Definitions
class TaskState(Enum):
    """Enumeration of task states."""

    PENDING = "Pending"
    RUNNING = "Running"
    PASSED = "Passed"
    FAILED = "Failed"
    INCONCLUSIVE = "Inconclusive"
    ERROR = "Error"


FINAL_STATES = (TaskState.PASSED, TaskState.FAILED, TaskState.INCONCLUSIVE, TaskState.ERROR)


@dataclass
class TaskResult:
    """Outcome of one task."""

    index: int
    op: str
    structure: str | None
    verdict: str
    reports: list[dict[str, Any]] = field(default_factory=list)
    envelope: dict[str, Any] | None = None
    error: dict[str, str] | None = None
    elapsed: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        """Serialization without the timing."""
        data: dict[str, Any] = {"index": self.index, "op": self.op, "verdict": self.verdict}
        if self.structure is not None:
            data["structure"] = self.structure
        if self.reports:
            data["reports"] = self.reports
        if self.envelope is not None:
            data["envelope"] = self.envelope
        if self.error is not None:
            data["error"] = self.error
        return data


# Centralized RunStateManager
class RunStateManager:
    """Lock-protected task states and results for one run."""

    def __init__(self, num_tasks: int) -> None:
        """Initialize every task as pending."""
        self._lock = Lock()
        self._states = [TaskState.PENDING] * num_tasks
        self._results: dict[int, TaskResult] = {}

    def set_task_state(self, index: int, state: TaskState) -> None:
        """Set the state of a task."""
        with self._lock:
            old_state = self._states[index]
            self._states[index] = state
            if old_state != state:
                logger.info("[Task %d] State changed from %s to %s", index, old_state.value, state.value)

    def get_task_state(self, index: int) -> str:
        """Retrieve the current state of a task."""
        with self._lock:
            return self._states[index].value

    def record_result(self, result: TaskResult) -> None:
        """Store a finished task's result."""
        with self._lock:
            self._results[result.index] = result

    def results(self) -> list[TaskResult]:
        """Results sorted by task index."""
        with self._lock:
            return [self._results[k] for k in sorted(self._results)]

    def all_finished(self) -> bool:
        """True when no task is pending or running."""
        with self._lock:
            return all(state in FINAL_STATES for state in self._states)
