"""Tests for RunStateManager functionality."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from envlab.state import RunStateManager, TaskResult, TaskState

if TYPE_CHECKING:
    import pytest


def test_run_state_initial_states(run_state_manager: RunStateManager) -> None:
    """Every task starts pending."""
    assert [run_state_manager.get_task_state(k) for k in range(3)] == ["Pending"] * 3  # noqa: S101
    assert not run_state_manager.all_finished()  # noqa: S101


def test_run_state_transitions(run_state_manager: RunStateManager, caplog: pytest.LogCaptureFixture) -> None:
    """State changes are logged once; repeated states are silent."""
    with caplog.at_level(logging.INFO, logger="envlab.state.run_state"):
        run_state_manager.set_task_state(0, TaskState.RUNNING)
        run_state_manager.set_task_state(0, TaskState.RUNNING)
        run_state_manager.set_task_state(0, TaskState.PASSED)
    assert run_state_manager.get_task_state(0) == "Passed"  # noqa: S101
    messages = [r.getMessage() for r in caplog.records]
    assert messages == [  # noqa: S101
        "[Task 0] State changed from Pending to Running",
        "[Task 0] State changed from Running to Passed",
    ]


def test_run_state_all_finished(run_state_manager: RunStateManager) -> None:
    """Finished means no task is pending or running."""
    for k, state in enumerate((TaskState.PASSED, TaskState.INCONCLUSIVE, TaskState.RUNNING)):
        run_state_manager.set_task_state(k, state)
    assert not run_state_manager.all_finished()  # noqa: S101
    run_state_manager.set_task_state(2, TaskState.ERROR)
    assert run_state_manager.all_finished()  # noqa: S101


def test_run_state_results_sorted(run_state_manager: RunStateManager) -> None:
    """Results come back in task order whatever order they were recorded in."""
    for k in (2, 0, 1):
        run_state_manager.record_result(TaskResult(k, "validate", "all", "pass"))
    assert [r.index for r in run_state_manager.results()] == [0, 1, 2]  # noqa: S101


def test_task_result_omits_empty_fields() -> None:
    """Timings never appear in the serialized form; absent parts are left out."""
    result = TaskResult(0, "check:left_coherence", None, "pass", elapsed=1.5)
    assert result.to_dict() == {"index": 0, "op": "check:left_coherence", "verdict": "pass"}  # noqa: S101
    failed = TaskResult(1, "envelope", "all", "error", error={"code": "E_BAD_INPUT", "message": "x"})
    assert failed.to_dict()["error"]["code"] == "E_BAD_INPUT"  # noqa: S101
