"""State management package for workbench runs."""

from envlab.state.run_state import RunStateManager, TaskResult, TaskState

__all__ = ["RunStateManager", "TaskResult", "TaskState"]
