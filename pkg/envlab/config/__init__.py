"""Configuration package: run settings and workbench input files."""

from envlab.config.errors import ConfigError
from envlab.config.run_config import RunConfig
from envlab.config.workbench_input import TaskSpec, WorkbenchInput

__all__ = ["ConfigError", "RunConfig", "TaskSpec", "WorkbenchInput"]
