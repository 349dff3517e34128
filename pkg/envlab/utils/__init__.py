"""Utility functions for the envelope workbench."""

from envlab.utils.logging_helper import log_check, log_envelope, log_task
from envlab.utils.logging_setup import setup_logging

__all__ = [
    "log_check",
    "log_envelope",
    "log_task",
    "setup_logging",
]
