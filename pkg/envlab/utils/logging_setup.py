"""Utility module for logging setup."""

import logging
import sys

_HANDLER_NAME = "envlab-console"


def setup_logging(level: str = "WARNING") -> None:
    """Configure the root logger with one console handler on stderr."""
    logger = logging.getLogger()
    logger.setLevel(level.upper())

    if any(handler.get_name() == _HANDLER_NAME for handler in logger.handlers):
        return

    # Console handler; stdout is reserved for reports
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.set_name(_HANDLER_NAME)
    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)
