"""Errors raised while reading run configuration and workbench input files."""

from envlab.errors import BadInputError


class ConfigError(BadInputError):
    """Malformed configuration or input file; the message names the offending key."""
