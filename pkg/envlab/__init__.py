"""Workbench for right abelian envelopes of finite exact categories."""

__version__ = "0.1.0"
