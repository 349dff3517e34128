"""Test package for envlab."""
