"""Defines package version.  Parsed by pyproject.toml and imported by __init__.py."""

__version__ = "0.1.0"
