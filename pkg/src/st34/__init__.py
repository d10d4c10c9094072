"""Exact invariant theory for the complex reflection group ST34."""

__version__ = "0.1.0"
