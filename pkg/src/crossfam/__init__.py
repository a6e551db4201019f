"""Exact tools for crossing families and related segment families in the plane."""

__version__ = "0.1.0"
