"""Sums of three squares with one small square: circle-method machinery at desk scale."""

__version__ = "0.1.0"
