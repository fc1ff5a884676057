"""Streaming membership testing for deterministic-linear and LL(1) languages."""

__version__ = "0.1.0"
