"""Squares with at most three nonzero base-q digits."""

__version__ = "0.1.0"
