"""Singularities of three-parameter line congruences in R^4."""
__version__ = "0.1.0"
