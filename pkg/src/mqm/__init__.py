"""Exact counting quasimorphisms on CAT(0) cube complexes."""

__version__ = "0.1.0"
