"""Exact computations with finite W-superalgebras and their modular reductions."""
__version__ = "0.1.0"
