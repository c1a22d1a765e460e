"""Exact rational colorings of fixed-point-free piecewise-affine maps."""

__version__ = "0.1.0"
