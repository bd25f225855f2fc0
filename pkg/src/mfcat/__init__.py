"""Exact computations with matrix factorizations over affine polynomial rings."""

__version__ = "0.1.0"
