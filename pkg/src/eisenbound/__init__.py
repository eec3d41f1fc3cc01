"""Effective lower bounds for L(1, chi) from Eisenstein series on Gamma_0(q)."""

__version__ = "0.1.0"
