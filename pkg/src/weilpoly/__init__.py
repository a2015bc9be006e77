"""Exact enumeration and verification of q-Weil polynomials of small degree."""

__version__ = "0.1.0"
