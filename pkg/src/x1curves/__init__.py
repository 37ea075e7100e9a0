"""Plane models of X1(N) and fast construction of elliptic curves with N-torsion."""

__version__ = "0.1.0"
