"""Exact computations for Feynman graph polynomials, cosmological polytopes,
Weyl-algebra D-ideals, hyperplane-arrangement Euler characteristics and
Grassmannian positivity."""

__version__ = "0.1.0"
