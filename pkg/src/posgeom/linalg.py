"""Exact rational linear algebra on lists of rows.

Thin wrappers around :class:`sympy.polys.matrices.DomainMatrix` over ``QQ``
that accept and return plain Python ints/Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .poly import as_fraction

__all__ = ["det", "inverse", "nullspace", "primitive_vector", "rank", "rref", "to_fractions"]


def to_fractions(rows) -> list[list[Fraction]]:
    return [[as_fraction(x) for x in row] for row in rows]


def _dm(rows, ncols=None) -> DomainMatrix:
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    data = [[QQ(int(f.numerator), int(f.denominator)) for f in map(as_fraction, r)] for r in rows]
    return DomainMatrix(data, (len(rows), ncols), QQ)


def _back(m: DomainMatrix) -> list[list[Fraction]]:
    return [[Fraction(int(c.numerator), int(c.denominator)) for c in row] for row in m.to_list()]


def rank(rows, ncols=None) -> int:
    rows = list(rows)
    if not rows:
        return 0
    return _dm(rows, ncols).rank()


def det(rows) -> Fraction:
    rows = list(rows)
    if not rows:
        return Fraction(1)
    d = _dm(rows).det()
    return Fraction(int(d.numerator), int(d.denominator))


def rref(rows, ncols=None):
    """Reduced row echelon form: ``(nonzero rows, pivot columns)``."""
    rows = list(rows)
    if not rows:
        return [], ()
    m, pivots = _dm(rows, ncols).rref()
    out = _back(m)[: len(pivots)]
    return out, tuple(pivots)


def inverse(rows) -> list[list[Fraction]]:
    return _back(_dm(rows).inv())


def nullspace(rows, ncols) -> list[list[Fraction]]:
    """Basis of ``{v : rows . v = 0}``."""
    rows = list(rows)
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    return _back(_dm(rows, ncols).nullspace())


def primitive_vector(v) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, keeping its direction."""
    v = [as_fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)
