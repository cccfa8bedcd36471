"""Pluecker coordinates, nonnegativity, three-term Pluecker relations and
the amplituhedron map ``V -> V Z``.

Matrices are lists of rows of exact rationals.  Subsets are 0-based sorted
tuples internally; labels such as ``p13`` use 1-based column numbers.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from .errors import DimensionMismatchError, InputError, NotPositiveError, RankDeficientError
from .linalg import det, rank, to_fractions
from .poly import as_fraction, format_fraction

__all__ = [
    "GrassPoint",
    "plucker",
    "is_nonnegative",
    "plucker_relations",
    "check_plucker_relations",
    "positivity_check",
    "amplituhedron_map",
    "random_totally_positive",
    "vandermonde",
    "matrix_from_json",
    "load_matrix",
]


def _shape(m):
    if not m or not m[0]:
        raise InputError("matrix must be nonempty")
    k, n = len(m), len(m[0])
    if any(len(r) != n for r in m):
        raise InputError("matrix rows must have equal length")
    return k, n


def _label(subset) -> str:
    sep = "," if any(i >= 9 for i in subset) else ""
    return "p" + sep.join(str(i + 1) for i in subset)


@dataclass(frozen=True)
class GrassPoint:
    """A point of ``Gr(k, n)`` with its representing matrix and all maximal minors."""

    matrix: tuple
    pluckers: dict

    @property
    def k(self) -> int:
        return len(self.matrix)

    @property
    def n(self) -> int:
        return len(self.matrix[0])

    def __getitem__(self, subset) -> Fraction:
        return self.pluckers[tuple(sorted(subset))]

    def vector(self) -> tuple:
        return tuple(self.pluckers[s] for s in sorted(self.pluckers))

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "matrix": [[format_fraction(x) for x in row] for row in self.matrix],
            "pluckers": {_label(s): format_fraction(v) for s, v in sorted(self.pluckers.items())},
        }


def plucker(M) -> GrassPoint:
    """All ``k x k`` minors of a full-rank ``k x n`` matrix."""
    M = to_fractions(M)
    k, n = _shape(M)
    if k > n or rank(M) < k:
        raise RankDeficientError(f"matrix of shape {k}x{n} does not have full row rank")
    pl = {}
    for cols in combinations(range(n), k):
        pl[cols] = det([[row[c] for c in cols] for row in M])
    return GrassPoint(tuple(tuple(r) for r in M), pl)


def is_nonnegative(p: GrassPoint) -> bool:
    """True iff after making the first nonzero coordinate positive all are ``>= 0``."""
    vals = p.vector()
    first = next(v for v in vals if v)
    sign = 1 if first > 0 else -1
    return all(sign * v >= 0 for v in vals)


def plucker_relations(n: int, k: int):
    """Index data ``(S, a, b, c, d)`` of every three-term relation of ``Gr(k, n)``.

    The relation reads ``p(Sac) p(Sbd) = p(Sab) p(Scd) + p(Sad) p(Sbc)``.
    """
    out = []
    for S in combinations(range(n), k - 2) if k >= 2 else ():
        rest = [i for i in range(n) if i not in S]
        for a, b, c, d in combinations(rest, 4):
            out.append((S, a, b, c, d))
    return out


def _p(point_or_dict, S, *extra):
    pl = point_or_dict.pluckers if isinstance(point_or_dict, GrassPoint) else point_or_dict
    return pl[tuple(sorted(S + extra))]


def check_plucker_relations(p, k: int | None = None, n: int | None = None) -> bool:
    """Verify all three-term relations for a GrassPoint or a dict of coordinates."""
    if isinstance(p, GrassPoint):
        k, n = p.k, p.n
    elif k is None or n is None:
        raise ValueError("k and n are needed for a bare coordinate dict")
    for S, a, b, c, d in plucker_relations(n, k):
        lhs = _p(p, S, a, c) * _p(p, S, b, d)
        rhs = _p(p, S, a, b) * _p(p, S, c, d) + _p(p, S, a, d) * _p(p, S, b, c)
        if lhs != rhs:
            return False
    return True


def positivity_check(Z) -> bool:
    """True iff every maximal minor of the tall matrix ``Z`` is strictly positive."""
    Z = to_fractions(Z)
    n, c = _shape(Z)
    if n < c:
        raise DimensionMismatchError(f"Z needs at least as many rows as columns, got {n}x{c}")
    for rows in combinations(range(n), c):
        if det([Z[r] for r in rows]) <= 0:
            return False
    return True


def amplituhedron_map(V: GrassPoint, Z) -> GrassPoint:
    """Image ``V Z`` of a nonnegative point under a positive ``n x (k+m)`` matrix."""
    Z = to_fractions(Z)
    rows, cols = _shape(Z)
    if rows != V.n:
        raise DimensionMismatchError(f"Z must have {V.n} rows, got {rows}")
    if cols <= V.k:
        raise DimensionMismatchError(f"Z must have more than k = {V.k} columns")
    if not positivity_check(Z):
        raise NotPositiveError("Z has a maximal minor that is not positive")
    if not is_nonnegative(V):
        raise NotPositiveError("V is not in the nonnegative Grassmannian")
    image = [[sum(v * Z[i][j] for i, v in enumerate(row)) for j in range(cols)] for row in V.matrix]
    if rank(image) < V.k:
        raise RankDeficientError("degenerate image: V Z is rank deficient")
    return plucker(image)


# ---------------------------------------------------------------------------
# constructions


def vandermonde(nodes, cols: int):
    """Rows ``(1, t, .., t^(cols-1))``; totally positive for increasing positive nodes."""
    return [[Fraction(t) ** j for j in range(cols)] for t in map(as_fraction, nodes)]


def random_totally_positive(n: int, rng: random.Random | None = None, max_weight: int = 5):
    """Random ``n x n`` totally positive matrix.

    Built as ``L D U`` from elementary bidiagonal factors with positive
    weights (lower then upper), which yields every minor positive.
    """
    rng = rng or random.Random(0)

    def eye():
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def mul(a, b):
        return [[sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n)] for i in range(n)]

    def weight():
        return Fraction(rng.randint(1, max_weight), rng.randint(1, max_weight))

    out = eye()
    # both triangular parts follow a reduced word for the longest permutation
    for top in range(n - 1):
        for i in range(n - 1, top, -1):
            e = eye()
            e[i][i - 1] = weight()
            out = mul(out, e)
    d = eye()
    for i in range(n):
        d[i][i] = weight()
    out = mul(out, d)
    for top in range(n - 1):
        for i in range(n - 1, top, -1):
            e = eye()
            e[i - 1][i] = weight()
            out = mul(out, e)
    return out


def matrix_from_json(data, source=None):
    """Rows of a JSON array; entries are integers or ``"p/q"`` strings."""
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise InputError("matrix must be a JSON array of rows", source=source)
    out = []
    for i, row in enumerate(data, start=1):
        vals = []
        for x in row:
            if isinstance(x, bool) or (isinstance(x, float) and not x.is_integer()):
                raise InputError(f"row {i}: use exact rationals like \"p/q\", got {x!r}", source=source)
            try:
                vals.append(as_fraction(int(x) if isinstance(x, float) else x))
            except (InputError, ValueError, TypeError):
                raise InputError(f"row {i}: bad entry {x!r}", source=source) from None
        out.append(vals)
    if not out[0] or len({len(r) for r in out}) != 1:
        raise InputError("matrix rows must be nonempty and of equal length", source=source)
    return out


def load_matrix(path):
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", line=exc.lineno, source=path) from None
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", source=path) from None
    return matrix_from_json(data, path)
