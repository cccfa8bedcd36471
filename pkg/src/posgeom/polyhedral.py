"""Exact polyhedral cones: extreme rays, pulling triangulations and canonical forms.

A pointed full-dimensional cone ``C = {z : L(z) >= 0 for all L}`` in ``Q^N``
is the cone over a projective polytope.  Its canonical form is
``f(z) <z d^{N-1} z>`` with ``f`` homogeneous of degree ``-N``; ``f`` is what
:func:`canonical_function` returns.  For a simplicial cone with facet forms
``l_0..l_{N-1}`` the simplex form is ``dlog(l_1/l_0) ^ ... ^ dlog(l_{N-1}/l_0)``,
i.e. ``f = |det(l)| / prod l_i``, which is unchanged by rescaling the forms.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import flint
from flint.utils.flint_exceptions import DomainError as _FlintDomainError

from .errors import ChartError, DegenerateConeError
from .linalg import det, inverse, primitive_vector, rank
from .poly import MultiPoly, RatFunc, flint_context, from_flint, to_flint

__all__ = [
    "PolyCone",
    "Simplex",
    "LinearFactored",
    "cone_from_inequalities",
    "extreme_rays",
    "default_chart",
    "triangulate",
    "simplex_canonical_terms",
    "canonical_function",
    "oriented_canonical_function",
]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def extreme_rays(forms, dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of ``{z : a.z >= 0}`` by the double description method.

    ``forms`` are integer vectors of length ``dim`` spanning the dual space
    (otherwise the cone is not pointed).  Rays are returned as primitive
    integer vectors in ascending lexicographic order.
    """
    forms = [tuple(int(x) for x in a) for a in forms]
    if rank(forms, dim) < dim:
        raise DegenerateConeError("cone is not pointed: the inequalities do not span the dual space")
    basis = []
    for i, a in enumerate(forms):
        if rank([forms[j] for j in basis] + [a], dim) > len(basis):
            basis.append(i)
            if len(basis) == dim:
                break
    inv = inverse([forms[i] for i in basis])
    rays = [primitive_vector([inv[r][c] for r in range(dim)]) for c in range(dim)]
    zeros = []
    for c in range(dim):
        mask = 0
        for j, i in enumerate(basis):
            if j != c:
                mask |= 1 << i
        zeros.append(mask)

    in_basis = set(basis)
    for i, a in enumerate(forms):
        if i in in_basis:
            continue
        vals = [_dot(a, r) for r in rays]
        pos = [j for j, v in enumerate(vals) if v > 0]
        neg = [j for j, v in enumerate(vals) if v < 0]
        new_rays = []
        new_zeros = []
        for j, v in enumerate(vals):
            if v >= 0:
                new_rays.append(rays[j])
                new_zeros.append(zeros[j] | (1 << i) if v == 0 else zeros[j])
        for p in pos:
            for n in neg:
                common = zeros[p] & zeros[n]
                if common.bit_count() < dim - 2:
                    continue
                if any(
                    k != p and k != n and zeros[k] & common == common
                    for k in range(len(rays))
                ):
                    continue
                r = tuple(vals[p] * x - vals[n] * y for x, y in zip(rays[n], rays[p]))
                new_rays.append(primitive_vector(r))
                new_zeros.append(common | (1 << i))
        rays, zeros = new_rays, new_zeros
    return sorted(set(rays))


@dataclass(frozen=True)
class PolyCone:
    """H- and V-description of a pointed full-dimensional cone.

    ``facet_forms`` are primitive integer inequality forms (duplicates
    merged; ``sources`` holds the labels of every input that produced each
    form).  ``rays`` are the primitive integer extreme rays.
    """

    vars: tuple[str, ...]
    facet_forms: tuple[tuple[int, ...], ...]
    rays: tuple[tuple[int, ...], ...]
    sources: tuple[tuple, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.vars)

    @cached_property
    def incidence(self) -> tuple[frozenset, ...]:
        """For each form, the indices of the rays on which it vanishes."""
        return tuple(
            frozenset(j for j, r in enumerate(self.rays) if _dot(a, r) == 0)
            for a in self.facet_forms
        )

    @cached_property
    def facet_mask(self) -> tuple[bool, ...]:
        """Whether each form actually supports a facet (``dim - 1`` independent rays)."""
        return tuple(
            rank([self.rays[j] for j in inc], self.dim) == self.dim - 1 for inc in self.incidence
        )

    def form_poly(self, i: int) -> MultiPoly:
        return MultiPoly.linear(self.vars, self.facet_forms[i])

    def contains(self, z) -> bool:
        return all(_dot(a, z) >= 0 for a in self.facet_forms)


def cone_from_inequalities(vars, forms, sources=None) -> PolyCone:
    """Normalize, deduplicate and solve for extreme rays."""
    vars = tuple(vars)
    merged: dict[tuple[int, ...], list] = {}
    for k, a in enumerate(forms):
        if len(a) != len(vars):
            raise ValueError(f"form {a} has wrong length for {len(vars)} variables")
        key = primitive_vector(a)
        if not any(key):
            continue
        merged.setdefault(key, [])
        if sources is not None:
            merged[key].append(sources[k])
    keys = tuple(merged)
    rays = tuple(extreme_rays(keys, len(vars)))
    return PolyCone(vars, keys, rays, tuple(tuple(merged[k]) for k in keys) if sources is not None else ())


def default_chart(cone: PolyCone) -> tuple[int, ...]:
    """All-ones functional if positive on every ray, else the sum of the facet forms."""
    ones = (1,) * cone.dim
    if all(_dot(ones, r) > 0 for r in cone.rays):
        return ones
    return tuple(sum(col) for col in zip(*cone.facet_forms))


@dataclass(frozen=True)
class Simplex:
    rays: tuple[int, ...]
    sign: int


def _check_chart(cone: PolyCone, chart) -> tuple[Fraction, ...]:
    chart = tuple(Fraction(c) for c in chart)
    if len(chart) != cone.dim:
        raise ChartError(f"chart has {len(chart)} entries, expected {cone.dim}")
    for r in cone.rays:
        if _dot(chart, r) <= 0:
            raise ChartError(f"chart is not positive on ray {r}")
    return chart


def _vertices(cone: PolyCone, chart):
    out = []
    for r in cone.rays:
        s = _dot(chart, r)
        out.append(tuple(Fraction(x) / s for x in r))
    return out


def triangulate(cone: PolyCone, chart=None, order=None) -> list[Simplex]:
    """Pulling triangulation of the chart cross-section, using vertices only.

    ``order`` is a sequence of ray indices giving pulling priority; by default
    the vertices are pulled in lexicographic order of their chart-normalized
    coordinates.  Each simplex records the sign of the determinant of its
    chart-normalized vertices (taken in increasing ray index order).
    """
    chart = _check_chart(cone, chart if chart is not None else default_chart(cone))
    verts = _vertices(cone, chart)
    if order is None:
        order = sorted(range(len(verts)), key=lambda j: verts[j])
    order = list(order)
    if sorted(order) != list(range(len(verts))):
        raise ValueError("order must be a permutation of the ray indices")
    priority = {j: p for p, j in enumerate(order)}
    facet_sets = [inc for inc, ok in zip(cone.incidence, cone.facet_mask) if ok]

    rank_cache: dict[frozenset, int] = {}

    def rk(face):
        if face not in rank_cache:
            rank_cache[face] = rank([cone.rays[j] for j in face], cone.dim)
        return rank_cache[face]

    memo: dict[frozenset, list[frozenset]] = {}

    def tri(face: frozenset) -> list[frozenset]:
        if face in memo:
            return memo[face]
        r = rk(face)
        if len(face) == r:
            memo[face] = [face]
            return memo[face]
        apex = min(face, key=priority.__getitem__)
        subfaces = []
        for s in facet_sets:
            sub = face & s
            if sub == face or len(sub) < r - 1 or sub in subfaces:
                continue
            if apex not in sub and rk(sub) == r - 1:
                subfaces.append(sub)
        subfaces.sort(key=lambda f: sorted(priority[j] for j in f))
        out = []
        for sub in subfaces:
            for simplex in tri(sub):
                out.append(simplex | {apex})
        memo[face] = out
        return out

    simplices = []
    for face in tri(frozenset(range(len(cone.rays)))):
        idx = tuple(sorted(face))
        d = det([list(col) for col in zip(*(verts[j] for j in idx))])
        simplices.append(Simplex(idx, 1 if d > 0 else -1))
    return simplices


def simplex_canonical_terms(cone: PolyCone, simplex: Simplex, chart):
    """Canonical function of one simplex as ``(coefficient, [primitive forms])``.

    Forms are normalized to a positive first nonzero entry; the sign of the
    coefficient absorbs the orientation.
    """
    chart = tuple(Fraction(c) for c in chart)
    verts = _vertices(cone, chart)
    cols = [verts[j] for j in simplex.rays]
    Z = [list(row) for row in zip(*cols)]
    d = det(Z)
    if d == 0:
        raise DegenerateConeError("degenerate simplex in triangulation")
    rows = inverse(Z)
    coeff = Fraction(1) / abs(d)
    forms = []
    for row in rows:
        prim = primitive_vector(row)
        j = next(i for i, x in enumerate(prim) if x)
        if prim[j] < 0:
            prim = tuple(-x for x in prim)
        coeff /= row[j] / prim[j]
        forms.append(prim)
    return coeff, forms


@dataclass(frozen=True)
class LinearFactored:
    """``num / prod(form^k)`` with distinct primitive forms (first nonzero entry
    positive) none of which divides ``num``.

    This is a canonical representation: the expanded denominator is primitive
    with positive leading coefficient, so :meth:`expand` needs no gcd.
    """

    num: MultiPoly
    den: tuple[tuple[tuple[int, ...], int], ...]  # (form, exponent), descending forms

    @property
    def vars(self):
        return self.num.vars

    def forms(self) -> list[MultiPoly]:
        return [MultiPoly.linear(self.vars, f) for f, _ in self.den]

    def expand(self) -> RatFunc:
        den = to_flint(MultiPoly.one(self.vars))
        for f, k in self.den:
            den = den * to_flint(MultiPoly.linear(self.vars, f)) ** k
        return RatFunc(self.num, from_flint(self.vars, den), _reduced=True)

    def scale(self, c) -> LinearFactored:
        return LinearFactored(self.num * c, self.den)

    def evaluate(self, values) -> Fraction:
        point = [Fraction(values[v]) for v in self.vars]
        d = Fraction(1)
        for f, k in self.den:
            d *= _dot(f, point) ** k
        if not d:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return self.num.evaluate(values) / d

    def degree(self) -> int | None:
        h = self.num.homogeneity()
        return None if h is None else h - sum(k for _, k in self.den)

    def __str__(self):
        if not self.den:
            return str(self.num)
        num = str(self.num)
        if len(self.num) > 1:
            num = f"({num})"
        parts = []
        for f, k in self.den:
            form = MultiPoly.linear(self.vars, f)
            text = str(form) if len(form) == 1 and form.leading_coefficient() == 1 else f"({form})"
            parts.append(text if k == 1 else f"{text}^{k}")
        den = "*".join(parts)
        return f"{num}/{den}" if len(parts) == 1 and "^" not in den else f"{num}/({den})"


class _FactoredSum:
    """Rational function ``num / prod(forms)`` with linear-form denominators.

    ``num`` is a FLINT polynomial; conversion happens once at the end.
    """

    __slots__ = ("num", "den", "linear")

    def __init__(self, num, den: Counter, linear):
        self.num, self.den, self.linear = num, den, linear

    def __add__(self, other):
        den = self.den | other.den
        a = self.num
        for f, k in (den - self.den).items():
            a = a * self.linear(f) ** k
        b = other.num
        for f, k in (den - other.den).items():
            b = b * self.linear(f) ** k
        out = _FactoredSum(a + b, den, self.linear)
        out._cancel()
        return out

    def _cancel(self):
        if self.num.is_zero():
            self.den = Counter()
            return
        for f in list(self.den):
            lin = self.linear(f)
            while self.den[f]:
                try:
                    self.num = self.num / lin
                except _FlintDomainError:
                    break
                self.den[f] -= 1
            if not self.den[f]:
                del self.den[f]

    def result(self, vars) -> LinearFactored:
        return LinearFactored(from_flint(vars, self.num), tuple(sorted(self.den.items(), reverse=True)))


def _tree_sum(items):
    items = list(items)
    while len(items) > 1:
        nxt = [items[i] + items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


def _canonical_sum(cone: PolyCone, chart, simplices) -> _FactoredSum:
    ctx = flint_context(cone.vars)

    @lru_cache(maxsize=None)
    def linear(f):
        if not f:
            return ctx.from_dict({(0,) * cone.dim: 1})
        return to_flint(MultiPoly.linear(cone.vars, f))

    parts = []
    for s in simplices:
        coeff, forms = simplex_canonical_terms(cone, s, chart)
        num = ctx.from_dict({(0,) * cone.dim: flint.fmpq(coeff.numerator, coeff.denominator)})
        parts.append(_FactoredSum(num, Counter(forms), linear))
    return _tree_sum(parts)


def canonical_function(cone: PolyCone, chart=None, order=None, simplices=None) -> LinearFactored:
    """Sum of the simplex canonical functions over a pulling triangulation.

    The result is independent of chart and triangulation; it is positive on
    the interior of the cone.
    """
    chart = _check_chart(cone, chart if chart is not None else default_chart(cone))
    if simplices is None:
        simplices = triangulate(cone, chart, order)
    return _canonical_sum(cone, chart, simplices).result(cone.vars)


def oriented_canonical_function(cone: PolyCone, point, scale=1, chart=None, order=None, simplices=None):
    """Canonical function times ``scale``, with the sign fixed so it is positive at ``point``.

    Returns ``(function, sign)``.  Scaling happens before the conversion out of
    FLINT, which matters for large numerators.
    """
    chart = _check_chart(cone, chart if chart is not None else default_chart(cone))
    if simplices is None:
        simplices = triangulate(cone, chart, order)
    total = _canonical_sum(cone, chart, simplices)
    point = [Fraction(x) for x in point]
    value = total.num(*(flint.fmpq(x.numerator, x.denominator) for x in point))
    value = Fraction(int(value.p), int(value.q))
    for f, k in total.den.items():
        value /= _dot(f, point) ** k
    sign = 1 if value > 0 else -1
    scale = Fraction(scale) * sign
    total.num = total.num * flint.fmpq(scale.numerator, scale.denominator)
    return total.result(cone.vars), sign
