"""Intersection posets and Euler characteristics of affine hyperplane
arrangement complements, in affine space or in the algebraic torus.

A hyperplane is stored as an affine vector ``(a_1, .., a_n, c)`` for
``a.x + c = 0``.  A flat is identified by the set of hyperplanes containing
it; ``H`` contains the flat cut out by ``S`` iff its vector lies in the span
of the vectors of ``S``.  The Euler characteristic of the complement is the
sum of the Moebius numbers ``mu(0, F)`` over all flats.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateArrangementError, InputError
from .linalg import primitive_vector
from .parsing import parse_polynomial, read_lines
from .poly import MultiPoly

__all__ = [
    "Arrangement",
    "Flat",
    "IntersectionPoset",
    "intersection_poset",
    "euler_characteristic",
    "master_integral_count",
    "specialize",
    "deletion",
    "restriction",
    "GenericRun",
    "generic_euler",
    "parse_forms",
]


def _affine_vector(form: MultiPoly, vars) -> tuple[Fraction, ...]:
    if form.is_zero() or form.total_degree() != 1:
        raise InputError(f"hyperplane {form} is not of degree exactly 1")
    out = [Fraction(0)] * (len(vars) + 1)
    for exp, c in form.terms.items():
        d = sum(exp)
        if d == 0:
            out[-1] = c
        else:
            out[exp.index(1)] = c
    return tuple(out)


def _proportional(u, v) -> bool:
    return primitive_vector(u) in (primitive_vector(v), tuple(-x for x in primitive_vector(v)))


@dataclass(frozen=True)
class Arrangement:
    """Affine hyperplanes ``forms`` (degree-1 MultiPolys over ``vars``).

    With ``in_torus`` the complement is taken in ``(C*)^n``, which is the
    affine complement after adding the coordinate hyperplanes.
    """

    vars: tuple
    forms: tuple
    in_torus: bool = False
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "forms", tuple(self.forms))
        for f in self.forms:
            if f.vars != self.vars:
                raise InputError(f"form {f} lives over {f.vars}, expected {self.vars}")
        vecs = self.vectors()
        for i in range(len(vecs)):
            for j in range(i):
                if _proportional(vecs[i], vecs[j]):
                    raise DegenerateArrangementError(
                        f"hyperplanes {self._label(j)} and {self._label(i)} are proportional"
                    )

    def _label(self, i):
        n = len(self.forms)
        return f"{self.forms[i]}" if i < n else f"{self.vars[i - n]} (torus)"

    @property
    def n(self) -> int:
        return len(self.vars)

    def vectors(self) -> tuple:
        """Affine vectors of all hyperplanes, coordinate ones appended in torus mode."""
        vecs = [_affine_vector(f, self.vars) for f in self.forms]
        if self.in_torus:
            for i in range(self.n):
                vecs.append(tuple(Fraction(int(k == i)) for k in range(self.n + 1)))
        return tuple(vecs)

    def affine(self) -> Arrangement:
        """The equivalent affine arrangement (coordinate hyperplanes made explicit)."""
        if not self.in_torus:
            return self
        extra = tuple(MultiPoly.variable(self.vars, v) for v in self.vars)
        return Arrangement(self.vars, self.forms + extra, False, self.metadata)


@dataclass(frozen=True)
class Flat:
    hyperplanes: frozenset
    codim: int
    mobius: int


@dataclass(frozen=True)
class IntersectionPoset:
    """Nonempty flats (the ambient space first), ordered by codimension."""

    flats: tuple
    n_hyperplanes: int

    def below(self, f: Flat):
        """Flats strictly containing ``f`` (strictly below it in the poset)."""
        return [g for g in self.flats if g.hyperplanes < f.hyperplanes]

    def characteristic_counts(self):
        """``sum of mu`` by codimension."""
        out = {}
        for f in self.flats:
            out[f.codim] = out.get(f.codim, 0) + f.mobius
        return dict(sorted(out.items()))


class _Span:
    """Row-echelon basis of a span of rational vectors."""

    def __init__(self, rows=(), pivots=()):
        self.rows = list(rows)
        self.pivots = list(pivots)

    def reduce(self, v):
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                c = v[p]
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def extended(self, v) -> _Span | None:
        r = self.reduce(v)
        p = next((k for k, x in enumerate(r) if x), None)
        if p is None:
            return None
        r = [x / r[p] for x in r]
        rows = []
        for row in self.rows:
            if row[p]:
                c = row[p]
                row = [a - c * b for a, b in zip(row, r)]
            rows.append(row)
        return _Span(rows + [r], self.pivots + [p])


def _poset_from_vectors(vecs, n: int) -> IntersectionPoset:
    m = len(vecs)
    last = n  # index of the constant column
    root = frozenset()
    spans = {root: _Span()}
    levels = [[root]]
    while levels[-1]:
        nxt = []
        for s in levels[-1]:
            span = spans[s]
            for h in range(m):
                if h in s:
                    continue
                new = span.extended(vecs[h])
                # an empty intersection shows up as a pivot on the constant column
                if new is None or last in new.pivots:
                    continue
                closure = frozenset(k for k in range(m) if k in s or k == h or new.contains(vecs[k]))
                if closure not in spans:
                    spans[closure] = new
                    nxt.append(closure)
        levels.append(sorted(nxt, key=sorted))
    ordered = [(s, len(spans[s].rows)) for level in levels for s in level]
    mobius: dict = {}
    flats = []
    for s, codim in ordered:
        mu = 1 if not s else -sum(mobius[t] for t, _ in ordered if t < s and t in mobius)
        mobius[s] = mu
        flats.append(Flat(s, codim, mu))
    return IntersectionPoset(tuple(flats), m)


def intersection_poset(a: Arrangement) -> IntersectionPoset:
    """All nonempty intersections with their Moebius numbers (torus hyperplanes included)."""
    return _poset_from_vectors(a.vectors(), a.n)


def euler_characteristic(a: Arrangement) -> int:
    """Euler characteristic of the complement, ``sum_F mu(0, F)``."""
    return sum(f.mobius for f in intersection_poset(a).flats)


def master_integral_count(a: Arrangement) -> int:
    """``|(-1)^n chi|`` for a torus arrangement.

    For generic twist exponents this is the dimension of the twisted
    cohomology ``H^n(X, omega)``, i.e. the number of master integrals.
    """
    if not a.in_torus:
        raise InputError("master integral counts need an arrangement in the torus")
    return abs((-1) ** a.n * euler_characteristic(a))


def deletion(a: Arrangement, index: int) -> Arrangement:
    """Drop hyperplane ``index`` (of the affine arrangement)."""
    a = a.affine()
    forms = a.forms[:index] + a.forms[index + 1:]
    return Arrangement(a.vars, forms, False)


def restriction(a: Arrangement, index: int) -> Arrangement:
    """The arrangement induced on hyperplane ``index``.

    The hyperplane is parametrized by eliminating its last variable with a
    nonzero coefficient; forms that become parallel to it (empty
    intersection) are dropped and coinciding traces are merged.
    """
    a = a.affine()
    h = _affine_vector(a.forms[index], a.vars)
    p = max(k for k in range(a.n) if h[k])
    keep = tuple(v for k, v in enumerate(a.vars) if k != p)
    bindings = {v: MultiPoly.variable(keep, v) for k, v in enumerate(a.vars) if k != p}
    solved = MultiPoly.constant(keep, -h[-1] / h[p])
    for k, v in enumerate(a.vars):
        if k != p and h[k]:
            solved = solved - MultiPoly.variable(keep, v) * (h[k] / h[p])
    bindings[a.vars[p]] = solved
    out = []
    seen = []
    for j, f in enumerate(a.forms):
        if j == index:
            continue
        g = f.substitute(bindings, keep)
        if g.is_constant():
            continue
        vec = primitive_vector(_affine_vector(g, keep))
        if vec in seen or tuple(-x for x in vec) in seen:
            continue
        seen.append(vec)
        out.append(g)
    return Arrangement(keep, tuple(out), False)


# ---------------------------------------------------------------------------
# parameters and generic specialization


def parse_forms(text: str, *, source=None):
    """Parse a forms file.

    Optional header lines ``vars: a1, a2`` and ``params: X1, Y12`` declare the
    coordinates and the symbolic parameters; without ``vars`` every
    identifier that is not a parameter is a coordinate.  Every other line is
    one degree-1 form.  Returns ``(vars, params, [(line, MultiPoly)])`` with
    the forms over ``vars + params``.
    """
    from .parsing import identifiers

    vars = None
    params: tuple = ()
    lines = []
    for lineno, content in read_lines(text):
        head, sep, rest = content.partition(":")
        key = head.strip().lower()
        if sep and key in ("vars", "params"):
            names = tuple(s.strip() for s in rest.split(",") if s.strip())
            for nm in names:
                if not nm.isidentifier():
                    raise InputError(f"bad name {nm!r}", line=lineno, source=source)
            if key == "vars":
                vars = names
            else:
                params = names
            continue
        lines.append((lineno, content))
    if not lines:
        raise InputError("no forms found", source=source)
    if vars is None:
        found = []
        for lineno, content in lines:
            try:
                names = identifiers(content)
            except InputError as exc:
                raise InputError(str(exc), line=lineno, source=source) from None
            found.extend(nm for nm in names if nm not in params and nm not in found)
        vars = tuple(sorted(found, key=_natural))
    if set(vars) & set(params):
        raise InputError("a name is declared both as a variable and a parameter", source=source)
    table = tuple(vars) + tuple(params)
    forms = []
    for lineno, content in lines:
        try:
            p = parse_polynomial(content, table, source=source, line=lineno)
        except InputError:
            raise
        if not isinstance(p, MultiPoly):
            raise InputError("forms must be polynomial", line=lineno, source=source)
        degs = [sum(e[: len(vars)]) for e in p.terms]
        if not degs or max(degs) != 1:
            raise InputError(f"form {content!r} is not of degree exactly 1 in {', '.join(vars)}",
                             line=lineno, source=source)
        forms.append((lineno, p))
    return tuple(vars), tuple(params), forms


def _natural(name):
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    return (head, int(tail) if tail else -1, name)


def specialize(vars, params, forms, values) -> tuple:
    """Substitute parameter ``values`` and return degree-1 forms over ``vars``."""
    vars = tuple(vars)
    table = vars + tuple(params)
    bindings = {v: MultiPoly.variable(vars, v) for v in vars}
    for name, val in zip(params, values):
        bindings[name] = MultiPoly.constant(vars, val)
    out = []
    for f in forms:
        g = (f.embed(table) if f.vars != table else f).substitute(bindings, vars)
        if g.is_constant():
            raise DegenerateArrangementError(f"form {f} becomes constant")
        out.append(g)
    return tuple(out)


@dataclass(frozen=True)
class GenericRun:
    """Euler characteristics over random generic parameter draws."""

    values: tuple
    draws: tuple
    chi: int
    stable: bool
    rejected: int

    def to_json(self) -> dict:
        return {
            "chi_per_draw": list(self.values),
            "draws": [[str(x) for x in d] for d in self.draws],
            "chi": self.chi,
            "stable": self.stable,
            "rejected_draws": self.rejected,
        }


def _random_rational(rng):
    while True:
        num = rng.randint(-997, 997)
        if num:
            return Fraction(num, rng.randint(1, 97))


def generic_euler(vars, params, forms, *, in_torus=False, trials=5, seed=0,
                  max_rejections=100) -> GenericRun:
    """Euler characteristic at ``trials`` random rational parameter values.

    Draws making two hyperplanes proportional or a form constant are
    rejected and redrawn.  ``chi`` is the most common value; ``stable`` says
    whether all draws agree.
    """
    rng = random.Random(seed)
    values, draws = [], []
    rejected = 0
    while len(values) < trials:
        point = tuple(_random_rational(rng) for _ in params)
        try:
            arr = Arrangement(vars, specialize(vars, params, forms, point), in_torus)
        except DegenerateArrangementError:
            rejected += 1
            if rejected > max_rejections:
                raise DegenerateArrangementError(
                    "could not find generic parameter values; the forms are degenerate"
                ) from None
            continue
        values.append(euler_characteristic(arr))
        draws.append(point)
    chi = max(set(values), key=lambda v: (values.count(v), -abs(v)))
    return GenericRun(tuple(values), tuple(draws), chi, len(set(values)) == 1, rejected)
