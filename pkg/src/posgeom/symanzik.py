"""First and second Symanzik polynomials, the graph polynomial and the
Lee-Pomeransky integrand record.

Schwinger parameters are named ``a1 .. am`` after the edge positions.  The
kinematic invariants are opaque symbols: ``s{j}{k}`` for the dot product of
the momenta on legs ``j <= k`` (``s{j}_{k}`` once there are ten or more legs)
and ``msq{i}`` for the squared mass of edge ``i``.  The scale ``mu`` is fixed
to 1.

Each spanning 2-forest is weighted by the squared momentum flowing between
its two trees, ``-(sum of T1 momenta).(sum of T2 momenta)``.  With momentum
conservation this equals ``(sum of T1 momenta)^2``, which is how the
parachute example is usually written.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import DimensionMismatchError, InputError
from .graphs import Diagram, cycle_count, spanning_2forests, spanning_trees
from .poly import MultiPoly, as_fraction

__all__ = [
    "Kinematics",
    "LPIntegrand",
    "schwinger_vars",
    "first_symanzik",
    "second_symanzik",
    "graph_polynomial",
    "lp_integrand",
    "load_kinematics",
]


def schwinger_vars(g: Diagram) -> tuple[str, ...]:
    return tuple(f"a{i}" for i in range(1, g.n_edges + 1))


def _dot_symbol(j: int, k: int, n_legs: int) -> str:
    j, k = sorted((j, k))
    return f"s{j + 1}{k + 1}" if n_legs < 10 else f"s{j + 1}_{k + 1}"


@dataclass(frozen=True)
class Kinematics:
    """Kinematic data for a diagram.

    ``dot_products`` maps 0-based leg position pairs ``(j, k)`` with
    ``j <= k`` to a symbol name or a rational; ``masses_sq`` maps edge ids
    likewise.  Missing entries get auto-generated symbols, or zero when
    ``default_zero`` is set.  With ``conservation`` the momentum of the last
    leg is eliminated as minus the sum of the others.
    """

    dot_products: dict = field(default_factory=dict)
    masses_sq: dict = field(default_factory=dict)
    conservation: bool = False
    default_zero: bool = False
    mu_ignored: bool = field(default=True, init=False)

    def resolve(self, g: Diagram):
        """Full assignment ``(dots, masses)`` with every pair and edge covered."""
        n = len(g.legs)
        dots = {}
        for j in range(n):
            for k in range(j, n):
                v = self.dot_products.get((j, k), self.dot_products.get((k, j)))
                if v is None:
                    v = Fraction(0) if self.default_zero else _dot_symbol(j, k, n)
                dots[(j, k)] = v
        masses = {}
        for i, e in enumerate(g.edges):
            v = self.masses_sq.get(e.id)
            if v is None:
                if self.default_zero:
                    v = Fraction(0)
                else:
                    v = f"{e.mass}sq" if e.mass else f"msq{i + 1}"
            masses[e.id] = v
        return dots, masses

    def symbols(self, g: Diagram) -> tuple[str, ...]:
        """Symbolic kinematic names in table order: dot products, then masses."""
        dots, masses = self.resolve(g)
        n = len(g.legs)
        out = []
        for (j, k), v in dots.items():
            if self.conservation and n and (j == n - 1 or k == n - 1):
                continue
            if isinstance(v, str) and v not in out:
                out.append(v)
        for v in masses.values():
            if isinstance(v, str) and v not in out:
                out.append(v)
        return tuple(out)

    @classmethod
    def from_json(cls, obj, g: Diagram, *, numeric=False, source=None) -> Kinematics:
        """Parse ``{"dot": {"p1,p2": v}, "mass_sq": {"e1": v}, "conservation": bool}``.

        Values are rationals (numbers or ``"p/q"`` strings) or symbol names.
        """
        if not isinstance(obj, dict):
            raise InputError("kinematics file must contain a JSON object", source=source)
        pos = {leg.momentum: i for i, leg in enumerate(g.legs)}
        dots = {}
        for key, value in (obj.get("dot") or {}).items():
            names = [s.strip() for s in str(key).split(",")]
            if len(names) != 2 or any(nm not in pos for nm in names):
                raise InputError(f"bad dot-product key {key!r}", source=source)
            j, k = sorted(pos[nm] for nm in names)
            dots[(j, k)] = _value(value, source)
        masses = {}
        ids = {e.id for e in g.edges}
        for key, value in (obj.get("mass_sq") or {}).items():
            if key not in ids:
                raise InputError(f"unknown edge {key!r} in mass_sq", source=source)
            masses[key] = _value(value, source)
        return cls(dots, masses, bool(obj.get("conservation", False)), numeric)


def _value(v, source):
    if isinstance(v, bool):
        raise InputError(f"bad kinematic value {v!r}", source=source)
    if isinstance(v, (int, float)):
        if isinstance(v, float) and not v.is_integer():
            raise InputError(f"use an exact rational string instead of {v!r}", source=source)
        return Fraction(int(v))
    if isinstance(v, str):
        s = v.strip()
        if s.isidentifier():
            return s
        try:
            return as_fraction(s)
        except InputError:
            raise InputError(f"bad kinematic value {v!r}", source=source) from None
    raise InputError(f"bad kinematic value {v!r}", source=source)


def load_kinematics(path, g: Diagram, *, numeric=False) -> Kinematics:
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", line=exc.lineno, source=path) from None
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", source=path) from None
    return Kinematics.from_json(obj, g, numeric=numeric, source=path)


def _edge_monomial(g: Diagram, kept, nvars: int) -> tuple[int, ...]:
    kept = set(kept)
    exp = [0] * nvars
    for i, e in enumerate(g.edges):
        if e.id not in kept:
            exp[i] = 1
    return tuple(exp)


def first_symanzik(g: Diagram) -> MultiPoly:
    """Sum over spanning trees of the product of the Schwinger parameters not in the tree."""
    vars = schwinger_vars(g)
    terms = {}
    for tree in spanning_trees(g):
        exp = _edge_monomial(g, tree, len(vars))
        terms[exp] = terms.get(exp, 0) + 1
    return MultiPoly(vars, terms)


def _leg_vector(g: Diagram, vertices, conservation: bool) -> list[int]:
    n = len(g.legs)
    a = [0] * n
    for i in g.legs_at(vertices):
        a[i] = 1
    if conservation and n:
        last = a[-1]
        a = [x - last for x in a[:-1]]
    return a


def second_symanzik(g: Diagram, k: Kinematics | None = None) -> MultiPoly:
    """Second Symanzik polynomial over ``a1..am`` followed by the kinematic symbols."""
    if g.n_vertices < 2:
        raise InputError("second Symanzik polynomial needs at least two vertices")
    k = k or Kinematics()
    dots, masses = k.resolve(g)
    vars = schwinger_vars(g) + k.symbols(g)
    m = g.n_edges

    def invariant(value) -> MultiPoly:
        if isinstance(value, str):
            return MultiPoly.variable(vars, value)
        return MultiPoly.constant(vars, value)

    def dot(j, kk):
        return invariant(dots[(min(j, kk), max(j, kk))])

    result = MultiPoly.zero(vars)
    for forest in spanning_2forests(g):
        a = _leg_vector(g, forest.parts[0], k.conservation)
        b = _leg_vector(g, forest.parts[1], k.conservation)
        weight = MultiPoly.zero(vars)
        for j, aj in enumerate(a):
            if not aj:
                continue
            for kk, bk in enumerate(b):
                if bk:
                    weight = weight - dot(j, kk) * (aj * bk)
        if weight.is_zero():
            continue
        mono = _edge_monomial(g, forest.edges, m) + (0,) * (len(vars) - m)
        result = result + weight * MultiPoly(vars, {mono: 1}, _trusted=True)

    mass_term = MultiPoly.zero(vars)
    for i, e in enumerate(g.edges):
        mass_term = mass_term + invariant(masses[e.id]) * MultiPoly.variable(vars, vars[i])
    if not mass_term.is_zero():
        result = result - first_symanzik(g).embed(vars) * mass_term
    return result


def graph_polynomial(g: Diagram, k: Kinematics | None = None) -> MultiPoly:
    """``U + F``; for a single-vertex graph ``F`` is zero and this is ``U``."""
    u = first_symanzik(g)
    if g.n_vertices < 2:
        k = k or Kinematics()
        dots, masses = k.resolve(g)
        vars = schwinger_vars(g) + k.symbols(g)
        u = u.embed(vars)
        mass_term = MultiPoly.zero(vars)
        for i, e in enumerate(g.edges):
            mv = masses[e.id]
            inv = MultiPoly.variable(vars, mv) if isinstance(mv, str) else MultiPoly.constant(vars, mv)
            mass_term = mass_term + inv * MultiPoly.variable(vars, vars[i])
        return u - u * mass_term
    f = second_symanzik(g, k)
    return u.embed(f.vars) + f


@dataclass(frozen=True)
class LPIntegrand:
    """Formal Lee-Pomeransky integrand ``N_nu * prod a_i^(nu_i-1) * G^(-D/2) da``."""

    graph_poly: MultiPoly
    nu: tuple
    dim_symbol: str | Fraction
    normalizer: str = "N_nu"
    notes: tuple[str, ...] = ()

    @property
    def exponent(self):
        if isinstance(self.dim_symbol, Fraction):
            return -self.dim_symbol / 2
        return f"-{self.dim_symbol}/2"

    @property
    def measure(self) -> str:
        return "^".join(f"d{v}" for v in self.graph_poly.vars if v.startswith("a"))

    def to_json(self) -> dict:
        fmt = lambda x: str(x) if not isinstance(x, Fraction) else (
            str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}")
        return {
            "graph_polynomial": str(self.graph_poly),
            "graph_polynomial_json": self.graph_poly.to_json(),
            "nu": [fmt(x) for x in self.nu],
            "D": fmt(self.dim_symbol),
            "exponent": fmt(self.exponent),
            "normalizer": self.normalizer,
            "measure": self.measure,
            "notes": list(self.notes),
        }


def lp_integrand(g: Diagram, k: Kinematics | None = None, nu=None, D="D") -> LPIntegrand:
    """Assemble (without evaluating) the Lee-Pomeransky integrand of ``g``."""
    if nu is None:
        nu = (Fraction(1),) * g.n_edges
    nu = tuple(_value(x, None) if not isinstance(x, Fraction) else x for x in nu)
    if len(nu) != g.n_edges:
        raise DimensionMismatchError(
            f"expected {g.n_edges} exponents (one per internal edge), got {len(nu)}"
        )
    D = _value(D, None) if not isinstance(D, Fraction) else D
    notes = []
    if cycle_count(g) <= 1:
        notes.append("integral representation displayed for loop number > 1 only")
    return LPIntegrand(graph_polynomial(g, k), nu, D, notes=tuple(notes))
