"""Cosmological polytopes of graphs and the flat-space wavefunction.

Each connected subgraph ``H = (V_H, E_H)`` of a graph without external legs
gives the linear form

    L_H = sum_{v in V_H} X_v + sum_{edges leaving V_H} Y_e + sum_{e not in E_H, inside V_H} 2 Y_e

and the cosmological polytope is the cone ``{L_H >= 0}``.  Its canonical
function, computed from a pulling triangulation, is the wavefunction up to
the constant ``2^|E|`` (a single simplex with these primitive forms has
``|det| = 2^|E|``); ``psi_flat`` divides that constant out so that the 2-site
chain gives exactly ``1/((X1+X2)(X1+Y12)(X2+Y12))``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import DegenerateConeError, DimensionMismatchError
from .graphs import Diagram, connected_subgraphs
from .poly import MultiPoly, RatFunc, format_fraction
from .polyhedral import (
    LinearFactored,
    PolyCone,
    cone_from_inequalities,
    default_chart,
    oriented_canonical_function,
    triangulate,
)

__all__ = [
    "EnergyCoords",
    "CanonicalForm",
    "CosmoIntegrand",
    "energy_coords",
    "facet_forms",
    "build_cone",
    "canonical_form",
    "adjoint_numerator",
    "shifted_wavefunction",
    "shifted_factored",
    "singular_forms",
    "cosmo_integrand",
]


@dataclass(frozen=True)
class EnergyCoords:
    """Vertex energies ``X1..Xn`` then edge energies ``Y{i}{j}``, in input order."""

    vertex_vars: dict
    edge_vars: dict

    @property
    def vars(self) -> tuple[str, ...]:
        return tuple(self.vertex_vars.values()) + tuple(self.edge_vars.values())

    @property
    def dim(self) -> int:
        return len(self.vertex_vars) + len(self.edge_vars)


def energy_coords(g: Diagram) -> EnergyCoords:
    """Name the energies by vertex positions; parallel edges get their id appended."""
    n = g.n_vertices
    sep = "_" if n >= 10 else ""
    xs = {v: f"X{i + 1}" for i, v in enumerate(g.vertices)}
    base = {}
    for e in g.edges:
        i, j = sorted((g.vertex_index(e.u) + 1, g.vertex_index(e.v) + 1))
        base[e.id] = f"Y{i}{sep}{j}"
    counts = {}
    for name in base.values():
        counts[name] = counts.get(name, 0) + 1
    ys = {}
    for e in g.edges:
        name = base[e.id]
        ys[e.id] = name if counts[name] == 1 else f"{name}_{e.id}"
    return EnergyCoords(xs, ys)


def _check_graph(g: Diagram):
    if g.legs:
        raise DegenerateConeError("cosmological polytopes need a graph without external legs")


def _facet_vectors(g: Diagram) -> dict[tuple[int, ...], list]:
    _check_graph(g)
    coords = energy_coords(g)
    vars = coords.vars
    col = {name: k for k, name in enumerate(vars)}
    out: dict[tuple[int, ...], list] = {}
    for h in connected_subgraphs(g):
        vset = set(h.sub_vertices)
        eset = set(h.sub_edges)
        a = [0] * len(vars)
        for v in h.sub_vertices:
            a[col[coords.vertex_vars[v]]] += 1
        for e in g.edges:
            inside = (e.u in vset) + (e.v in vset)
            k = col[coords.edge_vars[e.id]]
            if inside == 1:
                a[k] += 1
            elif inside == 2 and e.id not in eset:
                a[k] += 2
        out.setdefault(tuple(a), []).append(h)
    return out


def facet_forms(g: Diagram) -> list[tuple[MultiPoly, tuple]]:
    """Distinct facet forms with the connected subgraphs that produce them.

    Forms appear in order of their first source subgraph.
    """
    vars = energy_coords(g).vars
    return [(MultiPoly.linear(vars, a), tuple(hs)) for a, hs in _facet_vectors(g).items()]


def build_cone(g: Diagram) -> PolyCone:
    vecs = _facet_vectors(g)
    try:
        return cone_from_inequalities(energy_coords(g).vars, list(vecs), [tuple(h) for h in vecs.values()])
    except DegenerateConeError:
        raise DegenerateConeError("degenerate cosmological cone") from None


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical function of the cosmological polytope.

    ``factored`` is ``psi`` as a numerator over a product of facet forms and
    ``psi`` the same function as a reduced :class:`RatFunc` (expanded on first
    use).  Both multiply ``dX ^ dY`` in the order of ``vars``.  ``intrinsic``
    is the canonical function before dividing by ``2^|E|`` and
    ``orientation_sign`` the sign applied so that ``psi`` is positive at the
    all-ones point.
    """

    factored: LinearFactored
    orientation_sign: int
    chart: tuple
    normalization: int
    vars: tuple[str, ...]
    facets: tuple[MultiPoly, ...]
    n_simplices: int
    facet_vectors: tuple[tuple[int, ...], ...] = ()

    @cached_property
    def psi(self) -> RatFunc:
        return self.factored.expand()

    @property
    def intrinsic(self) -> LinearFactored:
        return self.factored.scale(self.orientation_sign * self.normalization)

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "psi": str(self.psi),
            "psi_factored": str(self.factored),
            "psi_json": self.psi.to_json(),
            "orientation_sign": self.orientation_sign,
            "chart": [format_fraction(Fraction(c)) for c in self.chart],
            "simplices": self.n_simplices,
        }


def canonical_form(g: Diagram, chart=None, order=None) -> CanonicalForm:
    cone = build_cone(g)
    chart = tuple(chart) if chart is not None else default_chart(cone)
    simplices = triangulate(cone, chart, order)
    norm = 2**g.n_edges
    factored, sign = oriented_canonical_function(
        cone, (1,) * cone.dim, Fraction(1, norm), chart, simplices=simplices
    )
    facets = tuple(cone.form_poly(i) for i in range(len(cone.facet_forms)))
    return CanonicalForm(factored, sign, chart, norm, cone.vars, facets, len(simplices),
                         cone.facet_forms)


def adjoint_numerator(g: Diagram, form: CanonicalForm | None = None) -> MultiPoly:
    """``P`` with ``psi_flat = P / prod_H L_H`` over the distinct facet forms."""
    form = form or canonical_form(g)
    missing = Counter()
    sign = 1
    for vec in form.facet_vectors:
        if next(x for x in vec if x) < 0:
            vec = tuple(-x for x in vec)
            sign = -sign
        missing[vec] += 1
    for vec, k in form.factored.den:
        if missing[vec] < k:
            raise ArithmeticError("facet product does not clear the denominator of psi")
        missing[vec] -= k
    p = form.factored.num * sign
    for vec, k in sorted(missing.items()):
        if k:
            p = p * MultiPoly.linear(form.vars, vec) ** k
    return p


def _alpha_vars(g: Diagram) -> tuple[str, ...]:
    return tuple(f"a{i}" for i in range(1, g.n_vertices + 1))


def shifted_wavefunction(g: Diagram, form: CanonicalForm | None = None) -> RatFunc:
    """``psi_flat`` with ``X_i -> X_i + a_i``; variables are ``a1..an`` then the energies."""
    form = form or canonical_form(g)
    alphas = _alpha_vars(g)
    vars = alphas + form.vars
    coords = energy_coords(g)
    bindings = {}
    for i, v in enumerate(g.vertices):
        x = coords.vertex_vars[v]
        bindings[x] = MultiPoly.variable(vars, x) + MultiPoly.variable(vars, alphas[i])
    psi = form.psi.embed(vars)
    # the shift is an invertible change of coordinates, so coprimality survives
    return RatFunc(psi.num.substitute(bindings), psi.den.substitute(bindings), coprime=True)


def shifted_factored(g: Diagram, form: CanonicalForm | None = None) -> LinearFactored:
    """:func:`shifted_wavefunction` kept as a numerator over shifted facet forms."""
    form = form or canonical_form(g)
    alphas = _alpha_vars(g)
    vars = alphas + form.vars
    n = g.n_vertices
    bindings = {
        form.vars[i]: MultiPoly.variable(vars, form.vars[i]) + MultiPoly.variable(vars, alphas[i])
        for i in range(n)
    }
    num = form.factored.num.substitute(bindings, vars)
    # X_i -> X_i + a_i copies the vertex part of every form onto the alphas
    den = tuple(sorted(((vec[:n] + vec, k) for vec, k in form.factored.den), reverse=True))
    return LinearFactored(num, den)


def singular_forms(g: Diagram, form: CanonicalForm | None = None) -> list[MultiPoly]:
    """Denominator factors of the shifted wavefunction, over ``a1..an`` then the energies.

    With the energies fixed these cut out the hyperplane arrangement in the
    ``a``-torus on which the cosmological integral lives.
    """
    return shifted_factored(g, form).forms()


@dataclass(frozen=True)
class CosmoIntegrand:
    """Formal integrand ``2^(n-1) prod Y * psi~ * prod a_i^eps_i`` over the positive orthant."""

    integrand: RatFunc
    eps: tuple
    prefactor: MultiPoly
    measure: str

    def to_json(self) -> dict:
        return {
            "integrand": str(self.integrand),
            "integrand_json": self.integrand.to_json(),
            "prefactor": str(self.prefactor),
            "eps": [format_fraction(e) if isinstance(e, Fraction) else str(e) for e in self.eps],
            "measure": self.measure,
        }


def cosmo_integrand(g: Diagram, eps, form: CanonicalForm | None = None) -> CosmoIntegrand:
    eps = tuple(eps)
    if len(eps) != g.n_vertices:
        raise DimensionMismatchError(f"expected {g.n_vertices} twist exponents (one per vertex), got {len(eps)}")
    shifted = shifted_wavefunction(g, form)
    vars = shifted.num.vars
    pre = MultiPoly.constant(vars, 2 ** (g.n_vertices - 1))
    for name in energy_coords(g).edge_vars.values():
        pre = pre * MultiPoly.variable(vars, name)
    measure = "^".join(f"d{a}" for a in _alpha_vars(g))
    # every facet form involves some X, so no Y divides the denominator
    integrand = RatFunc(shifted.num * pre, shifted.den, coprime=True)
    return CosmoIntegrand(integrand, eps, pre, measure)
