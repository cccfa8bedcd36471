"""Small connected multigraphs for exhaustive checks, plus a wavefunction oracle."""

from __future__ import annotations

from itertools import combinations_with_replacement, permutations

from posgeom.graphs import Diagram, Edge


def _canon(n, pairs):
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in pairs))
        if best is None or key < best:
            best = key
    return best


def _connected(n, pairs):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in pairs:
        parent[find(u)] = find(v)
    return len({find(i) for i in range(n)}) == 1


def multigraphs(max_size: int, loops: bool = True):
    """Connected multigraphs with ``|V| + |E| <= max_size`` up to isomorphism."""
    out = []
    for n in range(1, max_size + 1):
        slots = [(u, v) for u in range(n) for v in range(u, n) if loops or u != v]
        seen = set()
        for m in range(0, max_size - n + 1):
            for pairs in combinations_with_replacement(slots, m):
                if not _connected(n, pairs):
                    continue
                key = _canon(n, pairs)
                if key in seen:
                    continue
                seen.add(key)
                out.append(make(n, key))
    return out


def make(n, pairs) -> Diagram:
    vs = tuple(str(i + 1) for i in range(n))
    es = tuple(Edge(f"e{k + 1}", str(u + 1), str(v + 1)) for k, (u, v) in enumerate(pairs))
    return Diagram(vs, es)


def psi_recursion(g: Diagram, shifts=None, vars=None):
    """Wavefunction from the edge-deletion recursion, independent of any polytope.

    ``(sum_v X_v) psi_G = sum_e psi_{G - e}`` where deleting ``e`` adds ``Y_e``
    to the energy of each endpoint and a disconnected result factorizes.
    ``shifts`` maps each vertex to its energy as a MultiPoly over ``vars``.
    """
    from posgeom.cosmo import energy_coords
    from posgeom.poly import MultiPoly, RatFunc

    coords = energy_coords(g)
    if vars is None:
        vars = coords.vars
        shifts = {v: MultiPoly.variable(vars, x) for v, x in coords.vertex_vars.items()}
        ys = {e.id: MultiPoly.variable(vars, y) for e, y in zip(g.edges, coords.edge_vars.values())}
    else:
        ys = shifts["__edges__"]
    total_x = MultiPoly.zero(vars)
    for v in g.vertices:
        total_x = total_x + shifts[v]
    acc = RatFunc.constant(vars, 0)
    for e in g.edges:
        new = dict(shifts)
        new[e.u] = new[e.u] + ys[e.id]
        new[e.v] = new[e.v] + ys[e.id]
        term = RatFunc.constant(vars, 1)
        for part in g.delete_edge(e.id):
            sub = dict(new)
            sub["__edges__"] = ys
            term = term * psi_recursion(part, sub, vars)
        acc = acc + term
    if not g.edges:
        acc = RatFunc.constant(vars, 1)
    return acc / RatFunc.from_poly(total_x)


def psi_recursion_value(g: Diagram, x: dict, y: dict):
    """Numeric version of :func:`psi_recursion`; ``x`` by vertex id, ``y`` by edge id."""
    from fractions import Fraction

    if not g.edges:
        return 1 / Fraction(sum(x[v] for v in g.vertices))
    total = Fraction(0)
    for e in g.edges:
        shifted = dict(x)
        shifted[e.u] += y[e.id]
        shifted[e.v] += y[e.id]
        term = Fraction(1)
        for part in g.delete_edge(e.id):
            term *= psi_recursion_value(part, shifted, y)
        total += term
    return total / sum(x[v] for v in g.vertices)


def random_graphs(max_vertices=5, max_edges=8, loops=True, legs=0, min_vertices=1):
    """Hypothesis strategy for connected multigraphs (a random spanning tree plus extra edges)."""
    from hypothesis import strategies as st

    from posgeom.graphs import Leg

    @st.composite
    def build(draw):
        n = draw(st.integers(min_vertices, max_vertices))
        parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
        pairs = [(p, i) for i, p in enumerate(parents, start=1)]
        budget = max_edges - len(pairs)
        extra = draw(st.integers(0, max(budget, 0)))
        for _ in range(extra):
            u = draw(st.integers(0, n - 1))
            v = draw(st.integers(0, n - 1))
            if u == v and not loops:
                continue
            pairs.append((u, v))
        order = draw(st.permutations(range(len(pairs))))
        pairs = [pairs[k] for k in order]
        g = make(n, pairs)
        if legs:
            k = draw(st.integers(0, legs))
            at = [str(draw(st.integers(1, n))) for _ in range(k)]
            g = Diagram(g.vertices, g.edges, tuple(Leg(v, f"p{j + 1}") for j, v in enumerate(at)))
        return g

    return build()
