"""Feynman diagrams and their combinatorial substructures.

A :class:`Diagram` is a connected multigraph (parallel edges and self-loops
allowed) with optional external legs.  Edge orientation is recorded but never
used.  All enumerations are exhaustive and return results in a deterministic
order derived from the input order of vertices and edges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from .errors import InputError

__all__ = [
    "Edge",
    "Leg",
    "Diagram",
    "TwoForest",
    "SpanningForestSet",
    "ConnectedSubgraph",
    "cycle_count",
    "spanning_trees",
    "spanning_2forests",
    "spanning_forests",
    "connected_subgraphs",
    "diagram_from_json",
    "load_diagram",
    "chain",
    "cycle",
]


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    mass: str | None = None

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class Leg:
    vertex: str
    momentum: str


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class Diagram:
    """Connected multigraph with internal edges and external legs."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    legs: tuple[Leg, ...] = ()
    directed: bool = False
    _vindex: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "legs", tuple(self.legs))
        if not self.vertices:
            raise InputError("graph has no vertices")
        if len(set(self.vertices)) != len(self.vertices):
            dup = next(v for v in self.vertices if self.vertices.count(v) > 1)
            raise InputError(f"duplicate vertex id {dup!r}")
        index = {v: i for i, v in enumerate(self.vertices)}
        object.__setattr__(self, "_vindex", index)
        seen = set()
        for e in self.edges:
            if e.id in seen:
                raise InputError(f"duplicate edge id {e.id!r}")
            seen.add(e.id)
            for end in (e.u, e.v):
                if end not in index:
                    raise InputError(f"edge {e.id!r} uses unknown vertex {end!r}")
        moms = set()
        for leg in self.legs:
            if leg.vertex not in index:
                raise InputError(f"leg {leg.momentum!r} attached to unknown vertex {leg.vertex!r}")
            if leg.momentum in moms:
                raise InputError(f"duplicate momentum label {leg.momentum!r}")
            moms.add(leg.momentum)
        uf = _UnionFind(self.vertices)
        for e in self.edges:
            uf.union(e.u, e.v)
        if len({uf.find(v) for v in self.vertices}) != 1:
            raise InputError("graph not connected")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def vertex_index(self, v: str) -> int:
        return self._vindex[v]

    def edge(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(edge_id)

    def mass_symbol(self, position: int) -> str:
        e = self.edges[position]
        return e.mass if e.mass else f"m{position + 1}"

    def legs_at(self, vertices) -> list[int]:
        """Positions of the legs attached to any of ``vertices``."""
        vs = set(vertices)
        return [i for i, leg in enumerate(self.legs) if leg.vertex in vs]

    def delete_edge(self, edge_id: str) -> list[Diagram]:
        """Connected components of the graph with ``edge_id`` removed."""
        rest = [e for e in self.edges if e.id != edge_id]
        uf = _UnionFind(self.vertices)
        for e in rest:
            uf.union(e.u, e.v)
        groups = {}
        for v in self.vertices:
            groups.setdefault(uf.find(v), []).append(v)
        parts = []
        for vs in groups.values():
            vset = set(vs)
            parts.append(
                Diagram(
                    tuple(vs),
                    tuple(e for e in rest if e.u in vset),
                    tuple(leg for leg in self.legs if leg.vertex in vset),
                    self.directed,
                )
            )
        return parts

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [
                {"id": e.id, "u": e.u, "v": e.v, **({"mass": e.mass} if e.mass else {})}
                for e in self.edges
            ],
            "legs": [{"vertex": leg.vertex, "momentum": leg.momentum} for leg in self.legs],
        }


def diagram_from_json(obj, source=None) -> Diagram:
    """Build a diagram from the JSON graph schema (``vertices``/``edges``/``legs``)."""
    if not isinstance(obj, dict):
        raise InputError("graph file must contain a JSON object", source=source)
    try:
        vertices = [str(v) for v in obj["vertices"]]
        edges = []
        for i, e in enumerate(obj.get("edges", [])):
            if not isinstance(e, dict) or "u" not in e or "v" not in e:
                raise InputError(f"edge #{i + 1} needs 'u' and 'v'", source=source)
            edges.append(
                Edge(str(e.get("id", f"e{i + 1}")), str(e["u"]), str(e["v"]),
                     str(e["mass"]) if e.get("mass") is not None else None)
            )
        legs = []
        for i, leg in enumerate(obj.get("legs", [])):
            if not isinstance(leg, dict) or "vertex" not in leg:
                raise InputError(f"leg #{i + 1} needs 'vertex'", source=source)
            legs.append(Leg(str(leg["vertex"]), str(leg.get("momentum", f"p{i + 1}"))))
    except KeyError as exc:
        raise InputError(f"missing field {exc}", source=source) from None
    except TypeError as exc:
        raise InputError(f"malformed graph: {exc}", source=source) from None
    try:
        return Diagram(tuple(vertices), tuple(edges), tuple(legs), bool(obj.get("directed", False)))
    except InputError as exc:
        if source is not None and exc.source is None:
            raise InputError(str(exc), source=source) from None
        raise


def load_diagram(path) -> Diagram:
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", line=exc.lineno, source=path) from None
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", source=path) from None
    return diagram_from_json(obj, source=path)


def chain(n: int) -> Diagram:
    """Path graph on vertices ``1..n`` (the n-site chain)."""
    vs = tuple(str(i) for i in range(1, n + 1))
    es = tuple(Edge(f"e{i}", str(i), str(i + 1)) for i in range(1, n))
    return Diagram(vs, es)


def cycle(n: int) -> Diagram:
    """Cycle graph on vertices ``1..n``; ``n=3`` is the one-loop triangle."""
    vs = tuple(str(i) for i in range(1, n + 1))
    es = tuple(Edge(f"e{i}", str(i), str(i % n + 1)) for i in range(1, n + 1))
    return Diagram(vs, es)


# ---------------------------------------------------------------------------


def cycle_count(g: Diagram) -> int:
    """Loop number ``m - |V| + 1``."""
    return g.n_edges - g.n_vertices + 1


@dataclass(frozen=True)
class TwoForest:
    edges: tuple[str, ...]
    parts: tuple[tuple[str, ...], tuple[str, ...]]


@dataclass(frozen=True)
class SpanningForestSet:
    trees: tuple[tuple[str, ...], ...]
    two_forests: tuple[TwoForest, ...]


def _acyclic(g: Diagram, positions) -> _UnionFind | None:
    uf = _UnionFind(g.vertices)
    for p in positions:
        e = g.edges[p]
        if not uf.union(e.u, e.v):
            return None
    return uf


def spanning_trees(g: Diagram) -> tuple[tuple[str, ...], ...]:
    """All spanning trees as tuples of edge ids, lexicographic in edge positions."""
    k = g.n_vertices - 1
    out = []
    for combo in combinations(range(g.n_edges), k):
        if _acyclic(g, combo) is not None:
            out.append(tuple(g.edges[p].id for p in combo))
    return tuple(out)


def spanning_2forests(g: Diagram) -> tuple[TwoForest, ...]:
    """All spanning 2-forests with their vertex bipartitions.

    The first part always contains the first vertex of the diagram.
    """
    if g.n_vertices < 2:
        return ()
    k = g.n_vertices - 2
    out = []
    for combo in combinations(range(g.n_edges), k):
        uf = _acyclic(g, combo)
        if uf is None:
            continue
        root = uf.find(g.vertices[0])
        first = tuple(v for v in g.vertices if uf.find(v) == root)
        second = tuple(v for v in g.vertices if uf.find(v) != root)
        out.append(TwoForest(tuple(g.edges[p].id for p in combo), (first, second)))
    return tuple(out)


def spanning_forests(g: Diagram) -> SpanningForestSet:
    return SpanningForestSet(spanning_trees(g), spanning_2forests(g))


@dataclass(frozen=True)
class ConnectedSubgraph:
    sub_vertices: tuple[str, ...]
    sub_edges: tuple[str, ...]


def connected_subgraphs(g: Diagram) -> list[ConnectedSubgraph]:
    """All connected pairs ``(V_H, E_H)`` with ``E_H`` inside the edges induced on ``V_H``.

    Ordered by vertex subset (size, then position) and then edge subset.
    """
    if g.legs:
        raise InputError("connected subgraphs are only defined for graphs without external legs")
    out = []
    nv = g.n_vertices
    for size in range(1, nv + 1):
        for vcombo in combinations(range(nv), size):
            vs = tuple(g.vertices[i] for i in vcombo)
            vset = set(vs)
            induced = [p for p, e in enumerate(g.edges) if e.u in vset and e.v in vset]
            for esize in range(len(induced) + 1):
                if esize < size - 1:
                    continue
                for ecombo in combinations(induced, esize):
                    uf = _UnionFind(vs)
                    for p in ecombo:
                        uf.union(g.edges[p].u, g.edges[p].v)
                    if len({uf.find(v) for v in vs}) == 1:
                        out.append(ConnectedSubgraph(vs, tuple(g.edges[p].id for p in ecombo)))
    return out
