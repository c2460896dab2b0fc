"""Labeled multigraphs and the edge operations the reduction rules are built from.

Vertices and edge ids are strings.  Parallel edges are allowed (they carry
distinct ids), self-loops are not.  Graphs are immutable; every operation
returns a new graph.
"""

from __future__ import annotations

import json
from collections import defaultdict
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Raised for malformed graphs and unknown edge ids."""


class Multigraph:
    __slots__ = ("_vertices", "_edges", "_incident", "_hash")

    def __init__(self, vertices: Iterable[str], edges: Mapping[str, tuple[str, str]]):
        vs = set(vertices)
        incident: dict[str, list[str]] = {v: [] for v in vs}
        norm: dict[str, tuple[str, str]] = {}
        for eid in sorted(edges):
            u, v = edges[eid]
            if u == v:
                raise GraphError(f"self-loop {eid!r} at {u!r}")
            for w in (u, v):
                if w not in vs:
                    raise GraphError(f"edge {eid!r} has dangling endpoint {w!r}")
            pair = (u, v) if u <= v else (v, u)
            norm[eid] = pair
            incident[u].append(eid)
            incident[v].append(eid)
        self._vertices = tuple(sorted(vs))
        self._edges = norm
        self._incident = {v: tuple(es) for v, es in incident.items()}
        self._hash = None

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(self._edges)

    def endpoints(self, e: str) -> tuple[str, str]:
        try:
            return self._edges[e]
        except KeyError:
            raise GraphError(f"unknown edge id {e!r}") from None

    def edges(self):
        """Iterate ``(edge_id, (u, v))`` in id order."""
        return iter(self._edges.items())

    def incident(self, v: str) -> tuple[str, ...]:
        return self._incident[v]

    def degree(self, v: str) -> int:
        return len(self._incident[v])

    def has_edge(self, e: str) -> bool:
        return e in self._edges

    def edges_between(self, u: str, v: str) -> list[str]:
        return [e for e in self._incident.get(u, ()) if v in self._edges[e]]

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def is_simple(self) -> bool:
        return len(set(self._edges.values())) == len(self._edges)

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._vertices, tuple(self._edges.items())))
        return self._hash

    def __repr__(self):
        es = ", ".join(f"{e}:{u}-{v}" for e, (u, v) in self._edges.items())
        return f"Multigraph(V={list(self._vertices)}, E=[{es}])"

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": list(self._vertices),
            "edges": [{"id": e, "u": u, "v": v} for e, (u, v) in self._edges.items()],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping) -> "Multigraph":
        try:
            vertices = [str(v) for v in data["vertices"]]
            records = [(str(r["id"]), str(r["u"]), str(r["v"])) for r in data["edges"]]
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph record: {exc}") from None
        return build(vertices, records)

    @classmethod
    def from_json(cls, text: str) -> "Multigraph":
        return cls.from_dict(json.loads(text))


def build(vertices: Iterable[str], edge_records: Iterable[tuple[str, str, str]]) -> Multigraph:
    """Construct a graph from vertex labels and ``(id, u, v)`` records.

    Raises GraphError on duplicate ids, dangling endpoints or self-loops.
    """
    vertices = list(vertices)
    if len(set(vertices)) != len(vertices):
        raise GraphError("duplicate vertex label")
    edges: dict[str, tuple[str, str]] = {}
    for eid, u, v in edge_records:
        if eid in edges:
            raise GraphError(f"duplicate edge id {eid!r}")
        edges[eid] = (u, v)
    return Multigraph(set(vertices), edges)


def edge_id(u: str, v: str) -> str:
    """Conventional id for the edge uv of a simple graph: sorted concatenation."""
    return u + v if u <= v else v + u


def from_edge_list(pairs: Iterable[tuple[str, str]]) -> Multigraph:
    """Simple graph from endpoint pairs; ids follow :func:`edge_id`."""
    pairs = list(pairs)
    verts = {w for p in pairs for w in p}
    return build(verts, [(edge_id(u, v), u, v) for u, v in pairs])


# -- neighbourhoods ------------------------------------------------------


def _check(g: Multigraph, e: str) -> tuple[str, str]:
    return g.endpoints(e)


def edge_neighborhood(g: Multigraph, e: str, closed: bool = False) -> frozenset[str]:
    """Edges sharing at least one endpoint with ``e``.

    Parallel copies of ``e`` are neighbours.  With ``closed`` the edge itself
    is included.
    """
    u, v = _check(g, e)
    out = set(g.incident(u)) | set(g.incident(v))
    if not closed:
        out.discard(e)
    return frozenset(out)


def adjacent(g: Multigraph, e: str, f: str) -> bool:
    """True when distinct edges ``e`` and ``f`` share an endpoint."""
    if e == f:
        return False
    return bool(set(_check(g, e)) & set(_check(g, f)))


def is_simplicial_edge(g: Multigraph, e: str) -> bool:
    nb = sorted(edge_neighborhood(g, e))
    for i, f in enumerate(nb):
        for h in nb[i + 1:]:
            if not adjacent(g, f, h):
                return False
    return True


# -- deletion and contraction -------------------------------------------


def delete_edges(g: Multigraph, s: Iterable[str], drop_isolated: bool = True) -> Multigraph:
    s = set(s)
    for e in sorted(s):
        _check(g, e)
    kept = {e: uv for e, uv in g.edges() if e not in s}
    if drop_isolated:
        verts = {w for uv in kept.values() for w in uv}
    else:
        verts = set(g.vertices)
    return Multigraph(verts, kept)


def delete_closed_neighborhood(g: Multigraph, e: str) -> Multigraph:
    return delete_edges(g, edge_neighborhood(g, e, closed=True), drop_isolated=True)


def drop_isolated(g: Multigraph) -> Multigraph:
    return delete_edges(g, (), drop_isolated=True)


def contract_path(g: Multigraph, path: list[str] | tuple[str, ...]) -> Multigraph:
    """Replace a 4-edge path whose three inner vertices have degree two by one edge.

    The new edge joins the two (distinct) end vertices and gets a fresh id
    built from the path's vertex labels, so repeated contractions stay
    unambiguous in certificates.  Parallel edges may appear.
    """
    path = list(path)
    if len(path) != 5:
        raise GraphError(f"contraction needs 5 vertices, got {len(path)}")
    if len(set(path)) != 5:
        raise GraphError("contraction path repeats a vertex")
    for w in path:
        if w not in g._incident:
            raise GraphError(f"unknown vertex {w!r}")
    for w in path[1:4]:
        if g.degree(w) != 2:
            raise GraphError(f"inner vertex {w!r} has degree {g.degree(w)}, expected 2")
    removed = []
    for a, b in zip(path, path[1:]):
        between = g.edges_between(a, b)
        if len(between) != 1:
            raise GraphError(f"{a!r}-{b!r} is not a path edge")
        removed.append(between[0])
    fresh = contracted_edge_id(path)
    if g.has_edge(fresh):
        raise GraphError(f"fresh edge id {fresh!r} already in use")
    kept = {e: uv for e, uv in g.edges() if e not in removed}
    kept[fresh] = (path[0], path[4])
    verts = set(g.vertices) - set(path[1:4])
    return Multigraph(verts, kept)


def contracted_edge_id(path) -> str:
    return "(" + ".".join(path) + ")"


# -- derived graphs ------------------------------------------------------


def line_graph(g: Multigraph) -> Multigraph:
    """Simple graph on the edge ids of ``g``; parallel edges become adjacent."""
    by_vertex = defaultdict(list)
    for e, (u, v) in g.edges():
        by_vertex[u].append(e)
        by_vertex[v].append(e)
    pairs = set()
    for es in by_vertex.values():
        for i, e in enumerate(es):
            for f in es[i + 1:]:
                pairs.add((e, f) if e < f else (f, e))
    return Multigraph(set(g.edge_ids), {f"{e}~{f}": (e, f) for e, f in sorted(pairs)})


def components(g: Multigraph) -> list[Multigraph]:
    """Connected components with at least one edge.

    Ordered by decreasing edge count, then by smallest edge id.
    """
    seen: set[str] = set()
    parts = []
    for start in g.vertices:
        if start in seen or g.degree(start) == 0:
            continue
        stack = [start]
        seen.add(start)
        comp = []
        while stack:
            w = stack.pop()
            comp.append(w)
            for e in g.incident(w):
                for x in g.endpoints(e):
                    if x not in seen:
                        seen.add(x)
                        stack.append(x)
        cs = set(comp)
        parts.append(Multigraph(cs, {e: uv for e, uv in g.edges() if uv[0] in cs}))
    parts.sort(key=lambda h: (-h.num_edges, h.edge_ids[0]))
    return parts


def disjoint_union(g: Multigraph, h: Multigraph) -> Multigraph:
    if set(g.vertices) & set(h.vertices) or set(g.edge_ids) & set(h.edge_ids):
        raise GraphError("disjoint union needs disjoint labels")
    return Multigraph(set(g.vertices) | set(h.vertices), {**dict(g.edges()), **dict(h.edges())})


def relabel(g: Multigraph, vmap: Mapping[str, str], emap: Mapping[str, str] | None = None) -> Multigraph:
    emap = emap or {}
    return Multigraph(
        {vmap.get(v, v) for v in g.vertices},
        {emap.get(e, e): (vmap.get(u, u), vmap.get(v, v)) for e, (u, v) in g.edges()},
    )


def add_edge(g: Multigraph, eid: str, u: str, v: str) -> Multigraph:
    if g.has_edge(eid):
        raise GraphError(f"duplicate edge id {eid!r}")
    edges = dict(g.edges())
    edges[eid] = (u, v)
    return Multigraph(set(g.vertices) | {u, v}, edges)
