"""Matching and independence complexes, stored with every face.

Faces are tuples of ground-set tokens sorted by ground order.  ``faces[d]``
holds the d-dimensional faces (cardinality d + 1) in lexicographic order of
ground positions; ``faces[-1]`` is always ``[()]``.
"""

from __future__ import annotations

import json
from itertools import combinations
from typing import Iterable, Sequence

from .graph import Multigraph

ENUMERATION_BUDGET = 24


class ComplexError(ValueError):
    pass


class SimplicialComplex:
    __slots__ = ("ground", "_pos", "faces", "_faceset")

    def __init__(self, ground: Sequence[str], faces: Iterable[Iterable[str]]):
        self.ground = tuple(ground)
        if len(set(self.ground)) != len(self.ground):
            raise ComplexError("duplicate ground element")
        self._pos = {v: i for i, v in enumerate(self.ground)}
        by_dim: dict[int, set[tuple[str, ...]]] = {-1: {()}}
        for f in faces:
            try:
                t = tuple(sorted(set(f), key=self._pos.__getitem__))
            except KeyError as exc:
                raise ComplexError(f"face uses unknown vertex {exc}") from None
            by_dim.setdefault(len(t) - 1, set()).add(t)
        top = max(by_dim)
        self.faces = {
            d: sorted(by_dim.get(d, ()), key=lambda f: [self._pos[v] for v in f])
            for d in range(-1, top + 1)
        }
        self._faceset = {f for fs in self.faces.values() for f in fs}

    @classmethod
    def from_facets(cls, ground: Sequence[str], facets: Iterable[Iterable[str]]) -> "SimplicialComplex":
        """Downward closure of ``facets``."""
        closed = set()
        pos = {v: i for i, v in enumerate(ground)}
        for f in facets:
            f = tuple(sorted(set(f), key=pos.__getitem__))
            if f in closed:
                continue
            for r in range(len(f) + 1):
                closed.update(combinations(f, r))
        return cls(ground, closed)

    @property
    def dim(self) -> int:
        return max(d for d, fs in self.faces.items() if fs)

    def num_faces(self) -> int:
        return len(self._faceset)

    def __contains__(self, face) -> bool:
        try:
            return tuple(sorted(set(face), key=self._pos.__getitem__)) in self._faceset
        except KeyError:
            return False

    def all_faces(self):
        for d in sorted(self.faces):
            yield from self.faces[d]

    def facets(self) -> list[tuple[str, ...]]:
        """Maximal faces, ordered by dimension then ground order."""
        out = []
        for d in sorted(self.faces):
            for f in self.faces[d]:
                if not any(set(f) < set(g) for g in self.faces.get(d + 1, ())):
                    out.append(f)
        return out

    def is_downward_closed(self) -> bool:
        for f in self._faceset:
            for i in range(len(f)):
                if f[:i] + f[i + 1:] not in self._faceset:
                    return False
        return True

    def face_sets(self) -> set[frozenset]:
        return {frozenset(f) for f in self._faceset}

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return set(self.ground) == set(other.ground) and self.face_sets() == other.face_sets()

    def __repr__(self):
        return f"SimplicialComplex(|V|={len(self.ground)}, dim={self.dim}, faces={self.num_faces()})"

    def to_dict(self) -> dict:
        return {"ground": list(self.ground), "facets": [list(f) for f in self.facets()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "SimplicialComplex":
        return cls.from_facets(d["ground"], d["facets"])


def _enumerate_cliquefree(ground: Sequence[str], conflicts: dict[str, set[str]], cap: int | None):
    """All subsets of ``ground`` with no conflicting pair (size <= cap)."""
    out = [()]
    n = len(ground)

    def extend(start, current, blocked):
        if cap is not None and len(current) >= cap:
            return
        for i in range(start, n):
            x = ground[i]
            if x in blocked:
                continue
            nxt = current + (x,)
            out.append(nxt)
            extend(i + 1, nxt, blocked | conflicts[x])

    extend(0, (), frozenset())
    return out


def matching_complex(g: Multigraph, size_cap: int | None = None) -> SimplicialComplex:
    """Complex on the edge ids of ``g`` whose faces are the matchings.

    Without ``size_cap`` the graph may have at most 24 edges.
    """
    if size_cap is None and g.num_edges > ENUMERATION_BUDGET:
        raise ComplexError(f"{g.num_edges} edges exceeds the enumeration budget of {ENUMERATION_BUDGET}")
    ground = g.edge_ids
    conflicts = {e: set() for e in ground}
    for v in g.vertices:
        inc = g.incident(v)
        for e in inc:
            conflicts[e].update(inc)
    for e in ground:
        conflicts[e].discard(e)
    return SimplicialComplex(ground, _enumerate_cliquefree(ground, conflicts, size_cap))


def independence_complex(g: Multigraph) -> SimplicialComplex:
    """Complex on the vertices of a simple graph whose faces are independent sets."""
    if not g.is_simple():
        raise ComplexError("independence complex needs a simple graph")
    if g.num_vertices > ENUMERATION_BUDGET:
        raise ComplexError(f"{g.num_vertices} vertices exceeds the enumeration budget")
    ground = g.vertices
    conflicts = {v: set() for v in ground}
    for _, (u, v) in g.edges():
        conflicts[u].add(v)
        conflicts[v].add(u)
    return SimplicialComplex(ground, _enumerate_cliquefree(ground, conflicts, None))


def _restricted(ground, faces):
    used = {v for f in faces for v in f}
    return [v for v in ground if v in used]


def link(K: SimplicialComplex, sigma) -> SimplicialComplex:
    """Faces disjoint from ``sigma`` whose union with it is a face."""
    if sigma not in K:
        raise ComplexError(f"{tuple(sigma)} is not a face")
    s = set(sigma)
    faces = [f for f in K.all_faces() if not s & set(f) and tuple(set(f) | s) in K]
    return SimplicialComplex(_restricted(K.ground, faces), faces)


def face_deletion(K: SimplicialComplex, sigma) -> SimplicialComplex:
    """Faces not containing ``sigma``."""
    if sigma not in K:
        raise ComplexError(f"{tuple(sigma)} is not a face")
    s = set(sigma)
    faces = [f for f in K.all_faces() if not s <= set(f)]
    return SimplicialComplex(_restricted(K.ground, faces), faces)


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join; the ground sets must be disjoint."""
    if set(K.ground) & set(L.ground):
        raise ComplexError("join needs disjoint ground sets")
    faces = [f + g for f in K.all_faces() for g in L.all_faces()]
    return SimplicialComplex(K.ground + L.ground, faces)


def f_vector(K: SimplicialComplex) -> list[int]:
    """Face counts starting from dimension -1."""
    return [len(K.faces[d]) for d in range(-1, K.dim + 1)]
