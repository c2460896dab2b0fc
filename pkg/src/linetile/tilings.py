"""Generators for the line-tiling graph families.

Vertex labels follow the a_i / b_i naming of the tilings (``"a0"``, ``"b3"``),
pendant paths use ``t1..tk`` and ``u1..ul``, and the inner vertices of the
i-th cycle of an extended tiling are ``c{i}_{j}``.  Edge ids of simple graphs
are the sorted concatenation of their endpoint labels, e.g. ``"a1b0"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .graph import GraphError, Multigraph, build, edge_id, from_edge_list


def triangular(t: int) -> Multigraph:
    """Regular triangular line tiling with ``t`` triangles (t = 0 is one edge)."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    pairs = []
    pairs += [(f"a{i}", f"a{i + 1}") for i in range((t - 1) // 2 + 1)]
    pairs += [(f"b{i}", f"b{i + 1}") for i in range((t - 2) // 2 + 1)]
    pairs += [(f"a{i + 1}", f"b{i}") for i in range((t - 1) // 2 + 1)]
    pairs += [(f"a{i}", f"b{i}") for i in range(t // 2 + 1)]
    return from_edge_list(pairs)


def pentagonal(t: int) -> Multigraph:
    """Regular pentagonal line tiling with ``t`` pentagons."""
    if t < 1:
        raise ValueError("t must be at least 1")
    pairs = []
    pairs += [(f"a{i}", f"a{i + 1}") for i in range((3 * t - 1) // 2 + 1)]
    pairs += [(f"b{i}", f"b{i + 1}") for i in range((3 * t - 2) // 2 + 1)]
    pairs += [(f"a{3 * j}", f"b{3 * j}") for j in range(t // 2 + 1)]
    pairs += [(f"a{3 * j + 2}", f"b{3 * j + 1}") for j in range((t - 1) // 2 + 1)]
    return from_edge_list(pairs)


PENDANT_VERTEX = "z"


def pentagonal_pendant(t: int) -> Multigraph:
    """Pentagonal tiling with a pendant edge hung on b0.

    With this placement the pendant edge ``u = b0z`` has neighbours
    ``v = a0b0`` and ``w = b0b1``.
    """
    g = pentagonal(t)
    edges = dict(g.edges())
    edges[edge_id("b0", PENDANT_VERTEX)] = ("b0", PENDANT_VERTEX)
    return Multigraph(set(g.vertices) | {PENDANT_VERTEX}, edges)


def pendant_roles(t: int) -> dict[str, str]:
    """Edge ids playing u, v, w in :func:`pentagonal_pendant`."""
    return {"u": edge_id("b0", PENDANT_VERTEX), "v": "a0b0", "w": "b0b1"}


def path(n: int) -> Multigraph:
    """Path on ``n`` vertices ``v0 .. v{n-1}``."""
    if n < 1:
        raise ValueError("a path needs at least one vertex")
    verts = [f"v{i}" for i in range(n)]
    return build(verts, [(edge_id(verts[i], verts[i + 1]), verts[i], verts[i + 1]) for i in range(n - 1)])


def cycle(n: int) -> Multigraph:
    """Cycle on ``n`` vertices; ``n = 2`` gives a pair of parallel edges."""
    if n < 2:
        raise ValueError("a cycle needs at least two vertices")
    if n == 2:
        return build(["v0", "v1"], [("v0v1", "v0", "v1"), ("v0v1'", "v0", "v1")])
    verts = [f"v{i}" for i in range(n)]
    recs = [(edge_id(verts[i], verts[(i + 1) % n]), verts[i], verts[(i + 1) % n]) for i in range(n)]
    return build(verts, recs)


# -- extended tilings ----------------------------------------------------


def default_offset(s: int) -> int:
    return s // 2


def valid_offsets(s: int) -> range:
    """Positions j of the outgoing edge (p_j, p_{j+1}) in an s-cycle p_0 .. p_{s-1}.

    The incoming edge is (p_0, p_1); the outgoing edge has to avoid both of
    its endpoints.
    """
    return range(2, s - 1)


@dataclass(frozen=True)
class ExtendedLayout:
    """Where everything sits in a generated extended tiling."""

    graph: Multigraph
    cycles: tuple[tuple[str, ...], ...]
    tail_a: tuple[str, ...]
    tail_b: tuple[str, ...]


def extended_layout(s_list, k: int = 0, l: int = 0, glue_offsets=None) -> ExtendedLayout:
    s_list = list(s_list)
    n = len(s_list)
    if n < 1:
        raise ValueError("need at least one cycle")
    if any(s < 4 for s in s_list):
        raise ValueError("every cycle needs length at least 4")
    if k < 0 or l < 0:
        raise ValueError("pendant path lengths must be nonnegative")
    if glue_offsets is None:
        glue_offsets = [default_offset(s) for s in s_list[1:]]
    glue_offsets = list(glue_offsets)
    if len(glue_offsets) != n - 1:
        raise ValueError(f"expected {n - 1} offsets, got {len(glue_offsets)}")

    cycles = []
    first = ["a0", "b0"] + [f"c1_{j}" for j in range(2, s_list[0])]
    # the outgoing edge of cycle 1 (or the a_n b_n edge when n = 1) sits opposite a0b0
    j1 = default_offset(s_list[0])
    first[j1], first[j1 + 1] = "b1", "a1"
    cycles.append(first)
    for i in range(2, n + 1):
        s = s_list[i - 1]
        j = glue_offsets[i - 2]
        if j not in valid_offsets(s):
            raise ValueError(f"offset {j} invalid for a {s}-cycle (cycle {i})")
        cyc = [f"a{i - 1}", f"b{i - 1}"] + [f"c{i}_{m}" for m in range(2, s)]
        cyc[j], cyc[j + 1] = f"b{i}", f"a{i}"
        cycles.append(cyc)

    pairs = set()
    for cyc in cycles:
        for x, y in zip(cyc, cyc[1:] + cyc[:1]):
            pairs.add((x, y) if x < y else (y, x))
    tail_a = [f"a{n}"] + [f"t{i}" for i in range(1, k + 1)]
    tail_b = [f"b{n}"] + [f"u{i}" for i in range(1, l + 1)]
    for tail in (tail_a, tail_b):
        for x, y in zip(tail, tail[1:]):
            pairs.add((x, y) if x < y else (y, x))
    g = from_edge_list(sorted(pairs))
    return ExtendedLayout(g, tuple(tuple(c) for c in cycles), tuple(tail_a), tuple(tail_b))


def extended(s_list, k: int = 0, l: int = 0, glue_offsets=None) -> Multigraph:
    """Extended polygonal line tiling.

    ``glue_offsets[i]`` places the outgoing edge of cycle ``i + 2`` (for the
    last cycle, the edge carrying the pendant paths) relative to its incoming
    edge; see :func:`valid_offsets`.  Defaults put it opposite.
    """
    return extended_layout(s_list, k, l, glue_offsets).graph


# -- specs -------------------------------------------------------------

FAMILIES = ("triangular", "pentagonal", "pentagonal_pendant", "extended", "path", "cycle")


@dataclass(frozen=True)
class TilingSpec:
    family: str
    t: int | None = None
    s_list: tuple[int, ...] = ()
    k: int = 0
    l: int = 0
    glue_offsets: tuple[int, ...] | None = None
    n: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family in ("triangular", "pentagonal", "pentagonal_pendant") and self.t is None:
            raise ValueError(f"family {self.family} needs t")
        if self.family in ("path", "cycle") and self.n is None:
            raise ValueError(f"family {self.family} needs n")
        if self.family == "extended" and not self.s_list:
            raise ValueError("extended family needs s_list")

    def build(self) -> Multigraph:
        if self.family == "triangular":
            return triangular(self.t)
        if self.family == "pentagonal":
            return pentagonal(self.t)
        if self.family == "pentagonal_pendant":
            return pentagonal_pendant(self.t)
        if self.family == "extended":
            return extended(self.s_list, self.k, self.l, self.glue_offsets)
        if self.family == "path":
            return path(self.n)
        return cycle(self.n)

    def to_dict(self) -> dict:
        d = {"family": self.family}
        if self.family == "extended":
            d.update(s=list(self.s_list), k=self.k, l=self.l)
            if self.glue_offsets is not None:
                d["offsets"] = list(self.glue_offsets)
        elif self.family in ("path", "cycle"):
            d["n"] = self.n
        else:
            d["t"] = self.t
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "TilingSpec":
        try:
            fam = d["family"]
        except KeyError:
            raise ValueError("spec needs a family") from None
        offsets = d.get("offsets", d.get("glue_offsets"))
        return cls(
            family=fam,
            t=d.get("t"),
            s_list=tuple(d.get("s", d.get("s_list", ()))),
            k=d.get("k", 0),
            l=d.get("l", 0),
            glue_offsets=None if offsets is None else tuple(offsets),
            n=d.get("n"),
        )

    @classmethod
    def from_json(cls, text: str) -> "TilingSpec":
        return cls.from_dict(json.loads(text))

    def describe(self) -> str:
        if self.family == "extended":
            s = ",".join(map(str, self.s_list))
            off = "" if self.glue_offsets is None else f" offsets={list(self.glue_offsets)}"
            return f"extended s={s} k={self.k} l={self.l}{off}"
        if self.family in ("path", "cycle"):
            return f"{self.family}({self.n})"
        return f"{self.family}({self.t})"


__all__ = [
    "GraphError",
    "TilingSpec",
    "cycle",
    "extended",
    "extended_layout",
    "path",
    "pentagonal",
    "pentagonal_pendant",
    "triangular",
]
