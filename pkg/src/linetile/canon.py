"""Canonical forms and isomorphisms for small multigraphs.

A plain individualisation-refinement search: equitable colour refinement,
branching on the first non-singleton cell, and pruning with automorphisms
discovered along the way (orbit pruning plus the usual jump back to the
common ancestor when a leaf reproduces a stored one).  The canonical form is
the lexicographically smallest relabelled edge multiset over all leaves.
"""

from __future__ import annotations

import hashlib
from collections import Counter

from .graph import Multigraph, components

EXACT_EDGE_LIMIT = 16


class _Search:
    def __init__(self, adj: list[dict[int, int]]):
        self.adj = adj
        self.n = len(adj)
        self.first = None
        self.best = None
        self.generators: list[list[int]] = []

    def refine(self, cells: list[list[int]]) -> list[list[int]]:
        adj = self.adj
        while True:
            cell_of = {}
            for i, c in enumerate(cells):
                for v in c:
                    cell_of[v] = i
            out = []
            changed = False
            for c in cells:
                if len(c) == 1:
                    out.append(c)
                    continue
                groups: dict[tuple, list[int]] = {}
                for v in c:
                    sig = tuple(sorted((cell_of[w], m) for w, m in adj[v].items()))
                    groups.setdefault(sig, []).append(v)
                if len(groups) > 1:
                    changed = True
                    for sig in sorted(groups):
                        out.append(groups[sig])
                else:
                    out.append(c)
            cells = out
            if not changed:
                return cells

    def certificate(self, order: list[int]) -> tuple:
        pos = {v: i for i, v in enumerate(order)}
        cert = []
        for v in range(self.n):
            for w, m in self.adj[v].items():
                if v < w:
                    a, b = pos[v], pos[w]
                    cert.append((a, b, m) if a < b else (b, a, m))
        cert.sort()
        return tuple(cert)

    def _orbit_blocked(self, path: list[int], explored: list[int], v: int) -> bool:
        if not explored:
            return False
        fixed = set(path)
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gen in self.generators:
            if all(gen[p] == p for p in fixed):
                for x in range(self.n):
                    a, b = find(x), find(gen[x])
                    if a != b:
                        parent[a] = b
        root = find(v)
        return any(find(u) == root for u in explored)

    def search(self, cells: list[list[int]], path: list[int]):
        level = len(path)
        if len(cells) == self.n:
            order = [c[0] for c in cells]
            cert = self.certificate(order)
            if self.first is None:
                self.first = self.best = (cert, order, path)
                return None
            for stored in (self.first, self.best):
                if cert == stored[0]:
                    gen = [0] * self.n
                    for a, b in zip(order, stored[1]):
                        gen[a] = b
                    self.generators.append(gen)
                    common = 0
                    for x, y in zip(path, stored[2]):
                        if x != y:
                            break
                        common += 1
                    return common
            if cert < self.best[0]:
                self.best = (cert, order, path)
            return None
        idx = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = cells[idx]
        explored: list[int] = []
        for v in sorted(target):
            if self._orbit_blocked(path, explored, v):
                continue
            explored.append(v)
            rest = [w for w in target if w != v]
            child = self.refine(cells[:idx] + [[v], rest] + cells[idx + 1:])
            jump = self.search(child, path + [v])
            if jump is not None and jump < level:
                return jump
        return None


def _adjacency(g: Multigraph) -> tuple[list[str], list[dict[int, int]]]:
    labels = list(g.vertices)
    index = {v: i for i, v in enumerate(labels)}
    adj: list[dict[int, int]] = [dict() for _ in labels]
    for _, (u, v) in g.edges():
        a, b = index[u], index[v]
        adj[a][b] = adj[a].get(b, 0) + 1
        adj[b][a] = adj[b].get(a, 0) + 1
    return labels, adj


def canonical_labeling(g: Multigraph) -> tuple[tuple, list[str]]:
    """Return ``(certificate, vertex order)``; isomorphic graphs share the certificate."""
    labels, adj = _adjacency(g)
    if not labels:
        return ((), 0), []
    s = _Search(adj)
    s.search(s.refine([list(range(len(labels)))]), [])
    cert, order, _ = s.best
    return (cert, len(labels)), [labels[i] for i in order]


def canonical_form(g: Multigraph) -> tuple:
    """Exact isomorphism invariant: equal iff the multigraphs are isomorphic."""
    isolated = sum(1 for v in g.vertices if g.degree(v) == 0)
    parts = sorted(canonical_labeling(c)[0] for c in components(g))
    return (isolated, tuple(parts))


def refinement_invariant(g: Multigraph) -> tuple:
    """Cheap invariant from colour refinement; isomorphic graphs always agree."""
    labels, adj = _adjacency(g)
    colors = [0] * len(labels)
    while True:
        sigs = [(colors[v], tuple(sorted((colors[w], m) for w, m in adj[v].items())))
                for v in range(len(labels))]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        stable = len(set(new)) == len(set(colors))
        colors = new
        if stable:
            break
    hist = Counter(
        (colors[v], tuple(sorted(Counter((colors[w], m) for w, m in adj[v].items()).items())))
        for v in range(len(labels))
    )
    return (len(labels), g.num_edges, tuple(sorted(hist.items())))


def canonical_key(g: Multigraph, exact_limit: int = EXACT_EDGE_LIMIT) -> tuple:
    """Memoisation key.

    Exact (equal iff isomorphic) up to ``exact_limit`` edges; above that a
    refinement invariant that never separates isomorphic graphs but may merge
    non-isomorphic ones.  The first component says which.
    """
    if g.num_edges <= exact_limit:
        return ("exact", canonical_form(g))
    return ("approx", refinement_invariant(g))


def is_exact(key: tuple) -> bool:
    return key[0] == "exact"


def key_digest(key: tuple) -> str:
    return key[0] + ":" + hashlib.sha256(repr(key).encode()).hexdigest()[:20]


def graph_digest(g: Multigraph) -> str:
    return key_digest(canonical_key(g))


def find_isomorphism(g: Multigraph, h: Multigraph) -> tuple[dict[str, str], dict[str, str]] | None:
    """Vertex and edge maps carrying ``g`` onto ``h``, or None.

    Works at any size.  The maps are checked edge by edge before returning.
    """
    if (g.num_vertices, g.num_edges) != (h.num_vertices, h.num_edges):
        return None
    cg, og = canonical_labeling(g)
    ch, oh = canonical_labeling(h)
    if cg != ch:
        return None
    vmap = dict(zip(og, oh))
    emap: dict[str, str] = {}
    for e, (u, v) in g.edges():
        if e in emap:
            continue
        src = sorted(g.edges_between(u, v))
        dst = sorted(h.edges_between(vmap[u], vmap[v]))
        if len(src) != len(dst):
            return None
        emap.update(zip(src, dst))
    if sorted(emap.values()) != sorted(h.edge_ids):
        return None
    for e, (u, v) in g.edges():
        if set(h.endpoints(emap[e])) != {vmap[u], vmap[v]}:
            return None
    return vmap, emap


def is_isomorphic(g: Multigraph, h: Multigraph) -> bool:
    return find_isomorphism(g, h) is not None
