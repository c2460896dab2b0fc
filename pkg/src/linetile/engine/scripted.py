"""Scripted strategies that follow the family-specific proofs step by step.

Each strategy picks its rule instances from the known structure of the
family instead of the auto order.  Recognition is by explicit isomorphism
with the standard generator (so relabelled inputs work), and whenever a
piece falls outside the scripted cases (small bases, plain paths and
cycles) it is handed to the auto strategy inside the same certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import graph as G
from ..canon import find_isomorphism
from ..graph import Multigraph
from ..tilings import ExtendedLayout, pendant_roles, pentagonal, pentagonal_pendant, triangular
from .reduce import Engine, Stuck
from .rules import Rule, RuleInstance


def _edge(g: Multigraph, u: str, v: str) -> str:
    es = g.edges_between(u, v)
    if len(es) != 1:
        raise Stuck(g, f"expected a single edge {u}-{v}")
    return es[0]


def _vmap(model: Multigraph, g: Multigraph) -> dict[str, str] | None:
    iso = find_isomorphism(model, g)
    return None if iso is None else iso[0]


# -- triangular tilings ------------------------------------------------


def _tri_index(g: Multigraph) -> int | None:
    if g.num_edges % 2 == 0:
        return None
    t = (g.num_edges - 1) // 2
    return t if _vmap(triangular(t), g) is not None else None


def _triangle(eng: Engine, g: Multigraph, t: int):
    if t <= 4:
        return eng.auto(g)

    def produce(digest):
        phi = _vmap(triangular(t), g)
        if phi is None:
            raise Stuck(g, f"graph is not a triangular tiling with {t} triangles")
        a = lambda i: phi[f"a{i}"]
        b = lambda i: phi[f"b{i}"]

        def after_open(i, g1):
            h = _edge(g1, a(1), b(0))
            inst = RuleInstance.make(Rule.ClosedDominate, e=_edge(g1, a(0), b(0)), h=h)
            return eng.cached(g1, lambda d: eng.expand(g1, inst, d, after_closed))

        def after_closed(i, child):
            if i == 1:
                return _triangle(eng, child, t - 3)
            path = [a(2), a(1), a(0), b(0), b(1)]
            inst = RuleInstance.make(Rule.ContractPath4, path=path)
            return eng.cached(child, lambda d: eng.expand(child, inst, d, after_contract))

        def after_contract(i, g4):
            fresh = G.contracted_edge_id([a(2), a(1), a(0), b(0), b(1)])
            orig = [e for e in g4.edges_between(a(2), b(1)) if e != fresh][0]
            inst = RuleInstance.make(Rule.ParallelEdge, e=orig, x=fresh)
            return eng.cached(g4, lambda d: eng.expand(g4, inst, d, after_parallel))

        def after_parallel(i, child):
            return _triangle(eng, child, t - 3 if i == 0 else t - 5)

        inst = RuleInstance.make(Rule.OpenDominate, e=_edge(g, a(0), b(0)), h=_edge(g, a(1), b(1)))
        return eng.expand(g, inst, digest, after_open)

    return eng.cached(g, produce)


def triangle(eng: Engine, g: Multigraph):
    t = _tri_index(g)
    if t is None:
        raise Stuck(g, "not a triangular line tiling")
    return _triangle(eng, g, t)


# -- pentagonal tilings ------------------------------------------------


def _pentagon(eng: Engine, g: Multigraph, t: int):
    """G_t: contract the first path, then split off the duplicated rung."""
    if t <= 1:
        return eng.auto(g)

    def produce(digest):
        phi = _vmap(pentagonal(t), g)
        if phi is None:
            raise Stuck(g, f"graph is not a pentagonal tiling with {t} pentagons")
        path = [phi["a2"], phi["a1"], phi["a0"], phi["b0"], phi["b1"]]
        fresh = G.contracted_edge_id(path)

        def after_contract(i, g1):
            orig = [e for e in g1.edges_between(path[0], path[4]) if e != fresh][0]
            inst = RuleInstance.make(Rule.ParallelEdge, e=orig, x=fresh)
            return eng.cached(g1, lambda d: eng.expand(g1, inst, d, after_parallel))

        def after_parallel(i, child):
            if i == 0:
                return _pentagon(eng, child, t - 1)
            return _pendant(eng, child, t - 2)

        inst = RuleInstance.make(Rule.ContractPath4, path=path)
        return eng.expand(g, inst, digest, after_contract)

    return eng.cached(g, produce)


def _pendant(eng: Engine, g: Multigraph, t: int):
    """H_t: the pendant edge is simplicial; the w-branch sheds a 3-path."""
    if t <= 1:
        return eng.auto(g)

    def produce(digest):
        phi = _vmap(pentagonal_pendant(t), g)
        if phi is None:
            raise Stuck(g, f"graph is not a pendant pentagonal tiling with {t} pentagons")
        roles = pendant_roles(t)
        model = pentagonal_pendant(t)
        u, v, w = (_edge(g, *(phi[x] for x in model.endpoints(roles[r]))) for r in "uvw")
        order = sorted([v, w])

        def after_simplicial(i, child):
            if order[i] == v:
                return _pendant(eng, child, t - 1)
            if t == 2:
                return eng.auto(child)
            p = [phi["a3"], phi["a2"], phi["a1"], phi["a0"]]
            inst = RuleInstance.make(Rule.PendantPath3, path=p)
            return eng.cached(child, lambda d: eng.expand(child, inst, d, lambda j, c: _pendant(eng, c, t - 2)))

        inst = RuleInstance.make(Rule.SimplicialEdge, e=u)
        return eng.expand(g, inst, digest, after_simplicial)

    return eng.cached(g, produce)


def pentagon(eng: Engine, g: Multigraph):
    if (g.num_edges - 1) % 4 == 0:
        t = (g.num_edges - 1) // 4
        if t >= 1 and _vmap(pentagonal(t), g) is not None:
            return _pentagon(eng, g, t)
    if g.num_edges % 4 == 2:
        t = (g.num_edges - 2) // 4
        if t >= 1 and _vmap(pentagonal_pendant(t), g) is not None:
            return _pendant(eng, g, t)
    raise Stuck(g, "not a pentagonal line tiling (with or without pendant edge)")


# -- extended tilings --------------------------------------------------


@dataclass(frozen=True)
class Shape:
    """Cycles of a string of polygons plus the roots of the two tails.

    ``cycles[i][0], cycles[i][1]`` is the edge shared with the previous
    cycle (for the first cycle, just some edge).  ``roots`` is the edge of
    the last cycle that the tails hang from.
    """

    cycles: tuple[tuple[str, ...], ...]
    roots: tuple[str, str]


def _tail(g: Multigraph, root: str, inside: set[str]) -> list[str] | None:
    path = [root]
    prev = None
    cur = root
    while True:
        nxt = [w for e in g.incident(cur) for w in g.endpoints(e) if w != cur and w not in inside and w != prev]
        if cur != root and g.degree(cur) > 2:
            return None
        if not nxt:
            return path
        if len(nxt) > 1 or nxt[0] in path:
            return None
        prev, cur = cur, nxt[0]
        path.append(cur)


def _recognize(g: Multigraph, shape: Shape):
    """Tails of ``g`` for this shape, or None if ``g`` does not fit it."""
    if not shape.cycles:
        return None
    inside = {v for c in shape.cycles for v in c}
    if not inside <= set(g.vertices):
        return None
    pairs = set()
    for c in shape.cycles:
        for x, y in zip(c, c[1:] + c[:1]):
            if len(g.edges_between(x, y)) != 1:
                return None
            pairs.add(frozenset((x, y)))
    ra, rb = shape.roots
    last = shape.cycles[-1]
    if ra not in last or rb not in last or frozenset((ra, rb)) not in pairs:
        return None
    ta, tb = _tail(g, ra, inside), _tail(g, rb, inside)
    if ta is None or tb is None or set(ta[1:]) & set(tb[1:]):
        return None
    if g.num_edges != len(pairs) + len(ta) - 1 + len(tb) - 1:
        return None
    return ta, tb


def _drop_last(shape: Shape) -> Shape:
    prev = shape.cycles[-1]
    return Shape(shape.cycles[:-1], (prev[0], prev[1]))


def _replace_last(shape: Shape, cyc, roots=None) -> Shape:
    return Shape(shape.cycles[:-1] + (tuple(cyc),), roots or shape.roots)


def _merge_into_previous(shape: Shape, inner: list[str]) -> Shape:
    """Splice ``inner`` (running from b_{n-1} side to a_{n-1} side) into cycle n-1."""
    last = shape.cycles[-1]
    a, b = last[0], last[1]
    prev = list(shape.cycles[-2])
    i, j = prev.index(a), prev.index(b)
    n = len(prev)
    if (i - j) % n == 1:  # ... b, a ...
        new = prev[: j + 1] + inner + prev[j + 1:]
    else:  # ... a, b ...
        new = prev[: i + 1] + inner[::-1] + prev[i + 1:]
    cycles = shape.cycles[:-2] + (tuple(new),)
    # cycle n-1's own roots are those of the edge it shares with cycle n-2; any
    # edge avoiding them will do when no tails remain
    roots = (inner[0], inner[1]) if len(inner) >= 2 else (inner[0], b)
    return Shape(cycles, roots)


def _extended(eng: Engine, g: Multigraph, shape: Shape | None):
    if shape is None:
        return eng.auto(g)
    comps = G.components(g)
    if len(comps) >= 2:
        inst = RuleInstance.make(Rule.SplitComponents, components=[list(c.edge_ids) for c in comps])
        return eng.cached(g, lambda d: eng.expand(g, inst, d, lambda i, c: _extended(eng, c, shape)))
    tails = _recognize(g, shape)
    if tails is None:
        return eng.auto(g)
    ta, tb = tails
    if len(ta) < len(tb):
        ta, tb = tb, ta
        shape = Shape(shape.cycles, shape.roots[::-1])
    k, l = len(ta) - 1, len(tb) - 1
    n = len(shape.cycles)
    if n == 1 and k == 0:
        return eng.auto(g)

    def go(inst, child_shapes):
        return eng.cached(
            g, lambda d: eng.expand(g, inst, d, lambda i, c: _extended(eng, c, child_shapes[i]))
        )

    if k >= 3:
        e, h = _edge(g, ta[k - 1], ta[k]), _edge(g, ta[k - 2], ta[k - 1])
        return go(RuleInstance.make(Rule.ClosedDominate, e=e, h=h), [shape, shape])
    if k == 2:
        e, h = _edge(g, ta[1], ta[2]), _edge(g, ta[0], ta[1])
        return go(RuleInstance.make(Rule.ClosedDominate, e=e, h=h), [shape, _drop_last(shape) if n > 1 else None])
    if k == 1:
        e, h = _edge(g, ta[0], ta[1]), _edge(g, *shape.roots)
        nxt = _drop_last(shape) if n > 1 else None
        return go(RuleInstance.make(Rule.ClosedDominate, e=e, h=h), [nxt, nxt])

    # k = l = 0 and n >= 2: work on the last cycle through its shared edge
    last = list(shape.cycles[-1])
    s = len(last)
    a_prev, b_prev = last[0], last[1]
    if s == 4:
        e, h = _edge(g, last[2], last[3]), _edge(g, a_prev, b_prev)
        merged = _merge_into_previous(shape, last[2:])
        return go(RuleInstance.make(Rule.OpenDominate, e=e, h=h), [merged])

    path = ([b_prev] + last[2:] + [a_prev])[:5]
    fresh = G.contracted_edge_id(path)
    shrunk = [a_prev, b_prev] + last[5:]
    contract = RuleInstance.make(Rule.ContractPath4, path=path)

    if s >= 7:
        roots = (shrunk[2], shrunk[3])
        return go(contract, [_replace_last(shape, shrunk, roots)])

    def after_contract(i, h1):
        orig = _edge(h1, a_prev, b_prev) if s == 6 else [x for x in h1.edges_between(a_prev, b_prev) if x != fresh][0]
        beyond = _drop_last(_drop_last(shape)) if n > 2 else None
        if s == 5:
            inst = RuleInstance.make(Rule.ParallelEdge, e=orig, x=fresh)
            kids = [_drop_last(shape), beyond]
        else:
            inst = RuleInstance.make(Rule.ClosedDominate, e=fresh, h=orig)
            kids = [_merge_into_previous(shape, [last[5]]), beyond]
        return eng.cached(h1, lambda d: eng.expand(h1, inst, d, lambda j, c: _extended(eng, c, kids[j])))

    return eng.cached(g, lambda d: eng.expand(g, contract, d, after_contract))


def shape_from_labels(g: Multigraph) -> Shape | None:
    """Read the cycle structure off the generator's vertex labels."""
    vs = set(g.vertices)
    n = 0
    while f"a{n + 1}" in vs and f"b{n + 1}" in vs:
        n += 1
    if n == 0:
        return None
    cycles = []
    for i in range(1, n + 1):
        members = {f"a{i - 1}", f"b{i - 1}", f"a{i}", f"b{i}"} | {v for v in vs if v.startswith(f"c{i}_")}
        cyc = [f"a{i - 1}", f"b{i - 1}"]
        while True:
            cur = cyc[-1]
            nxt = sorted(
                w for e in g.incident(cur) for w in g.endpoints(e)
                if w in members and w != cur and w not in cyc
            )
            if not nxt:
                break
            cyc.append(nxt[0])
        if len(cyc) != len(members):
            return None
        cycles.append(tuple(cyc))
    return Shape(tuple(cycles), (f"a{n}", f"b{n}"))


def shape_of_layout(layout: ExtendedLayout) -> Shape:
    return Shape(layout.cycles, (layout.tail_a[0], layout.tail_b[0]))


def extended(eng: Engine, g: Multigraph, layout=None):
    if isinstance(layout, ExtendedLayout):
        shape = shape_of_layout(layout)
    elif isinstance(layout, Shape):
        shape = layout
    else:
        shape = shape_from_labels(g)
    if shape is None or _recognize(g, shape) is None:
        raise Stuck(g, "not an extended polygonal line tiling")
    return _extended(eng, g, shape)
