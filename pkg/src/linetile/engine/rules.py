"""Reduction rules for matching complexes, with their witnesses.

Each rule rewrites a multigraph into one or more smaller ones and says how
the children's homotopy types combine into the parent's.  Witnesses are
plain dicts of edge ids / vertex labels so they serialise directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .. import graph as G
from ..graph import Multigraph
from ..spheres import HomotopyClass, join, suspension, wedge


class RuleError(ValueError):
    pass


class Rule(str, Enum):
    # declaration order is the priority order used by the auto strategy
    BaseEdgeless = "BaseEdgeless"
    BaseSingleEdges = "BaseSingleEdges"
    SplitComponents = "SplitComponents"
    OpenDominate = "OpenDominate"
    PendantPath3 = "PendantPath3"
    ClosedDominate = "ClosedDominate"
    SimplicialEdge = "SimplicialEdge"
    ContractPath4 = "ContractPath4"
    ParallelEdge = "ParallelEdge"


class Combinator(str, Enum):
    Identity = "Identity"
    Wedge = "Wedge"
    SuspendThenWedge = "SuspendThenWedge"
    SuspendEach = "SuspendEach"
    Join = "Join"


BASE_RULES = (Rule.BaseEdgeless, Rule.BaseSingleEdges)


def _freeze(v):
    if isinstance(v, (list, tuple)):
        return tuple(_freeze(x) for x in v)
    return v


def _thaw(v):
    if isinstance(v, tuple):
        return [_thaw(x) for x in v]
    return v


@dataclass(frozen=True)
class RuleInstance:
    rule: Rule
    items: tuple = ()

    @classmethod
    def make(cls, rule: Rule, **witness) -> "RuleInstance":
        return cls(Rule(rule), tuple(sorted((k, _freeze(v)) for k, v in witness.items())))

    @property
    def witness(self) -> dict:
        return {k: _thaw(v) for k, v in self.items}

    def __getitem__(self, key):
        return dict(self.items)[key]

    def to_dict(self) -> dict:
        return {"rule": self.rule.value, "witness": self.witness}

    @classmethod
    def from_dict(cls, d: dict) -> "RuleInstance":
        try:
            return cls.make(Rule(d["rule"]), **d.get("witness", {}))
        except (KeyError, ValueError, TypeError) as exc:
            raise RuleError(f"malformed rule instance: {exc}") from None

    def __str__(self):
        w = ", ".join(f"{k}={_thaw(v)}" for k, v in self.items)
        return f"{self.rule.value}({w})"


# -- enumeration -------------------------------------------------------


class _Nbhd:
    """Open neighbourhoods of every edge, computed once per graph."""

    def __init__(self, g: Multigraph):
        self.g = g
        self.open = {e: G.edge_neighborhood(g, e) for e in g.edge_ids}
        self.closed = {e: s | {e} for e, s in self.open.items()}


def _single_edge_components(g: Multigraph) -> bool:
    return g.num_edges > 0 and all(g.degree(v) <= 1 for v in g.vertices)


def _iter_base(g, nb):
    if g.num_edges == 0:
        yield RuleInstance.make(Rule.BaseEdgeless)
    elif _single_edge_components(g):
        yield RuleInstance.make(Rule.BaseSingleEdges)


def _iter_split(g, nb):
    comps = G.components(g)
    if len(comps) >= 2:
        yield RuleInstance.make(Rule.SplitComponents, components=[list(c.edge_ids) for c in comps])


def _iter_open(g, nb):
    ids = g.edge_ids
    for h in ids:
        nh = nb.open[h]
        for e in ids:
            if e != h and nb.open[e] <= nh:
                yield RuleInstance.make(Rule.OpenDominate, e=e, h=h)


def _iter_closed(g, nb):
    ids = g.edge_ids
    for h in ids:
        nh = nb.closed[h]
        for e in sorted(nh):
            if e != h and nb.closed[e] <= nh:
                yield RuleInstance.make(Rule.ClosedDominate, e=e, h=h)


def _single(g, a, b) -> bool:
    return len(g.edges_between(a, b)) == 1


def _other_neighbor(g, v, prev):
    """The neighbour of a degree-2 vertex ``v`` that is not ``prev``."""
    ends = [w for e in g.incident(v) for w in g.endpoints(e) if w != v]
    ends.remove(prev)
    return ends[0]


def _pendant_paths(g):
    out = []
    for p3 in g.vertices:
        if g.degree(p3) != 1:
            continue
        (p2,) = [w for w in g.endpoints(g.incident(p3)[0]) if w != p3]
        if g.degree(p2) != 2 or not _single(g, p2, p3):
            continue
        p1 = _other_neighbor(g, p2, p3)
        if g.degree(p1) != 2 or not _single(g, p1, p2):
            continue
        p0 = _other_neighbor(g, p1, p2)
        if len({p0, p1, p2, p3}) != 4 or not _single(g, p0, p1):
            continue
        out.append([p0, p1, p2, p3])
    return sorted(out)


def _iter_pendant(g, nb):
    for p in _pendant_paths(g):
        yield RuleInstance.make(Rule.PendantPath3, path=p)


def _iter_simplicial(g, nb):
    for e in g.edge_ids:
        if G.is_simplicial_edge(g, e):
            yield RuleInstance.make(Rule.SimplicialEdge, e=e)


def _contractible_paths(g):
    found = set()
    for x2 in g.vertices:
        if g.degree(x2) != 2:
            continue
        ends = sorted(w for e in g.incident(x2) for w in g.endpoints(e) if w != x2)
        if len(set(ends)) != 2:
            continue
        x1, x3 = ends
        if g.degree(x1) != 2 or g.degree(x3) != 2:
            continue
        x0 = _other_neighbor(g, x1, x2)
        x4 = _other_neighbor(g, x3, x2)
        path = [x0, x1, x2, x3, x4]
        if len(set(path)) != 5:
            continue
        if not all(_single(g, a, b) for a, b in zip(path, path[1:])):
            continue
        found.add(tuple(min(path, path[::-1])))
    return [list(p) for p in sorted(found)]


def _iter_contract(g, nb):
    for p in _contractible_paths(g):
        if not g.has_edge(G.contracted_edge_id(p)):
            yield RuleInstance.make(Rule.ContractPath4, path=p)


def _iter_parallel(g, nb):
    for e, (u, v) in g.edges():
        for x in sorted(g.edges_between(u, v)):
            if x != e:
                yield RuleInstance.make(Rule.ParallelEdge, e=e, x=x)


_ITERATORS = {
    Rule.BaseEdgeless: None,
    Rule.BaseSingleEdges: None,
    Rule.SplitComponents: _iter_split,
    Rule.OpenDominate: _iter_open,
    Rule.PendantPath3: _iter_pendant,
    Rule.ClosedDominate: _iter_closed,
    Rule.SimplicialEdge: _iter_simplicial,
    Rule.ContractPath4: _iter_contract,
    Rule.ParallelEdge: _iter_parallel,
}


def iter_rules(g: Multigraph):
    """Every rule instance on ``g``, in priority order.

    Within a rule, domination instances are ordered by (h, e), the others
    by their witness.
    """
    nb = _Nbhd(g)
    yield from _iter_base(g, nb)
    if g.num_edges == 0:
        return
    for rule in Rule:
        it = _ITERATORS[rule]
        if it is not None:
            yield from it(g, nb)


def applicable_rules(g: Multigraph) -> list[RuleInstance]:
    return list(iter_rules(g))


def first_rule(g: Multigraph) -> RuleInstance | None:
    return next(iter_rules(g), None)


# -- checking and applying ---------------------------------------------


def check_witness(g: Multigraph, r: RuleInstance) -> str | None:
    """None when the witness is valid on ``g``, otherwise the reason."""
    w = r.witness
    try:
        rule = r.rule
        if rule is Rule.BaseEdgeless:
            return None if g.num_edges == 0 else "graph has edges"
        if rule is Rule.BaseSingleEdges:
            return None if _single_edge_components(g) else "not a disjoint union of single edges"
        if rule is Rule.SplitComponents:
            comps = [list(c.edge_ids) for c in G.components(g)]
            if len(comps) < 2:
                return "graph is connected"
            return None if comps == w["components"] else "component list does not match"
        if rule is Rule.OpenDominate:
            e, h = w["e"], w["h"]
            if e == h:
                return "e and h coincide"
            ok = G.edge_neighborhood(g, e) <= G.edge_neighborhood(g, h)
            return None if ok else "EN(e) not contained in EN(h)"
        if rule is Rule.ClosedDominate:
            e, h = w["e"], w["h"]
            if e == h:
                return "e and h coincide"
            ok = G.edge_neighborhood(g, e, closed=True) <= G.edge_neighborhood(g, h, closed=True)
            return None if ok else "EN[e] not contained in EN[h]"
        if rule is Rule.SimplicialEdge:
            return None if G.is_simplicial_edge(g, w["e"]) else "edge is not simplicial"
        if rule is Rule.PendantPath3:
            return None if w["path"] in _pendant_paths(g) else "not a pendant path of length 3"
        if rule is Rule.ContractPath4:
            p = w["path"]
            if min(p, p[::-1]) not in _contractible_paths(g):
                return "not a contractible path of length 4"
            return "fresh edge id in use" if g.has_edge(G.contracted_edge_id(p)) else None
        if rule is Rule.ParallelEdge:
            e, x = w["e"], w["x"]
            if e == x:
                return "e and x coincide"
            return None if set(g.endpoints(e)) == set(g.endpoints(x)) else "edges are not parallel"
    except G.GraphError as exc:
        return str(exc)
    except (KeyError, TypeError) as exc:
        return f"malformed witness: {exc}"
    return f"unknown rule {r.rule}"


def apply_rule(g: Multigraph, r: RuleInstance) -> tuple[list[Multigraph], Combinator | None, list[int]]:
    """Children, combinator and per-child suspension shifts.

    Base rules have no children and no combinator; see :func:`base_value`.
    """
    reason = check_witness(g, r)
    if reason is not None:
        raise RuleError(f"stale witness for {r}: {reason}")
    w = r.witness
    rule = r.rule
    if rule in BASE_RULES:
        return [], None, []
    if rule is Rule.SplitComponents:
        comps = G.components(g)
        return comps, Combinator.Join, [0] * len(comps)
    if rule is Rule.OpenDominate:
        return [G.delete_edges(g, [w["h"]])], Combinator.Identity, [0]
    if rule is Rule.ClosedDominate:
        h = w["h"]
        return [G.delete_edges(g, [h]), G.delete_closed_neighborhood(g, h)], Combinator.Wedge, [0, 1]
    if rule is Rule.SimplicialEdge:
        nbrs = sorted(G.edge_neighborhood(g, w["e"]))
        kids = [G.delete_closed_neighborhood(g, f) for f in nbrs]
        return kids, Combinator.SuspendEach, [1] * len(kids)
    if rule is Rule.PendantPath3:
        p = w["path"]
        path_edges = [g.edges_between(a, b)[0] for a, b in zip(p, p[1:])]
        return [G.delete_edges(g, path_edges)], Combinator.SuspendThenWedge, [1]
    if rule is Rule.ContractPath4:
        return [G.contract_path(g, w["path"])], Combinator.SuspendThenWedge, [1]
    if rule is Rule.ParallelEdge:
        return [G.delete_edges(g, [w["x"]]), G.delete_closed_neighborhood(g, w["e"])], Combinator.Wedge, [0, 1]
    raise RuleError(f"unknown rule {rule}")


def base_value(r: RuleInstance) -> HomotopyClass:
    if r.rule is Rule.BaseEdgeless:
        return HomotopyClass.empty()
    if r.rule is Rule.BaseSingleEdges:
        return HomotopyClass.contractible()
    raise RuleError(f"{r.rule} is not a base rule")


def combine(combinator: Combinator, shifts: list[int], values: list[HomotopyClass]) -> HomotopyClass:
    if len(shifts) != len(values):
        raise RuleError("shift list does not match children")
    lifted = [suspension(v, k) for v, k in zip(values, shifts)]
    if combinator is Combinator.Join:
        return join(*lifted)
    if combinator is Combinator.Identity and len(lifted) != 1:
        raise RuleError("identity combinator needs exactly one child")
    return wedge(*lifted)


def combine_profiles(combinator: Combinator, shifts: list[int], profiles):
    """Homology shadow of :func:`combine`: Betti addition or graded convolution."""
    from ..homology import join_profiles, suspend_profile, wedge_profiles

    lifted = [suspend_profile(p, k) for p, k in zip(profiles, shifts)]
    if combinator is Combinator.Join:
        return join_profiles(*lifted)
    return wedge_profiles(*lifted)
