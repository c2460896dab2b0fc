"""Depth-first reduction of a multigraph to a homotopy class, with a certificate.

Certificate nodes are nested dicts::

    {"graph": {...}, "graph_key": "exact:...", "rule": "ClosedDominate",
     "witness": {"e": ..., "h": ...}, "combinator": "Wedge", "shifts": [0, 1],
     "children": [...], "result": {"contractible": false, "spheres": {...}}}

Base nodes have ``combinator`` null and no children.  When a graph with an
exact canonical key was already reduced earlier in the same run, the node
is a reference ``{"ref": <graph_key>, "graph": ..., "graph_key": ...,
"result": ...}`` pointing back at that earlier subtree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..canon import canonical_key, is_exact, key_digest
from ..graph import Multigraph
from ..spheres import HomotopyClass
from .rules import BASE_RULES, RuleInstance, apply_rule, base_value, combine, first_rule

DEFAULT_BUDGET = 200_000
STRATEGIES = ("auto", "scripted_triangle", "scripted_pentagon", "scripted_extended")


@dataclass
class Reduction:
    value: HomotopyClass
    certificate: dict
    nodes: int = 0

    @property
    def ok(self) -> bool:
        return True


@dataclass
class Partial:
    """The reduction stopped: no rule applied, or the budget ran out."""

    graph: Multigraph
    reason: str
    nodes: int = 0
    value: None = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return False

    def to_dict(self) -> dict:
        return {"partial": True, "reason": self.reason, "graph": self.graph.to_dict(), "nodes": self.nodes}


class Stuck(Exception):
    def __init__(self, graph: Multigraph, reason: str):
        super().__init__(reason)
        self.graph = graph
        self.reason = reason


Solver = Callable[[int, Multigraph], tuple[dict, HomotopyClass]]


class Engine:
    def __init__(self, budget: int = DEFAULT_BUDGET):
        self.budget = budget
        self.nodes = 0
        self.memo: dict[tuple, tuple[str, HomotopyClass]] = {}

    def _tick(self, g):
        self.nodes += 1
        if self.nodes > self.budget:
            raise Stuck(g, f"budget of {self.budget} nodes exhausted")

    def cached(self, g: Multigraph, produce: Callable[[str], tuple[dict, HomotopyClass]]):
        """Memo lookup around ``produce``; only exact keys are stored."""
        key = canonical_key(g)
        digest = key_digest(key)
        if is_exact(key) and key in self.memo:
            _, value = self.memo[key]
            return {"ref": digest, "graph": g.to_dict(), "graph_key": digest, "result": value.to_dict()}, value
        node, value = produce(digest)
        if is_exact(key):
            self.memo.setdefault(key, (digest, value))
        return node, value

    def expand(self, g: Multigraph, inst: RuleInstance, digest: str, solve_child: Solver):
        self._tick(g)
        children, comb, shifts = apply_rule(g, inst)
        if inst.rule in BASE_RULES:
            value = base_value(inst)
            kids = []
        else:
            kids, vals = [], []
            for i, c in enumerate(children):
                n, v = solve_child(i, c)
                kids.append(n)
                vals.append(v)
            value = combine(comb, shifts, vals)
        node = {
            "graph": g.to_dict(),
            "graph_key": digest,
            "rule": inst.rule.value,
            "witness": inst.witness,
            "combinator": comb.value if comb is not None else None,
            "shifts": shifts,
            "children": kids,
            "result": value.to_dict(),
        }
        return node, value

    def auto(self, g: Multigraph):
        def produce(digest):
            inst = first_rule(g)
            if inst is None:
                raise Stuck(g, "no rule applies")
            return self.expand(g, inst, digest, lambda i, c: self.auto(c))

        return self.cached(g, produce)


def reduce(
    g: Multigraph,
    strategy: str = "auto",
    budget: int = DEFAULT_BUDGET,
    layout=None,
) -> Reduction | Partial:
    """Reduce ``g`` to a homotopy class.

    ``layout`` is only used by ``scripted_extended`` (an ExtendedLayout or a
    descriptor); without it the layout is read off the vertex labels.
    """
    from . import scripted

    eng = Engine(budget)
    try:
        if strategy == "auto":
            node, value = eng.auto(g)
        elif strategy == "scripted_triangle":
            node, value = scripted.triangle(eng, g)
        elif strategy == "scripted_pentagon":
            node, value = scripted.pentagon(eng, g)
        elif strategy == "scripted_extended":
            node, value = scripted.extended(eng, g, layout)
        else:
            raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    except Stuck as s:
        return Partial(s.graph, s.reason, eng.nodes)
    return Reduction(value, node, eng.nodes)
