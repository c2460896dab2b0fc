"""Replaying reduction certificates.

Verification never trusts a recorded child graph or value: every witness is
re-checked on its node's graph, the rule is re-applied, and the resulting
children must equal the recorded ones exactly before they are descended
into.  Reference nodes are accepted only for exact canonical keys that were
verified earlier in the same depth-first pass.
"""

from __future__ import annotations

import json
from collections import Counter

from ..canon import canonical_key, is_exact, key_digest
from ..graph import GraphError, Multigraph
from ..spheres import HomotopyClass, SphereError
from .rules import BASE_RULES, Combinator, RuleError, RuleInstance, apply_rule, base_value, combine

CertificateTrace = dict


class CertificateError(ValueError):
    pass


class _Verifier:
    def __init__(self):
        self.seen: dict[str, HomotopyClass] = {}

    def run(self, node: dict, expected_graph: Multigraph | None) -> HomotopyClass:
        try:
            g = Multigraph.from_dict(node["graph"])
        except (KeyError, GraphError) as exc:
            raise CertificateError(f"bad graph record: {exc}") from None
        if expected_graph is not None and g != expected_graph:
            raise CertificateError("recorded child graph differs from the rule's output")
        key = canonical_key(g)
        digest = key_digest(key)
        if node.get("graph_key") != digest:
            raise CertificateError("graph_key does not match the graph")
        claimed = HomotopyClass.from_dict(node["result"])

        if "ref" in node:
            if not is_exact(key) or node["ref"] != digest:
                raise CertificateError("reference to an inexact or mismatched key")
            if digest not in self.seen:
                raise CertificateError("reference to a subtree not yet verified")
            if self.seen[digest] != claimed:
                raise CertificateError("reference result disagrees with its target")
            return claimed

        inst = RuleInstance.from_dict(node)
        children, comb, shifts = apply_rule(g, inst)
        if inst.rule in BASE_RULES:
            if node.get("children"):
                raise CertificateError("base node with children")
            value = base_value(inst)
        else:
            if node.get("combinator") != comb.value:
                raise CertificateError(f"combinator {node.get('combinator')} should be {comb.value}")
            if list(node.get("shifts", [])) != shifts:
                raise CertificateError("suspension shifts do not match the rule")
            kids = node.get("children", [])
            if len(kids) != len(children):
                raise CertificateError("wrong number of children")
            vals = [self.run(k, c) for k, c in zip(kids, children)]
            value = combine(Combinator(node["combinator"]), list(node["shifts"]), vals)
        if value != claimed:
            raise CertificateError(f"node claims {claimed} but replays to {value}")
        if is_exact(key):
            self.seen.setdefault(digest, value)
        return value


def check_certificate(cert: dict) -> HomotopyClass:
    """Replay ``cert``; return the root class or raise CertificateError."""
    try:
        return _Verifier().run(cert, None)
    except (RuleError, SphereError, GraphError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CertificateError):
            raise
        raise CertificateError(str(exc)) from None


def verify_certificate(cert: dict) -> bool:
    try:
        check_certificate(cert)
    except CertificateError:
        return False
    return True


def iter_nodes(cert: dict):
    yield cert
    for c in cert.get("children", []):
        yield from iter_nodes(c)


def rule_histogram(cert: dict) -> dict[str, int]:
    return dict(sorted(Counter(n.get("rule", "ref") for n in iter_nodes(cert)).items()))


def to_json(cert: dict, indent: int | None = None) -> str:
    return json.dumps(cert, sort_keys=True, indent=indent)


def from_json(text: str) -> dict:
    return json.loads(text)
