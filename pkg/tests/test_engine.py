import copy
import itertools
import json

import pytest

from linetile.complex import matching_complex
from linetile.engine import Partial, reduce, verify_certificate
from linetile.engine.certificate import CertificateError, check_certificate, iter_nodes, rule_histogram
from linetile.formulas import pendant_pentagon_homotopy, pentagon_homotopy, triangle_homotopy
from linetile.graph import build, relabel
from linetile.homology import reduced_homology, wedge_profile
from linetile.spheres import HomotopyClass
from linetile.tilings import cycle, extended, extended_layout, path, pentagonal, pentagonal_pendant, triangular


def test_small_examples(oracle):
    assert reduce(cycle(6)).value == wedge_profile_from(oracle["betti_M_C6"])
    assert str(reduce(triangular(4)).value) == "5*S^1"
    assert str(reduce(pentagonal(2), "scripted_pentagon").value) == "2*S^2"
    assert reduce(build([], [])).value == HomotopyClass.empty()


def wedge_profile_from(betti):
    return HomotopyClass.from_counts(betti)


def test_paths_and_cycles_match_oracle(oracle):
    for n in range(2, 15):
        assert reduce(path(n)).value == wedge_profile_from(oracle["betti_path"][n])
        assert reduce(cycle(n)).value == wedge_profile_from(oracle["betti_cycle"][n])


def test_triangle_auto_matches_formula():
    for t in range(1, 13):
        r = reduce(triangular(t))
        assert r.value == triangle_homotopy(t)
        assert verify_certificate(r.certificate)


def test_scripted_triangle_uses_the_proof_steps():
    r = reduce(triangular(7), "scripted_triangle")
    assert str(r.value) == "12*S^2"
    assert verify_certificate(r.certificate)
    root = r.certificate
    assert root["rule"] == "OpenDominate" and root["witness"] == {"e": "a0b0", "h": "a1b1"}
    child = root["children"][0]
    assert child["rule"] == "ClosedDominate" and child["witness"] == {"e": "a0b0", "h": "a1b0"}
    assert child["children"][0]["rule"] == "ContractPath4"
    assert child["children"][0]["children"][0]["rule"] == "ParallelEdge"


def test_scripted_pentagon():
    for t in range(1, 9):
        r = reduce(pentagonal(t), "scripted_pentagon")
        assert r.value == pentagon_homotopy(t) and verify_certificate(r.certificate)
        r = reduce(pentagonal_pendant(t), "scripted_pentagon")
        assert r.value == pendant_pentagon_homotopy(t) and verify_certificate(r.certificate)
    r = reduce(pentagonal_pendant(5), "scripted_pentagon")
    assert r.certificate["rule"] == "SimplicialEdge"


def test_scripted_strategies_reject_other_families():
    assert isinstance(reduce(cycle(7), "scripted_triangle"), Partial)
    assert isinstance(reduce(triangular(5), "scripted_pentagon"), Partial)
    assert isinstance(reduce(triangular(5), "scripted_extended"), Partial)


def test_scripted_on_relabelled_input():
    g = triangular(9)
    h = relabel(g, {v: "q" + v for v in g.vertices}, {e: "E" + e for e in g.edge_ids})
    r = reduce(h, "scripted_triangle")
    assert r.value == triangle_homotopy(9) and verify_certificate(r.certificate)


def test_scripted_extended_follows_cases():
    lay = extended_layout([4, 6, 4, 6], 2, 1, [3, 2, 4])
    r = reduce(lay.graph, "scripted_extended", layout=lay)
    assert r.ok and verify_certificate(r.certificate)
    assert r.certificate["rule"] == "ClosedDominate"
    assert r.value == reduce(lay.graph).value
    hist = rule_histogram(r.certificate)
    assert hist.get("ContractPath4", 0) >= 1


def test_scripted_extended_agrees_with_auto():
    for n in (1, 2):
        for s in itertools.product([4, 5, 6, 7], repeat=n):
            for k, l in [(0, 0), (1, 0), (2, 2), (3, 1)]:
                g = extended(list(s), k, l)
                a, b = reduce(g), reduce(g, "scripted_extended")
                assert a.value == b.value
                assert verify_certificate(b.certificate)


def test_budget_gives_partial():
    r = reduce(triangular(10), budget=3)
    assert isinstance(r, Partial)
    assert "budget" in r.reason


def test_stuck_graph_gives_partial():
    # Petersen graph: no domination, no simplicial edge, no degree-2 vertex
    outer = [(f"o{i}", f"o{(i + 1) % 5}") for i in range(5)]
    inner = [(f"i{i}", f"i{(i + 2) % 5}") for i in range(5)]
    spokes = [(f"o{i}", f"i{i}") for i in range(5)]
    from linetile.graph import from_edge_list

    r = reduce(from_edge_list(outer + inner + spokes))
    assert isinstance(r, Partial) and r.reason == "no rule applies"


def test_determinism():
    a = json.dumps(reduce(triangular(11)).certificate, sort_keys=True)
    b = json.dumps(reduce(triangular(11)).certificate, sort_keys=True)
    assert a == b


def test_corrupted_certificates_fail():
    cert = reduce(triangular(7)).certificate
    assert verify_certificate(cert)

    bad = copy.deepcopy(cert)
    for node in iter_nodes(bad):
        if node.get("shifts") and 1 in node["shifts"]:
            node["shifts"] = [0] * len(node["shifts"])
            break
    assert not verify_certificate(bad)

    bad = copy.deepcopy(cert)
    bad["result"] = HomotopyClass.sphere(2, 13).to_dict()
    assert not verify_certificate(bad)

    bad = copy.deepcopy(cert)
    bad["witness"] = {"e": "a1b1", "h": "a0b0"}
    with pytest.raises(CertificateError):
        check_certificate(bad)

    bad = copy.deepcopy(cert)
    bad["children"][0]["graph"]["edges"].pop()
    assert not verify_certificate(bad)


def test_memo_refs_verify():
    cert = reduce(triangular(10)).certificate
    refs = [n for n in iter_nodes(cert) if "ref" in n]
    assert refs
    assert verify_certificate(cert)
    # a ref whose target never appeared is rejected
    lone = copy.deepcopy(refs[0])
    assert not verify_certificate(lone)


def test_engine_matches_homology_on_random_graphs():
    import random

    from graphgen import random_multigraph

    rng = random.Random(99)
    done = 0
    while done < 80:
        g = random_multigraph(rng, max_edges=11)
        r = reduce(g)
        if not r.ok:
            continue
        h = reduced_homology(matching_complex(g))
        assert wedge_profile(h) == r.value
        assert verify_certificate(r.certificate)
        done += 1
