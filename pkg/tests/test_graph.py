import pytest

from linetile import graph as G
from linetile.graph import GraphError, Multigraph, build
from linetile.tilings import cycle, path, triangular


def test_build_rejects_bad_records():
    with pytest.raises(GraphError):
        build(["a", "b"], [("e", "a", "b"), ("e", "a", "b")])
    with pytest.raises(GraphError):
        build(["a"], [("e", "a", "z")])
    with pytest.raises(GraphError):
        build(["a", "b"], [("e", "a", "a")])
    with pytest.raises(GraphError):
        build(["a", "a"], [])


def test_json_roundtrip():
    g = cycle(2)
    assert Multigraph.from_json(g.to_json()) == g
    h = triangular(5)
    assert Multigraph.from_dict(h.to_dict()) == h


def test_unknown_edge():
    with pytest.raises(GraphError):
        G.edge_neighborhood(path(3), "nope")


def test_edge_neighbourhoods_on_triangle_strip():
    g = triangular(4)
    assert G.edge_neighborhood(g, "a0b0") == {"a0a1", "a1b0", "b0b1"}
    assert G.edge_neighborhood(g, "a0b0", closed=True) == {"a0a1", "a1b0", "b0b1", "a0b0"}
    # open domination used by the triangle proof
    assert G.edge_neighborhood(g, "a0b0") <= G.edge_neighborhood(g, "a1b1")


def test_parallel_edges_are_neighbours():
    g = cycle(2)
    assert G.edge_neighborhood(g, "v0v1") == {"v0v1'"}
    assert G.adjacent(g, "v0v1", "v0v1'")


def test_simplicial_edges():
    g = cycle(3)
    assert all(G.is_simplicial_edge(g, e) for e in g.edge_ids)
    assert not G.is_simplicial_edge(path(5), "v1v2")


def test_delete_closed_neighborhood_drops_isolated():
    g = path(5)
    h = G.delete_closed_neighborhood(g, "v1v2")
    assert h.edge_ids == ("v3v4",)
    assert h.vertices == ("v3", "v4")


def test_contract_path():
    g = cycle(5)
    h = G.contract_path(g, ["v0", "v1", "v2", "v3", "v4"])
    assert h.num_edges == 2 and h.num_vertices == 2
    assert not h.is_simple()
    assert G.contracted_edge_id(["v0", "v1", "v2", "v3", "v4"]) in h.edge_ids


def test_contract_path_checks_degrees():
    g = triangular(4)
    with pytest.raises(GraphError):
        G.contract_path(g, ["a0", "a1", "a2", "a3", "a4"])
    with pytest.raises(GraphError):
        G.contract_path(cycle(4), ["v0", "v1", "v2", "v3", "v0"])


def test_components_order():
    g = G.disjoint_union(path(2), G.relabel(path(4), {f"v{i}": f"w{i}" for i in range(4)},
                                              {"v0v1": "w0w1", "v1v2": "w1w2", "v2v3": "w2w3"}))
    comps = G.components(g)
    assert [c.num_edges for c in comps] == [3, 1]


def test_line_graph_of_triangle_is_triangle():
    lg = G.line_graph(cycle(3))
    assert lg.num_vertices == 3 and lg.num_edges == 3
