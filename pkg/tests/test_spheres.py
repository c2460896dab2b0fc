import pytest
from hypothesis import given, settings, strategies as st

from linetile.spheres import HomotopyClass, SphereCountTable, SphereError, equals, join, poincare_polynomial, suspension, wedge

pt = HomotopyClass.contractible()
empty = HomotopyClass.empty()
S = HomotopyClass.sphere

classes = st.one_of(
    st.just(pt),
    st.dictionaries(st.integers(0, 6), st.integers(1, 5), min_size=1, max_size=3).map(HomotopyClass.from_counts),
)


def test_examples():
    assert wedge(S(1, 2), S(1, 3)) == S(1, 5)
    assert wedge(pt, S(2)) == S(2)
    two = S(0, 2)
    assert wedge(suspension(two), suspension(two), suspension(pt, 2)) == S(1, 4)
    assert suspension(empty) == S(0)
    assert suspension(pt) == pt
    assert suspension(S(3, 5), 2) == S(5, 5)
    assert join(pt, S(1, 5)) == pt
    assert join(S(0), S(0)) == S(1)
    assert join(S(0, 2), S(1, 3)) == S(2, 6)
    assert poincare_polynomial(wedge(S(2, 8), S(3))) == {2: 8, 3: 1}
    assert poincare_polynomial(pt) == {}


def test_empty_sphere_rules():
    with pytest.raises(SphereError):
        wedge(empty, S(1))
    with pytest.raises(SphereError):
        HomotopyClass.from_counts({-1: 1, 2: 1})
    assert wedge(empty, empty) == empty
    assert join(empty, S(2, 3)) == S(2, 3)


def test_render_and_json():
    x = wedge(S(1, 2), S(3))
    assert str(x) == "2*S^1 v S^3"
    assert str(pt) == "pt" and str(empty) == "S^-1"
    assert x.to_json() == '{"contractible": false, "spheres": {"1": 2, "3": 1}}'
    assert HomotopyClass.from_json(x.to_json()) == x
    assert HomotopyClass.parse(str(x)) == x
    assert HomotopyClass.parse("pt") == pt
    with pytest.raises(SphereError):
        HomotopyClass.from_dict({"contractible": True, "spheres": {"1": 1}})


@given(classes, classes, classes)
@settings(max_examples=100)
def test_wedge_laws(a, b, c):
    assert wedge(a, b) == wedge(b, a)
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))
    assert wedge(a, pt) == a
    assert suspension(wedge(a, b)) == wedge(suspension(a), suspension(b))
    assert equals(a, a)
    assert wedge(a, b).euler == a.euler + b.euler


@given(classes, classes)
@settings(max_examples=100)
def test_join_laws(a, b):
    assert join(a, b) == join(b, a)
    assert join(a, empty) == a
    assert join(a, pt) == pt
    assert join(S(0), a) == suspension(a)
    assert join(a, b).euler == -a.euler * b.euler


def test_count_table():
    t = SphereCountTable({(8, 2): 8, (8, 3): 1, (9, 3): 0})
    assert t.row(8) == {2: 8, 3: 1}
    assert t[(9, 3)] == 0
    assert t.homotopy(8) == wedge(S(2, 8), S(3))
    with pytest.raises(SphereError):
        SphereCountTable({(1, 1): -1})
