import pytest

from graphinv.compactness import (FiniteTable, TauCNeighborhood, admits_compact_topology,
                                  check_condition_2, check_condition_3, check_condition_4,
                                  check_condition_5, continuity_witness, d_class_sizes_by_pumping,
                                  walk_counts)
from graphinv.elements import ZERO, d_class_members, enumerate_elements, factorizations, inv, vertex
from graphinv.errors import PreconditionError
from graphinv.graph import build_graph
from graphinv.models import bicyclic_relation_check, rose_graph, unary_tree
from graphinv.paths import make_path

from oracles import product_set


def test_condition_3(ab, p1):
    assert check_condition_3(ab) and check_condition_3(unary_tree(5))
    assert not check_condition_3(p1)


def test_condition_4(ab, p1):
    ok, w = check_condition_4(p1)
    assert not ok and str(w.q) == "f1" and w.p == inv(w.q)
    assert check_condition_4(ab) == (True, None)
    ok, w = check_condition_4(rose_graph(2))
    assert not ok and len(w.cycle) == 1
    assert bicyclic_relation_check(rose_graph(2), w.p, w.q, 5)


def test_condition_5(ab, p1):
    assert check_condition_5(ab)
    assert {v: s.count for v, s in d_class_sizes_by_pumping(ab).items()} == {"a": 1, "b": 4}
    assert not check_condition_5(p1)
    empty = build_graph(["a", "b", "c"], [])
    assert check_condition_5(empty)
    assert all(s.count == 1 for s in d_class_sizes_by_pumping(empty).values())


def test_walk_counts_are_path_counts():
    g = build_graph(["a", "b"], [("x", "a", "b"), ("y", "a", "b"), ("z", "b", "b")])
    counts = walk_counts(g, 3)
    assert counts[:, 1].tolist() == [1, 3, 3, 3]
    assert counts[:, 0].tolist() == [1, 0, 0, 0]


def test_condition_2(ab, p1):
    assert check_condition_2(ab)
    assert len(factorizations(ab, vertex("b"), 4)) == 2
    assert not check_condition_2(p1)
    assert [len(factorizations(p1, vertex("v"), n)) for n in range(4)] == [1, 2, 3, 4]
    assert check_condition_2(unary_tree(3))
    with pytest.raises(ValueError):
        check_condition_2(ab, 0)


@pytest.mark.parametrize("make, compact", [
    (lambda: build_graph(["a", "b"], [("x", "a", "b")]), True),
    (lambda: rose_graph(1), False),
    (lambda: rose_graph(3), False),
    (lambda: unary_tree(4), True),
])
def test_verdicts(make, compact):
    v = admits_compact_topology(make())
    assert v.cond2 == v.cond3 == v.cond4 == v.cond5 == compact
    assert (v.witness is None) == compact


def test_continuity_witness_ab(ab):
    x = enumerate_elements(ab, 1)[4]
    assert str(x) == "x"
    V = continuity_witness(ab, TauCNeighborhood({x}))
    assert V.excluded == set(d_class_members(ab, "b", 1))
    kept = [y for y in enumerate_elements(ab, 1) if y in V]
    assert x not in product_set(kept)
    assert continuity_witness(ab, TauCNeighborhood()).excluded == frozenset()


def test_continuity_needs_acyclic(p1):
    with pytest.raises(PreconditionError):
        continuity_witness(p1, TauCNeighborhood())
    with pytest.raises(PreconditionError):
        FiniteTable(p1)
    with pytest.raises(ValueError):
        TauCNeighborhood({ZERO})


def test_finite_table_matches_object_products():
    g = build_graph(["a", "b", "c"], [("x", "a", "b"), ("y", "b", "c"), ("z", "a", "c")])
    t = FiniteTable(g)
    from graphinv.elements import mul
    for i, a in enumerate(t.elements):
        for j, b in enumerate(t.elements):
            assert t.elements[t.table[i, j]] == mul(a, b)
