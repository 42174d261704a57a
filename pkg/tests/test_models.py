import itertools

import pytest

from graphinv.elements import ZERO, Pair, inv, mul, nat_leq, of_path, vertex
from graphinv.models import (bicyclic_mul, bicyclic_relation_check, matrix_units,
                             matrix_units_mul, rose_graph, tree_idempotent, tree_path,
                             unary_tree, verify_matrix_units_iso)
from graphinv.paths import Path, make_path, paths_up_to


def test_matrix_units_examples():
    assert matrix_units_mul((1, 2), (2, 3), 4) == (1, 3)
    assert matrix_units_mul((1, 2), (3, 3), 4) is ZERO
    assert matrix_units_mul((1, 2), ZERO, 4) is ZERO
    with pytest.raises(IndexError):
        matrix_units_mul((0, 4), (4, 0), 4)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_matrix_units_associative(n):
    els = matrix_units(n)
    for x, y, z in itertools.product(els, repeat=3):
        assert matrix_units_mul(matrix_units_mul(x, y, n), z, n) == \
            matrix_units_mul(x, matrix_units_mul(y, z, n), n)


def test_rose_graphs():
    with pytest.raises(ValueError):
        rose_graph(0)
    g = rose_graph(3)
    loops = [of_path(make_path(g, [f])) for f in ("f1", "f2", "f3")]
    for i, fi in enumerate(loops):
        for j, fj in enumerate(loops):
            assert mul(inv(fj), fi) == (vertex("v") if i == j else ZERO)


def test_unary_tree_shape():
    g = unary_tree(2)
    assert len(g.vertices) == 3 and len(g.edges) == 2 and g.is_acyclic()
    ends = {(p.start, p.end) for p in paths_up_to(unary_tree(4), 4)}
    assert ends == {(k, p) for k in range(5) for p in range(k, 5)}
    with pytest.raises(ValueError):
        tree_path(3, 2)


def _ab():
    from graphinv.graph import build_graph
    return build_graph(["a", "b"], [("x", "a", "b")])


def test_d_class_is_two_by_two_matrix_units():
    g = _ab()
    idx = {Path.vertex("b"): 0, make_path(g, ["x"]): 1}
    hom = {ZERO: ZERO}
    hom.update({Pair(u, v): (i, j) for u, i in idx.items() for v, j in idx.items()})
    check = verify_matrix_units_iso(g, list(hom)[1:], hom, 1)
    assert check and check.checked == 25 and not check.outside


def test_iso_rejects_non_injective_maps():
    g = _ab()
    b = vertex("b")
    x = Pair(make_path(g, ["x"]), make_path(g, ["x"]))
    check = verify_matrix_units_iso(g, [b, x], {ZERO: ZERO, b: (0, 0), x: (0, 0)}, 1)
    assert not check and check.problems[0][0] == "not injective"


def test_iso_requires_zero_and_inverse_closure():
    g = _ab()
    xb = of_path(make_path(g, ["x"]))
    with pytest.raises(ValueError):
        verify_matrix_units_iso(g, [xb], {xb: (0, 1)}, 1)
    with pytest.raises(ValueError):
        verify_matrix_units_iso(g, [xb], {ZERO: ZERO, xb: (0, 1)}, 1)


def test_bicyclic_checks(p1):
    f = of_path(make_path(p1, ["f1"]))
    assert bicyclic_relation_check(p1, inv(f), f, 5)
    g = _ab()
    x = of_path(make_path(g, ["x"]))
    assert not bicyclic_relation_check(g, inv(x), x, 5)
    assert not bicyclic_relation_check(p1, vertex("v"), vertex("v"), 5)


def test_bicyclic_mul_is_associative_and_monoid():
    els = [(a, b) for a in range(4) for b in range(4)]
    for x, y, z in itertools.product(els, repeat=3):
        assert bicyclic_mul(bicyclic_mul(x, y), z) == bicyclic_mul(x, bicyclic_mul(y, z))
    assert bicyclic_mul((0, 1), (1, 0)) == (0, 0)  # pq = 1
    assert bicyclic_mul((1, 0), (0, 1)) == (1, 1)


def test_tree_idempotent_order_small():
    g = unary_tree(5)
    assert nat_leq(tree_idempotent(1, 4), tree_idempotent(1, 2))
    assert not nat_leq(tree_idempotent(1, 2), tree_idempotent(1, 4))
    assert not nat_leq(tree_idempotent(0, 4), tree_idempotent(1, 4))
