import networkx as nx
import pytest
from hypothesis import given

from graphinv.graph import (GraphError, adjacency_matrix, build_graph, cyclic_vertices,
                            loops_at, reaches, small_multigraphs)

from conftest import graphs


def test_build_and_query(ab):
    assert ab.src("x") == "a" and ab.rng("x") == "b"
    assert ab.out_edges("a") == ("x",) and ab.in_edges("a") == ()
    assert reaches(ab, "a", "b") and not reaches(ab, "b", "a")
    assert reaches(ab, "a", "a")  # the empty path
    assert cyclic_vertices(ab) == set()


@pytest.mark.parametrize("verts, edges, field", [
    (["a", "a"], [], "vertices[1]"),
    (["a"], [("x", "a", "a"), ("x", "a", "a")], "edges[1].id"),
    (["a"], [("x", "a", "b")], "edges[0].rng"),
    ([], [("x", "v", "v")], "edges[0].src"),
    (["a"], [("a", "a", "a")], "edges[0].id"),
])
def test_build_errors(verts, edges, field):
    with pytest.raises(GraphError) as err:
        build_graph(verts, edges)
    assert err.value.field == field


def test_loops_and_cycles(g_bad, p1):
    assert loops_at(g_bad, "e") == {"u"}
    assert loops_at(g_bad, "f") == set()
    assert cyclic_vertices(g_bad) == {"e"}
    assert cyclic_vertices(p1) == {"v"}
    two = build_graph(["a", "b"], [("x", "a", "b"), ("y", "b", "a")])
    assert cyclic_vertices(two) == {"a", "b"}


def test_adjacency_matrix_counts_parallel_edges():
    g = build_graph(["a", "b"], [("x", "a", "b"), ("y", "a", "b"), ("z", "b", "b")])
    assert adjacency_matrix(g).tolist() == [[0, 2], [0, 1]]


def _nx(g):
    h = nx.MultiDiGraph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from((s, r) for _, s, r in g.triples())
    return h


@given(graphs())
def test_cyclic_vertices_match_networkx(g):
    h = _nx(g)
    expected = {v for c in nx.strongly_connected_components(h) for v in c
                if len(c) > 1 or h.has_edge(v, v)}
    assert cyclic_vertices(g) == expected


@given(graphs())
def test_reaches_matches_networkx(g):
    h = _nx(g)
    for v in g.vertices:
        assert {w for w in g.vertices if reaches(g, v, w)} == nx.descendants(h, v) | {v}


def test_corpus_is_complete_up_to_isomorphism(corpus):
    # brute force: every multigraph on <= 3 vertices with <= 3 edges is isomorphic to a corpus member
    reps = [_nx(g) for g in corpus]
    raw = small_multigraphs(3, 3, unique=False)
    for g in raw:
        h = _nx(g)
        assert sum(nx.is_isomorphic(h, r) for r in reps) == 1
    for i, a in enumerate(reps):
        assert not any(nx.is_isomorphic(a, b) for b in reps[i + 1:])
    assert len(corpus) == 68
