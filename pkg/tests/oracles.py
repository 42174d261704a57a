"""Independent oracles shared by the unit and acceptance tests."""

import networkx as nx

from graphinv.elements import ZERO, mul


def to_networkx(g):
    h = nx.MultiDiGraph()
    h.add_nodes_from(g.vertices)
    for e, s, r in g.triples():
        h.add_edge(s, r, key=e)
    return h


def has_loop_components_shape(g) -> bool:
    """Every non-trivial strongly connected piece is one vertex with one loop and nothing else."""
    h = to_networkx(g)
    for comp in nx.strongly_connected_components(h):
        v = next(iter(comp))
        cyclic = len(comp) > 1 or h.number_of_edges(v, v) > 0
        if not cyclic:
            continue
        if len(comp) > 1 or h.number_of_edges(v, v) != 1:
            return False
        if h.in_degree(v) != 1 or h.out_degree(v) != 1:
            return False
    return True


def product_set(elements):
    """All products of pairs drawn from ``elements`` (object arithmetic)."""
    return {mul(x, y) for x in elements for y in elements}


def is_zero(x):
    return x is ZERO
