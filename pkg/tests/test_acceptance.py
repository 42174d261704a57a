"""Acceptance gate: one test per criterion, each reporting a pass/fail line."""

import itertools
import random

import pytest

from graphinv import kernels
from graphinv.cli import render, run_command
from graphinv.clp import EDGE_OUT, MULTIPLE_LOOPS, decompose, matrix_unit_family, obstruction_witness
from graphinv.compactness import (TauCNeighborhood, admits_compact_topology, check_condition_2,
                                  check_condition_3, check_condition_4, check_condition_5,
                                  continuity_witness)
from graphinv.elements import (Pair, d_class_size, enumerate_elements, factorizations, inv, mul,
                               nat_leq, vertex)
from graphinv.graph import build_graph
from graphinv.io import format_element, parse_graph, serialize_graph
from graphinv.models import (bicyclic_relation_check, matrix_units_mul, rose_graph,
                             tree_idempotent, tree_path, unary_tree)

from oracles import has_loop_components_shape, product_set

RESULTS = {}


def report(n, title, ok, detail=""):
    RESULTS[n] = f"criterion {n} [{'PASS' if ok else 'FAIL'}] {title}" + (f": {detail}" if detail else "")
    print(RESULTS[n])
    assert ok, RESULTS[n]


def _coded(g, n):
    elems = enumerate_elements(g, n)
    codec = kernels.Codec(g, 3 * n)
    return elems, codec, codec.encode_many(elems)


def test_c1_inverse_semigroup_axioms(corpus):
    triples = failures = 0
    for g in corpus:
        elems, codec, c = _coded(g, 3)
        for sweep in (kernels.associativity_sweep(c, codec.src, codec.bits),
                      kernels.inverse_axiom_sweep(c, codec.src, codec.bits),
                      kernels.idempotent_commute_sweep(c, codec.src, codec.bits)):
            failures += sweep.failures
        triples += len(elems) ** 3
    report(1, "inverse-semigroup axioms at L=3", failures == 0,
           f"{len(corpus)} graphs, {triples} triples, {failures} failures")


def test_c2_condition_equivalence(corpus):
    agree = witnessed = cyclic = 0
    for g in corpus:
        c2, c3, c5 = check_condition_2(g), check_condition_3(g), check_condition_5(g)
        c4, w = check_condition_4(g)
        agree += c2 == c3 == c4 == c5
        if not g.is_acyclic():
            cyclic += 1
            witnessed += w is not None and bicyclic_relation_check(g, w.p, w.q, 5)
        admits_compact_topology(g)  # raises on any internal disagreement
    report(2, "conditions agree, bicyclic witnesses at L=5",
           agree == len(corpus) and witnessed == cyclic,
           f"agree {agree}/{len(corpus)}, witnesses {witnessed}/{cyclic}")


def test_c3_exact_counts_ab():
    g = build_graph(["a", "b"], [("x", "a", "b")])
    six = enumerate_elements(g, 1)
    full = enumerate_elements(g, len(g.vertices))  # the whole (finite) semigroup
    table = {(x, y): mul(x, y) for x in full for y in full}
    brute_d = {v: sum(1 for x in full[1:] if x.range_vertex == v) for v in g.vertices}
    brute_m = [(x, y) for (x, y), p in table.items() if p == vertex("b")]
    lib_d = {v: d_class_size(g, v).count for v in g.vertices}
    lib_m = factorizations(g, vertex("b"), 4)
    ok = (len(six) == 6 and brute_d == lib_d == {"a": 1, "b": 4}
          and len(brute_m) == len(lib_m) == 2 and set(brute_m) == set(lib_m))
    report(3, "exact counts on a->b", ok, f"|L1|={len(six)}, D={lib_d}, |M_b|={len(lib_m)}")


def test_c4_continuity_witness(corpus):
    checked = failures = 0
    for g in corpus:
        if not g.is_acyclic():
            continue
        full = enumerate_elements(g, len(g.vertices))
        nonzero = full[1:]
        products = {}
        for k in range(4):
            for excluded in itertools.combinations(nonzero, k):
                V = continuity_witness(g, TauCNeighborhood(excluded))
                removed = frozenset(x.range_vertex for x in excluded)
                kept = [x for x in full if x in V]
                if removed not in products:
                    products[removed] = product_set(kept)
                expected = {x for x in nonzero if x.range_vertex in removed}
                bad = V.excluded != expected or products[removed] & set(excluded)
                failures += bool(bad)
                checked += 1
    report(4, "continuity witness V*V avoids the excluded set", failures == 0,
           f"{checked} excluded sets, {failures} failures")


def test_c5_dclass_containment(corpus):
    pairs = failures = 0
    for g in corpus:
        elems, codec, c = _coded(g, 3)
        r = kernels.dclass_containment_sweep(c, codec.src, codec.bits)
        pairs += r.checked
        failures += r.failures
    report(5, "D-class product containment", failures == 0, f"{pairs} pairs, {failures} failures")


def _random_graph(rng, n_max=4, m_max=6):
    n = rng.randint(1, n_max)
    verts = [f"v{i}" for i in range(n)]
    return build_graph(verts, [(f"e{j}", rng.choice(verts), rng.choice(verts))
                               for j in range(rng.randint(0, m_max))])


def test_c6_decomposition_and_witnesses(corpus):
    rng = random.Random(6)
    graphs = list(corpus) + [_random_graph(rng) for _ in range(300)]
    mismatches = sum(decompose(g).ok != has_loop_components_shape(g) for g in graphs)
    invalid = 0
    for g in corpus:
        for v in decompose(g).violations:
            w = obstruction_witness(g, v, 4)
            invalid += w.structure is not None and not w.valid

    g_bad = build_graph(["e", "f"], [("u", "e", "e"), ("x", "e", "f")])
    (viol,) = decompose(g_bad).violations
    w = obstruction_witness(g_bad, viol, 4)
    fam = matrix_unit_family(w)
    table_ok = all(fam.get(mul(x, y)) == matrix_units_mul(hx, hy, 5)
                   for x, hx in fam.items() for y, hy in fam.items())
    mu_ok = viol.kind == EDGE_OUT and w.valid and len(fam) - 1 == 16 and table_ok

    r2 = rose_graph(2)
    (v2,) = decompose(r2).violations
    p2 = obstruction_witness(r2, v2, 4)
    p2_ok = v2.kind == MULTIPLE_LOOPS and len(p2.relations) == 4 and all(p2.relations.values())

    ok = mismatches == 0 and invalid == 0 and mu_ok and p2_ok
    report(6, "decomposition, matrix-unit and P2 witnesses", ok,
           f"{len(graphs)} graphs, {mismatches} oracle mismatches, {invalid} invalid witnesses, "
           f"matrix units {len(fam) - 1} elements, P2 relations {sum(p2.relations.values())}/4")


def test_c7_unary_tree_identities():
    N = 20
    g = unary_tree(N)
    P = lambda k, p: Pair(tree_path(k, p), tree_path(p, p))  # the path (k, p)
    bad = checked = 0
    for k, n, m in itertools.combinations_with_replacement(range(N + 1), 3):
        # k <= n <= m
        lhs = mul(mul(P(k, n), tree_idempotent(n, m)), inv(P(k, n)))
        bad += lhs != tree_idempotent(k, m)
        # relabel as n <= k <= m for the dual identity
        n2, k2 = k, n
        lhs = mul(mul(inv(P(n2, k2)), tree_idempotent(n2, m)), P(n2, k2))
        bad += lhs != tree_idempotent(k2, m)
        checked += 2
    idem = [(n, m) for n in range(N + 1) for m in range(n, N + 1)]
    order_bad = sum(nat_leq(tree_idempotent(*a), tree_idempotent(*b)) != (a[0] == b[0] and a[1] >= b[1])
                    for a in idem for b in idem)
    report(7, "unary tree conjugation identities and order criterion", bad == 0 and order_bad == 0,
           f"{checked} identities, {len(idem) ** 2} order pairs, {bad + order_bad} failures")


_NAMES = ["a", "b", "x", "y", "é", "ß", "v1", "(0,1)", "node 7", "λ"]


def _random_document_graph(rng, i):
    n = rng.randint(1, 4)
    pool = rng.sample(_NAMES + list(range(10)), n + 5)
    verts, edge_ids = pool[:n], pool[n:n + rng.randint(0, 5)]
    return build_graph(verts, [(e, rng.choice(verts), rng.choice(verts)) for e in edge_ids],
                       name=rng.choice(["", f"doc{i}", "gráf"]))


def test_c8_roundtrip_and_cli(tmp_path):
    rng = random.Random(8)
    docs = [_random_document_graph(rng, i) for i in range(50)]
    rt_fail = cli_fail = 0
    for i, g in enumerate(docs):
        text = serialize_graph(g)
        rt_fail += serialize_graph(parse_graph(text)) != text or parse_graph(text) != g
        path = tmp_path / f"g{i}.json"
        path.write_bytes(text.encode("utf-8"))
        expect = {
            "analyze": render(admits_compact_topology(g).as_dict()),
            "decompose": render(decompose(g).as_dict()),
        }
        for cmd, lib in expect.items():
            code, out = run_command([cmd, str(path)])
            cli_fail += out != lib
        elems = enumerate_elements(g, 1)
        x, y = rng.choice(elems), rng.choice(elems)
        expr = f"({format_element(x)}) * ({format_element(y)})"
        code, out = run_command(["mul", str(path), expr])
        cli_fail += out != render({"result": format_element(mul(x, y))})
    report(8, "document round-trip and CLI consistency", rt_fail == 0 and cli_fail == 0,
           f"{len(docs)} documents, {rt_fail} round-trip failures, {cli_fail} CLI mismatches")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
