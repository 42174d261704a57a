"""Probe semigroups: matrix units, polycyclic monoids via rose graphs, the unary tree."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .elements import ZERO, GisElement, Pair, inv, is_idempotent, mul
from .graph import Graph, build_graph
from .paths import Path

MatrixUnit = tuple  # (row, col); ZERO stands for the matrix-unit zero


def matrix_units_mul(x, y, n: int):
    """Product in the semigroup of n x n matrix units (indices 0..n-1)."""
    for m in (x, y):
        if m is not ZERO and not (0 <= m[0] < n and 0 <= m[1] < n):
            raise IndexError(f"matrix unit {m} outside index range 0..{n - 1}")
    if x is ZERO or y is ZERO:
        return ZERO
    return (x[0], y[1]) if x[1] == y[0] else ZERO


def matrix_units(n: int) -> list:
    return [ZERO] + [(a, b) for a in range(n) for b in range(n)]


def rose_graph(loops: int) -> Graph:
    """One vertex ``v`` carrying loops ``f1 .. f<loops>``; its GIS is P_loops."""
    if loops < 1:
        raise ValueError("a rose graph needs at least one loop")
    return build_graph(["v"], [(f"f{i}", "v", "v") for i in range(1, loops + 1)],
                       name=f"rose{loops}")


def tree_edge(n: int) -> str:
    return f"({n},{n + 1})"


def unary_tree(depth: int) -> Graph:
    """Vertices 0..depth with edges (n, n+1): a finite piece of the unary tree."""
    if depth < 1:
        raise ValueError("unary_tree needs depth >= 1")
    return build_graph(range(depth + 1), [(tree_edge(n), n, n + 1) for n in range(depth)],
                       name=f"unary{depth}")


def tree_path(k: int, p: int) -> Path:
    """The path (k, p) of the unary tree; (n, n) is the vertex n."""
    if not 0 <= k <= p:
        raise ValueError(f"need 0 <= k <= p, got ({k}, {p})")
    return Path(k, p, tuple(tree_edge(n) for n in range(k, p)))


def tree_idempotent(k: int, p: int) -> Pair:
    path = tree_path(k, p)
    return Pair(path, path)


@dataclass
class IsoCheck:
    """Outcome of a finite isomorphism check; truthy iff it passed."""

    ok: bool
    checked: int = 0
    outside: list = field(default_factory=list)
    problems: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_matrix_units_iso(g: Graph, generators: Sequence[GisElement],
                            hom: Mapping, n: int) -> IsoCheck:
    """Check that ``hom`` is an injective homomorphism into matrix units.

    The domain is the key set of ``hom`` (a finite truncation of the
    generated subsemigroup). Matrix-unit indices run over 0..n. Products
    that leave the domain are skipped and listed in ``outside``.
    """
    if hom.get(ZERO, None) is not ZERO:
        raise ValueError("hom must map 0 to 0")
    for s in generators:
        if s not in hom:
            raise ValueError(f"hom is not defined on generator {s}")
    domain = list(hom)
    for x in domain:
        if inv(x) not in hom:
            raise ValueError(f"hom domain is not closed under inversion at {x}")
    problems = []
    images = {}
    for x in domain:
        img = hom[x]
        if img in images and images[img] != x:
            problems.append(("not injective", images[img], x))
        images.setdefault(img, x)
    outside = []
    checked = 0
    for x in domain:
        for y in domain:
            p = mul(x, y, graph=g)
            if p not in hom:
                outside.append((x, y, p))
                continue
            checked += 1
            if hom[p] != matrix_units_mul(hom[x], hom[y], n + 1):
                problems.append(("not multiplicative", x, y))
    return IsoCheck(not problems, checked, outside, problems)


def bicyclic_relation_check(g: Graph, p: GisElement, q: GisElement, depth: int = 5) -> bool:
    """Whether p, q generate a copy of the bicyclic monoid <p, q | pq = 1>.

    Finite slice: ``pq`` is a non-zero idempotent acting as identity on p
    and q, ``qp`` differs from it, and the words q^a p^b (a, b <= depth)
    are non-zero and pairwise distinct.
    """
    if p is ZERO or q is ZERO:
        return False
    one = mul(p, q, graph=g)
    if one is ZERO or not is_idempotent(one):
        return False
    if any(mul(one, s) != s or mul(s, one) != s for s in (p, q)):
        return False
    if mul(q, p) == one:
        return False
    q_pows = [one]
    p_pows = [one]
    for _ in range(depth):
        q_pows.append(mul(q_pows[-1], q))
        p_pows.append(mul(p_pows[-1], p))
    words = set()
    for qa in q_pows:
        for pb in p_pows:
            w = mul(qa, pb)
            if w is ZERO or w in words:
                return False
            words.add(w)
    return True


def bicyclic_mul(x: tuple, y: tuple) -> tuple:
    """q^a p^b * q^c p^d in the bicyclic monoid, with pairs (a, b)."""
    (a, b), (c, d) = x, y
    t = max(b, c)
    return (a - b + t, d - c + t)
