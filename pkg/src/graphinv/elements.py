"""Elements ``u v^-1`` of a graph inverse semigroup and their arithmetic.

Every non-zero element is stored in its unique normal form ``Pair(u, v)``
with ``r(u) == r(v)``; the zero is the singleton ``ZERO``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .graph import Graph, GraphError, VertexId
from .paths import (Path, concat, incoming_count, is_Ie_finite, path_key,
                    paths_up_to, strip_prefix)


class Zero:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"

    def __str__(self):
        return "0"

    def __reduce__(self):
        return (Zero, ())


ZERO = Zero()


@dataclass(frozen=True)
class Pair:
    u: Path
    v: Path

    def __post_init__(self):
        if self.u.end != self.v.end:
            raise ValueError(f"r(u)={self.u.end!r} differs from r(v)={self.v.end!r}")

    @property
    def range_vertex(self) -> VertexId:
        return self.u.end

    def __str__(self):
        if self.v.is_vertex:
            return str(self.u)
        tail = f"{self.v}^-1" if len(self.v) == 1 else f"({self.v})^-1"
        if self.u.is_vertex:
            return tail
        return f"{self.u} * {tail}"


GisElement = Union[Zero, Pair]


def vertex(v: VertexId) -> Pair:
    p = Path.vertex(v)
    return Pair(p, p)


def of_path(p: Path) -> Pair:
    """The element ``p`` (that is, ``p r(p)^-1``)."""
    return Pair(p, Path.vertex(p.end))


def check_element(g: Graph, x: GisElement) -> None:
    """Raise GraphError unless every component of ``x`` is a path of ``g``."""
    if x is ZERO:
        return
    for p in (x.u, x.v):
        if not g.has_vertex(p.start) or not g.has_vertex(p.end):
            raise GraphError(f"element {x} does not belong to graph {g!r}")
        prev = p.start
        for e in p.edges:
            if not g.has_edge(e) or g.src(e) != prev:
                raise GraphError(f"element {x} does not belong to graph {g!r}")
            prev = g.rng(e)
        if prev != p.end:
            raise GraphError(f"element {x} does not belong to graph {g!r}")


def mul(x: GisElement, y: GisElement, graph: Graph | None = None) -> GisElement:
    """Product in G(E); pass ``graph`` to reject elements from another graph."""
    if graph is not None:
        check_element(graph, x)
        check_element(graph, y)
    if x is ZERO or y is ZERO:
        return ZERO
    w = strip_prefix(x.v, y.u)
    if w is not None:
        return Pair(concat(x.u, w), y.v)
    w = strip_prefix(y.u, x.v)
    if w is not None:
        return Pair(x.u, concat(y.v, w))
    return ZERO


def inv(x: GisElement) -> GisElement:
    if x is ZERO:
        return ZERO
    return Pair(x.v, x.u)


def is_idempotent(x: GisElement) -> bool:
    return x is ZERO or x.u == x.v


def nat_leq(e: GisElement, f: GisElement) -> bool:
    """Natural partial order on idempotents: e <= f iff e = ef = fe."""
    if not (is_idempotent(e) and is_idempotent(f)):
        raise ValueError("nat_leq is defined on idempotents only")
    return mul(e, f) == e and mul(f, e) == e


def d_equivalent(x: GisElement, y: GisElement) -> bool:
    if x is ZERO or y is ZERO:
        raise ValueError("D-equivalence criterion applies to non-zero elements")
    return x.u.end == x.v.end == y.u.end == y.v.end


@dataclass(frozen=True)
class SizeOrInfinite:
    """Either an exact finite count or infinity."""

    count: int | None

    @classmethod
    def finite(cls, n: int) -> "SizeOrInfinite":
        return cls(n)

    @classmethod
    def infinite(cls) -> "SizeOrInfinite":
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.count is not None

    def __repr__(self):
        return f"Finite({self.count})" if self.is_finite else "Infinite"


def d_class_size(g: Graph, e: VertexId) -> SizeOrInfinite:
    """|D_e| = |I_e|^2 when I_e is finite."""
    if not is_Ie_finite(g, e):
        return SizeOrInfinite.infinite()
    return SizeOrInfinite.finite(incoming_count(g, e) ** 2)


def element_key(g: Graph, x: GisElement) -> tuple:
    if x is ZERO:
        return (-1,)
    return (len(x.u) + len(x.v), len(x.u), path_key(g, x.u), path_key(g, x.v))


def enumerate_elements(g: Graph, max_len: int) -> list[GisElement]:
    """ZERO plus every ``u v^-1`` with |u|, |v| <= max_len, in canonical order."""
    by_end: dict = {}
    for p in paths_up_to(g, max_len):
        by_end.setdefault(p.end, []).append(p)
    out = [Pair(u, v) for ps in by_end.values() for u in ps for v in ps]
    out.sort(key=lambda x: element_key(g, x))
    return [ZERO] + out


def d_class_members(g: Graph, e: VertexId, max_len: int) -> list[Pair]:
    return [x for x in enumerate_elements(g, max_len)[1:] if x.range_vertex == e]


def component_len(x: GisElement) -> int:
    return 0 if x is ZERO else max(len(x.u), len(x.v))


def prefix(g: Graph, p: Path, k: int) -> Path:
    """The length-``k`` prefix of ``p``."""
    if k == 0:
        return Path.vertex(p.start)
    return Path(p.start, g.rng(p.edges[k - 1]), p.edges[:k])


def _paths_by_end(g: Graph, max_len: int) -> dict:
    by_end: dict = {}
    for p in paths_up_to(g, max_len):
        by_end.setdefault(p.end, []).append(p)
    return by_end


def factorizations(g: Graph, t: GisElement, max_len: int) -> list[tuple[Pair, Pair]]:
    """All (x, y) with x*y = t and every component of x, y of length <= max_len.

    Built from the normal form instead of a search over pairs:
    either t = (u1 w) v^-1 with x = u1 v1^-1, y = (v1 w) v^-1, or
    t = u (v2 w)^-1 with x = u (u2 w)^-1, y = u2 v2^-1 and w non-empty.
    """
    if t is ZERO:
        raise ValueError("factorizations are defined for non-zero targets")
    check_element(g, t)
    by_end = _paths_by_end(g, max_len)
    u, v = t.u, t.v
    out = []
    if len(v) <= max_len:
        for k in range(min(len(u), max_len) + 1):
            u1 = prefix(g, u, k)
            w = strip_prefix(u1, u)
            for v1 in by_end.get(u1.end, ()):
                u2 = concat(v1, w)
                if len(u2) <= max_len:
                    out.append((Pair(u1, v1), Pair(u2, v)))
    if len(u) <= max_len:
        for k in range(min(len(v) - 1, max_len) + 1):
            v2 = prefix(g, v, k)
            w = strip_prefix(v2, v)
            for u2 in by_end.get(v2.end, ()):
                v1 = concat(u2, w)
                if len(v1) <= max_len:
                    out.append((Pair(u, v1), Pair(u2, v2)))
    out.sort(key=lambda xy: (element_key(g, xy[0]), element_key(g, xy[1])))
    return out


def is_M_finite(g: Graph, t: GisElement) -> bool:
    """Whether M_t (the pairs multiplying to ``t``) is finite.

    Answered at graph level: M_t is finite for every non-zero t exactly
    when every I_e is finite.
    """
    if t is ZERO:
        raise ValueError("M is defined for non-zero targets")
    check_element(g, t)
    return all(is_Ie_finite(g, e) for e in g.vertices)


def fixed_factor_sets(g: Graph, a: GisElement, t: GisElement,
                      max_len: int) -> tuple[list[Pair], list[Pair]]:
    """({y : a*y = t}, {y : y*a = t}) over elements with components <= max_len."""
    if a is ZERO or t is ZERO:
        raise ValueError("fixed_factor_sets needs non-zero arguments")
    check_element(g, a)
    check_element(g, t)
    elems = enumerate_elements(g, max_len)[1:]
    left = [y for y in elems if mul(a, y) == t]
    right = [y for y in elems if mul(y, a) == t]
    return left, right


def fixed_factor_stabilization(g: Graph, a: GisElement, t: GisElement,
                               horizon: int = 6) -> int:
    """Smallest depth from which both fixed-factor sets stay constant up to ``horizon``."""
    sizes = [tuple(map(len, fixed_factor_sets(g, a, t, n))) for n in range(horizon + 1)]
    depth = horizon
    while depth > 0 and sizes[depth - 1] == sizes[horizon]:
        depth -= 1
    return depth
