"""Paths over a graph: concatenation, prefixes, bounded enumeration, I_e."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .graph import EdgeId, Graph, GraphError, VertexId, cyclic_vertices, reaches


@dataclass(frozen=True)
class Path:
    """A path ``e1 ... en`` from ``start`` to ``end``; a vertex when ``edges`` is empty.

    ``start``/``end`` are stored so that elements can be multiplied without a
    graph at hand. Equality is structural.
    """

    start: VertexId
    end: VertexId
    edges: tuple = ()

    @classmethod
    def vertex(cls, v: VertexId) -> "Path":
        return cls(v, v, ())

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    def __str__(self):
        if not self.edges:
            return str(self.start)
        return " ".join(str(e) for e in self.edges)


def make_path(g: Graph, edges: Iterable[EdgeId] = (), anchor: VertexId | None = None) -> Path:
    """Build and validate a path of ``g``; ``anchor`` names the vertex of an empty path."""
    edges = tuple(edges)
    if not edges:
        if anchor is None or not g.has_vertex(anchor):
            raise GraphError(f"empty path needs a vertex anchor, got {anchor!r}")
        return Path.vertex(anchor)
    for e in edges:
        if not g.has_edge(e):
            raise GraphError(f"unknown edge {e!r}")
    for a, b in zip(edges, edges[1:]):
        if g.rng(a) != g.src(b):
            raise GraphError(f"edges {a!r} and {b!r} do not compose: r({a})={g.rng(a)!r}, s({b})={g.src(b)!r}")
    if anchor is not None and anchor != g.src(edges[0]):
        raise GraphError(f"anchor {anchor!r} differs from the path source {g.src(edges[0])!r}")
    return Path(g.src(edges[0]), g.rng(edges[-1]), edges)


def concat(a: Path, b: Path) -> Path:
    if a.end != b.start:
        raise ValueError(f"cannot concatenate: r(a)={a.end!r} but s(b)={b.start!r}")
    if not a.edges:
        return b
    if not b.edges:
        return a
    return Path(a.start, b.end, a.edges + b.edges)


def strip_prefix(p: Path, q: Path) -> Path | None:
    """The ``w`` with ``q == concat(p, w)``, or None when ``p`` is not a prefix of ``q``."""
    if p.start != q.start:
        return None
    n = len(p.edges)
    if n > len(q.edges) or q.edges[:n] != p.edges:
        return None
    if n == len(q.edges):
        return Path.vertex(q.end)
    return Path(p.end, q.end, q.edges[n:])


def path_key(g: Graph, p: Path) -> tuple:
    """Sort key: length, then edge ranks, then anchor rank."""
    return (len(p.edges), tuple(g.edge_rank[e] for e in p.edges), g.vertex_rank[p.start])


def paths_up_to(g: Graph, max_len: int) -> list[Path]:
    """Every path of length <= ``max_len``, breadth-first, ties broken by edge order."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    return list(_paths_up_to(g, max_len))


@lru_cache(maxsize=256)
def _paths_up_to(g: Graph, max_len: int) -> tuple[Path, ...]:
    layer = [Path.vertex(v) for v in g.sorted_vertices()]
    out = list(layer)
    # length-1 layer comes from edges; longer layers extend by out-edges
    layer = [Path(g.src(e), g.rng(e), (e,)) for e in g.sorted_edges()] if max_len >= 1 else []
    length = 1
    while layer and length <= max_len:
        out.extend(layer)
        if length == max_len:
            break
        nxt = []
        for p in layer:
            for e in g.out_edges(p.end):
                nxt.append(Path(p.start, g.rng(e), p.edges + (e,)))
        nxt.sort(key=lambda p: path_key(g, p))
        layer = nxt
        length += 1
    return tuple(out)


def incoming_paths(g: Graph, e: VertexId, max_len: int) -> list[Path]:
    """Paths u with r(u) = e and |u| <= max_len (a bounded slice of I_e)."""
    if not g.has_vertex(e):
        raise GraphError(f"vertex {e!r} is not in the graph")
    return [p for p in _paths_up_to(g, max_len) if p.end == e]


def is_Ie_finite(g: Graph, e: VertexId) -> bool:
    """Whether I_e is finite: no vertex lying on a cycle reaches ``e``."""
    if not g.has_vertex(e):
        raise GraphError(f"vertex {e!r} is not in the graph")
    return not any(reaches(g, c, e) for c in cyclic_vertices(g))


def incoming_count(g: Graph, e: VertexId) -> int:
    """Exact |I_e|; requires I_e finite.

    Counted on the reverse DAG: |I_e| = 1 + sum over edges x into e of |I_s(x)|.
    """
    if not is_Ie_finite(g, e):
        raise ValueError(f"I_{e} is infinite")
    memo: dict = {}

    def count(v):
        if v not in memo:
            memo[v] = 1 + sum(count(g.src(x)) for x in g.in_edges(v))
        return memo[v]

    return count(e)


def cycles_at(g: Graph, v: VertexId, max_len: int) -> list[Path]:
    """Cycles from ``v`` back to ``v`` of length 1..max_len, shortest first."""
    return [p for p in _paths_up_to(g, max_len) if p.edges and p.start == v and p.end == v]
