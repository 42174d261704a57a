"""Finite directed multigraphs and the reachability analyses built on them."""

from __future__ import annotations

import itertools
from collections import deque
from typing import Hashable, Iterable, Iterator, Sequence

VertexId = Hashable
EdgeId = Hashable


class GraphError(ValueError):
    """Invalid graph input (duplicate ids, undeclared endpoints, ...)."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


def id_key(ident) -> tuple:
    """Total order on mixed int/str identifiers: ints numerically, then strings."""
    if isinstance(ident, bool):
        return (2, 0, str(ident))
    if isinstance(ident, int):
        return (0, ident, "")
    return (1, 0, str(ident))


class Graph:
    """Immutable finite directed multigraph E = (E0, E1, s, r).

    Vertex and edge orders are kept as declared (for round-tripping); the
    ``vertex_rank``/``edge_rank`` maps give the canonical sorted order used
    for deterministic enumeration.
    """

    __slots__ = ("name", "vertices", "edges", "_src", "_rng", "_out", "_in",
                 "vertex_rank", "edge_rank", "_cyclic", "_reach")

    def __init__(self, vertices: Sequence[VertexId],
                 edges: Sequence[tuple[EdgeId, VertexId, VertexId]],
                 name: str = ""):
        self.name = name
        self.vertices = tuple(vertices)
        self.edges = tuple(e for e, _, _ in edges)
        self._src = {e: s for e, s, _ in edges}
        self._rng = {e: r for e, _, r in edges}
        out: dict = {v: [] for v in self.vertices}
        inc: dict = {v: [] for v in self.vertices}
        for e, s, r in edges:
            out[s].append(e)
            inc[r].append(e)
        self.vertex_rank = {v: i for i, v in enumerate(sorted(self.vertices, key=id_key))}
        self.edge_rank = {e: i for i, e in enumerate(sorted(self.edges, key=id_key))}
        self._out = {v: tuple(sorted(es, key=self.edge_rank.__getitem__)) for v, es in out.items()}
        self._in = {v: tuple(sorted(es, key=self.edge_rank.__getitem__)) for v, es in inc.items()}
        self._cyclic = None
        self._reach = None

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"Graph({label}|E0|={len(self.vertices)}, |E1|={len(self.edges)})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.triples() == other.triples() and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.vertices, self.triples()))

    def triples(self) -> tuple[tuple[EdgeId, VertexId, VertexId], ...]:
        return tuple((e, self._src[e], self._rng[e]) for e in self.edges)

    def has_vertex(self, v) -> bool:
        return v in self._out

    def has_edge(self, e) -> bool:
        return e in self._src

    def _check_vertex(self, v):
        if v not in self._out:
            raise GraphError(f"vertex {v!r} is not in the graph")

    def src(self, e: EdgeId) -> VertexId:
        return self._src[e]

    def rng(self, e: EdgeId) -> VertexId:
        return self._rng[e]

    def out_edges(self, v: VertexId) -> tuple[EdgeId, ...]:
        self._check_vertex(v)
        return self._out[v]

    def in_edges(self, v: VertexId) -> tuple[EdgeId, ...]:
        self._check_vertex(v)
        return self._in[v]

    def sorted_vertices(self) -> list[VertexId]:
        return sorted(self.vertices, key=self.vertex_rank.__getitem__)

    def sorted_edges(self) -> list[EdgeId]:
        return sorted(self.edges, key=self.edge_rank.__getitem__)

    def successors(self, v: VertexId) -> Iterator[VertexId]:
        for e in self.out_edges(v):
            yield self._rng[e]

    def _reach_sets(self) -> dict:
        if self._reach is None:
            reach = {}
            for v in self.vertices:
                seen = {v}
                todo = deque([v])
                while todo:
                    w = todo.popleft()
                    for e in self._out[w]:
                        t = self._rng[e]
                        if t not in seen:
                            seen.add(t)
                            todo.append(t)
                reach[v] = frozenset(seen)
            self._reach = reach
        return self._reach

    def is_acyclic(self) -> bool:
        return not cyclic_vertices(self)

    def subgraph(self, vertices: Iterable[VertexId], name: str = "") -> "Graph":
        """Induced subgraph on ``vertices`` (all edges with both ends inside)."""
        keep = set(vertices)
        vs = [v for v in self.vertices if v in keep]
        es = [(e, s, r) for e, s, r in self.triples() if s in keep and r in keep]
        return Graph(vs, es, name=name)


def build_graph(vertex_labels: Iterable[VertexId],
                edge_triples: Iterable[tuple[EdgeId, VertexId, VertexId]],
                name: str = "") -> Graph:
    """Validate and build a graph from vertex labels and (id, src, rng) triples."""
    vertices = list(vertex_labels)
    seen_v = set()
    for i, v in enumerate(vertices):
        if v in seen_v:
            raise GraphError(f"duplicate vertex id {v!r}", f"vertices[{i}]")
        seen_v.add(v)
    triples = []
    seen_e = set()
    for i, t in enumerate(edge_triples):
        try:
            e, s, r = t
        except (TypeError, ValueError):
            raise GraphError(f"edge must be an (id, src, rng) triple, got {t!r}", f"edges[{i}]") from None
        if e in seen_e:
            raise GraphError(f"duplicate edge id {e!r}", f"edges[{i}].id")
        if e in seen_v:
            raise GraphError(f"edge id {e!r} collides with a vertex id", f"edges[{i}].id")
        if s not in seen_v:
            raise GraphError(f"source {s!r} of edge {e!r} is not a declared vertex", f"edges[{i}].src")
        if r not in seen_v:
            raise GraphError(f"range {r!r} of edge {e!r} is not a declared vertex", f"edges[{i}].rng")
        seen_e.add(e)
        triples.append((e, s, r))
    return Graph(vertices, triples, name=name)


def reaches(g: Graph, source: VertexId, target: VertexId) -> bool:
    """True iff a path of length >= 0 leads from ``source`` to ``target``."""
    g._check_vertex(source)
    g._check_vertex(target)
    return target in g._reach_sets()[source]


def cyclic_vertices(g: Graph) -> frozenset:
    """Vertices lying on some cycle (a non-empty closed path)."""
    if g._cyclic is None:
        reach = g._reach_sets()
        g._cyclic = frozenset(
            v for v in g.vertices
            if any(v in reach[g.rng(e)] for e in g._out[v])
        )
    return g._cyclic


def loops_at(g: Graph, v: VertexId) -> frozenset:
    return frozenset(e for e in g.out_edges(v) if g.rng(e) == v)


def adjacency_matrix(g: Graph):
    """Integer adjacency matrix (edge multiplicities) in canonical vertex order."""
    import numpy as np

    order = {v: i for i, v in enumerate(g.sorted_vertices())}
    a = np.zeros((len(order), len(order)), dtype=np.int64)
    for e, s, r in g.triples():
        a[order[s], order[r]] += 1
    return a


def _canonical_form(n: int, pairs: Sequence[tuple[int, int]]) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        form = tuple(sorted((perm[s], perm[r]) for s, r in pairs))
        if best is None or form < best:
            best = form
    return best


VERTEX_NAMES = "abcdefghijklmnopqrstuvw"


def small_multigraphs(max_vertices: int = 3, max_edges: int = 3,
                      unique: bool = True) -> list[Graph]:
    """All multigraphs with at most the given numbers of vertices and edges.

    Edge slots are mapped to vertex pairs in every possible way; with
    ``unique`` the result keeps one representative per isomorphism class.
    Vertices are named a, b, c, ... and edges e1, e2, ...
    """
    graphs = []
    seen = set()
    for n in range(0, max_vertices + 1):
        vpairs = list(itertools.product(range(n), repeat=2))
        for m in range(0, max_edges + 1 if n else 1):
            for pairs in itertools.product(vpairs, repeat=m):
                if unique:
                    key = (n, _canonical_form(n, pairs))
                    if key in seen:
                        continue
                    seen.add(key)
                    pairs = key[1]
                names = VERTEX_NAMES[:n]
                edges = [(f"e{i + 1}", names[s], names[r]) for i, (s, r) in enumerate(pairs)]
                graphs.append(build_graph(names, edges, name=f"n{n}m{m}-{len(graphs)}"))
    return graphs
