"""Decision procedures for compact topologizability of G(E) on finite graphs.

Each condition is computed by its own route so that their agreement is a
real check:

* ``check_condition_2``, every M_t finite: graph-level decision plus growth
  of the explicit factorization sets between depths L-1 and L;
* ``check_condition_3``, every I_e finite: reachability from cyclic vertices;
* ``check_condition_4``, no bicyclic copy: search for an element x with
  x*x outside {0, x}, turned into a validated bicyclic pair;
* ``check_condition_5``, every D-class finite: D_e is infinite iff some
  path of length |E0| ends at e, counted with adjacency-matrix powers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .elements import (ZERO, GisElement, Pair, SizeOrInfinite, check_element,
                       d_class_size, enumerate_elements, factorizations, inv,
                       is_M_finite, mul, of_path)
from .errors import InvariantViolation, PreconditionError
from .graph import Graph, adjacency_matrix
from .models import bicyclic_relation_check
from .paths import Path, is_Ie_finite, paths_up_to

DEFAULT_CROSS_CHECK_DEPTH = 4


def check_condition_3(g: Graph) -> bool:
    return all(is_Ie_finite(g, e) for e in g.vertices)


@dataclass(frozen=True)
class BicyclicWitness:
    """q = w and p = w^-1 for a cycle w; pq = r(w) is the identity of <p, q>."""

    cycle: Path
    p: Pair
    q: Pair

    def as_dict(self):
        return {"cycle": [str(e) for e in self.cycle.edges], "p": str(self.p), "q": str(self.q)}


def find_bicyclic_witness(g: Graph) -> BicyclicWitness | None:
    """Look for an element x = w r(w)^-1 whose square is neither 0 nor x.

    A cycle exists iff one of length <= |E0| does, so the search is complete.
    """
    for path in paths_up_to(g, len(g.vertices)):
        if not path.edges:
            continue
        x = of_path(path)
        sq = mul(x, x)
        if sq is not ZERO and sq != x:
            # x = u v^-1 with v = r(u) a vertex: u = v w forces w = u, a cycle
            return BicyclicWitness(path, inv(x), x)
    return None


def check_condition_4(g: Graph, depth: int = 5) -> tuple[bool, BicyclicWitness | None]:
    """No bicyclic monoid inside G(E); on finite graphs the matrix-unit branch is vacuous."""
    w = find_bicyclic_witness(g)
    if w is None:
        return True, None
    if not bicyclic_relation_check(g, w.p, w.q, depth):
        raise InvariantViolation(f"cycle {w.cycle} does not yield a bicyclic pair")
    return False, w


def walk_counts(g: Graph, max_len: int) -> np.ndarray:
    """counts[n, j] = number of paths of length n ending at vertex j (canonical order)."""
    a = adjacency_matrix(g)
    nv = len(a)
    counts = np.zeros((max_len + 1, nv), dtype=object)
    row = np.ones(nv, dtype=object)
    counts[0] = row
    for n in range(1, max_len + 1):
        row = row @ a.astype(object)
        counts[n] = row
    return counts


def d_class_sizes_by_pumping(g: Graph) -> dict:
    """|D_e| per vertex, Infinite exactly when a path of length |E0| ends at e."""
    nv = len(g.vertices)
    counts = walk_counts(g, nv)
    out = {}
    for j, v in enumerate(g.sorted_vertices()):
        if counts[nv, j] > 0:
            out[v] = SizeOrInfinite.infinite()
        else:
            out[v] = SizeOrInfinite.finite(int(sum(counts[:nv, j])) ** 2)
    return out


def check_condition_5(g: Graph) -> bool:
    return all(s.is_finite for s in d_class_sizes_by_pumping(g).values())


def d_class_sizes(g: Graph) -> dict:
    return {v: d_class_size(g, v) for v in g.sorted_vertices()}


def check_condition_2(g: Graph, depth: int = DEFAULT_CROSS_CHECK_DEPTH) -> bool:
    """Every M_t finite; the graph-level answer is cross-checked by growth.

    For every non-zero target t of depth <= 1 the factorization sets at
    depths ``L - 1`` and ``L`` must coincide when I_r(t) is finite and
    strictly grow otherwise; a negative answer needs a growing target.
    ``L`` is ``depth`` raised to |E0| + 1 if needed: with I_r(t) finite no
    cycle reaches the factors, so their components are at most |E0| long.
    """
    if depth < 1:
        raise ValueError("cross-check depth must be >= 1")
    depth = max(depth, len(g.vertices) + 1)
    targets = enumerate_elements(g, 1)[1:]
    decision = all(is_M_finite(g, t) for t in targets) if targets else True
    grew = False
    for t in targets:
        before = len(factorizations(g, t, depth - 1))
        after = len(factorizations(g, t, depth))
        if is_Ie_finite(g, t.range_vertex):
            if before != after:
                raise InvariantViolation(f"M_{t} grew from {before} to {after} with I finite")
        else:
            if after <= before:
                raise InvariantViolation(f"M_{t} did not grow ({before} -> {after}) with I infinite")
            grew = True
    if grew == decision:
        raise InvariantViolation("factorization growth disagrees with the graph-level decision")
    return decision


@dataclass
class CompactnessVerdict:
    cond2: bool
    cond3: bool
    cond4: bool
    cond5: bool
    witness: BicyclicWitness | None = None
    d_class_sizes: dict = field(default_factory=dict)

    @property
    def compact(self) -> bool:
        return self.cond2

    def as_dict(self):
        return {
            "compact": self.compact,
            "cond2_all_M_finite": self.cond2,
            "cond3_all_I_finite": self.cond3,
            "cond4_no_bicyclic": self.cond4,
            "cond5_all_D_finite": self.cond5,
            "d_class_sizes": {str(v): s.count if s.is_finite else "infinite"
                              for v, s in self.d_class_sizes.items()},
            "witness": None if self.witness is None else self.witness.as_dict(),
        }


def admits_compact_topology(g: Graph, depth: int = DEFAULT_CROSS_CHECK_DEPTH) -> CompactnessVerdict:
    """Evaluate the four conditions independently and require them to agree.

    A true verdict means the cofinite-at-zero topology makes G(E) a compact
    topological semigroup.
    """
    c2 = check_condition_2(g, depth)
    c3 = check_condition_3(g)
    c4, witness = check_condition_4(g)
    pumped = d_class_sizes_by_pumping(g)
    c5 = all(s.is_finite for s in pumped.values())
    if not c2 == c3 == c4 == c5:
        raise InvariantViolation(f"conditions disagree: 2={c2} 3={c3} 4={c4} 5={c5}")
    sizes = d_class_sizes(g)
    if sizes != pumped:
        raise InvariantViolation(f"D-class sizes disagree: {sizes} vs {pumped}")
    return CompactnessVerdict(c2, c3, c4, c5, witness, sizes)


@dataclass(frozen=True)
class TauCNeighborhood:
    """The basic neighbourhood G(E) minus ``excluded`` of zero."""

    excluded: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "excluded", frozenset(self.excluded))
        if ZERO in self.excluded:
            raise ValueError("a neighbourhood of zero cannot exclude zero")

    def __contains__(self, x: GisElement) -> bool:
        return x not in self.excluded


class FiniteTable:
    """Full multiplication table of G(E) for an acyclic graph."""

    def __init__(self, g: Graph):
        if not check_condition_3(g):
            raise PreconditionError("G(E) is infinite: the graph has a cycle")
        depth = max(len(g.vertices) - 1, 0)
        self.elements = enumerate_elements(g, depth)
        self.index = {x: i for i, x in enumerate(self.elements)}
        codec = kernels.Codec(g, max(depth, 1))
        coded = codec.encode_many(self.elements)
        prod = kernels.product_table(coded, coded, codec.src, codec.bits)
        flat = kernels.Coded(*(f.ravel() for f in prod.fields()))
        idx = kernels.index_products(codec, coded, flat).reshape(len(coded), len(coded))
        if (idx < 0).any():
            raise InvariantViolation("finite semigroup is not closed under products")
        self.table = idx
        self.ranges = [None] + [x.range_vertex for x in self.elements[1:]]
        self._products: dict = {}

    def products_of(self, removed_ranges: frozenset) -> np.ndarray:
        """Boolean mask of the set V*V, V = everything outside the given D-classes."""
        if removed_ranges not in self._products:
            keep = np.array([r is None or r not in removed_ranges for r in self.ranges])
            sub = self.table[np.ix_(keep, keep)]
            mask = np.zeros(len(self.elements), dtype=bool)
            mask[np.unique(sub)] = True
            self._products[removed_ranges] = mask
        return self._products[removed_ranges]


@lru_cache(maxsize=64)
def finite_table(g: Graph) -> FiniteTable:
    return FiniteTable(g)


def continuity_witness(g: Graph, nbhd: TauCNeighborhood) -> TauCNeighborhood:
    """Neighbourhood V of zero with V*V inside ``nbhd``.

    V drops the whole D-class of every excluded element; the inclusion is
    then checked over the full (finite) multiplication table.
    """
    if not check_condition_3(g):
        raise PreconditionError("continuity witness needs finite D-classes (an acyclic graph)")
    for x in nbhd.excluded:
        check_element(g, x)
    table = finite_table(g)
    removed = frozenset(x.range_vertex for x in nbhd.excluded)
    hit = table.products_of(removed)
    bad = [x for x in nbhd.excluded if hit[table.index[x]]]
    if bad:
        raise InvariantViolation(f"V*V meets the excluded elements {bad}")
    v_excluded = frozenset(x for x in table.elements[1:] if x.range_vertex in removed)
    return TauCNeighborhood(v_excluded)
