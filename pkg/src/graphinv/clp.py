"""Loop-component/acyclic decomposition of a graph and its obstruction witnesses.

A graph whose GIS sits densely in a CLP-compact topological semigroup must
split as a disjoint union of one-vertex one-loop components and an acyclic
part F with every I_f finite. ``decompose`` reports where that shape fails,
``obstruction_witness`` builds the subsemigroup behind each failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .elements import (ZERO, GisElement, Pair, inv, is_idempotent, mul,
                       nat_leq, of_path, vertex)
from .errors import InvariantViolation, PreconditionError
from .graph import EdgeId, Graph, GraphError, VertexId, build_graph, cyclic_vertices, loops_at
from .models import (IsoCheck, bicyclic_mul, bicyclic_relation_check,
                     verify_matrix_units_iso)
from .paths import Path, concat, cycles_at, incoming_count, is_Ie_finite

EDGE_OUT = "edge_out_of_cyclic_vertex"
EDGE_IN = "edge_into_cyclic_vertex"
MULTIPLE_LOOPS = "multiple_loops"
NON_LOOP_CYCLE = "non_loop_cycle"

DEFAULT_WITNESS_DEPTH = 4


@dataclass(frozen=True)
class Violation:
    kind: str
    site: VertexId
    data: tuple

    def as_dict(self):
        return {"kind": self.kind, "site": str(self.site), "data": [str(d) for d in self.data]}


@dataclass
class Decomposition:
    loop_components: list
    acyclic_part: Graph
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self):
        return {
            "loop_components": [{"vertex": str(v), "loop": str(f)} for v, f in self.loop_components],
            "acyclic_part": {
                "vertices": [str(v) for v in self.acyclic_part.vertices],
                "edges": [str(e) for e in self.acyclic_part.edges],
            },
            "violations": [v.as_dict() for v in self.violations],
        }


def _shortest_cycle(g: Graph, v: VertexId) -> Path | None:
    cycles = cycles_at(g, v, len(g.vertices))
    return cycles[0] if cycles else None


def decompose(g: Graph) -> Decomposition:
    cyclic = cyclic_vertices(g)
    components = []
    violations = []
    for e in g.sorted_vertices():
        if e not in cyclic:
            continue
        loops = sorted(loops_at(g, e), key=g.edge_rank.__getitem__)
        outs = tuple(x for x in g.out_edges(e) if g.rng(x) != e)
        ins = tuple(x for x in g.in_edges(e) if g.src(x) != e)
        clean = True
        if len(loops) > 1:
            violations.append(Violation(MULTIPLE_LOOPS, e, tuple(loops)))
            clean = False
        if outs:
            violations.append(Violation(EDGE_OUT, e, outs))
            clean = False
        if ins:
            violations.append(Violation(EDGE_IN, e, ins))
            clean = False
        if not loops:
            # only reachable with outs and ins present: the cycle passes through them
            violations.append(Violation(NON_LOOP_CYCLE, e, _shortest_cycle(g, e).edges))
            clean = False
        if clean:
            # every cycle at e must be a power of its loop
            for c in cycles_at(g, e, max(len(g.edges), 1)):
                if set(c.edges) != {loops[0]}:
                    raise InvariantViolation(f"cycle {c} at {e} is not a power of its loop")
            components.append((e, loops[0]))
    acyclic = g.subgraph([v for v in g.vertices if v not in cyclic], name=f"{g.name}:F" if g.name else "F")
    if not acyclic.is_acyclic():
        raise InvariantViolation("the part outside the cyclic vertices has a cycle")
    return Decomposition(components, acyclic, violations)


@dataclass
class WitnessBundle:
    """A finite certificate for one violation.

    ``structure`` names what the listed elements generate: "matrix_units"
    (with ``hom`` onto index pairs and its ``check``), "bicyclic" (same,
    onto exponent pairs) or "polycyclic_P2" (with the four ``relations``).
    ``structure`` is None when no certificate of that shape exists.
    """

    violation: Violation
    structure: str | None
    generators: list = field(default_factory=list)
    hom: dict = field(default_factory=dict)
    check: IsoCheck | None = None
    relations: dict = field(default_factory=dict)
    note: str = ""

    @property
    def valid(self) -> bool:
        if self.structure == "polycyclic_P2":
            return all(self.relations.values())
        return self.check is not None and bool(self.check)

    def as_dict(self):
        return {
            "violation": self.violation.as_dict(),
            "structure": self.structure,
            "valid": self.valid,
            "generators": [str(x) for x in self.generators],
            "hom": {str(k): (list(v) if v is not ZERO else 0) for k, v in self.hom.items()},
            "relations": dict(self.relations),
            "note": self.note,
        }


def _power(u: Path, n: int) -> Path:
    out = Path.vertex(u.start)
    for _ in range(n):
        out = concat(out, u)
    return out


def _check_violation(g: Graph, v: Violation) -> None:
    if not g.has_vertex(v.site):
        raise GraphError(f"violation site {v.site!r} is not in the graph")
    if v.kind == NON_LOOP_CYCLE:
        edges_ok = all(g.has_edge(x) for x in v.data)
    elif v.kind == MULTIPLE_LOOPS:
        edges_ok = len(v.data) > 1 and all(
            g.has_edge(x) and g.src(x) == g.rng(x) == v.site for x in v.data)
    elif v.kind == EDGE_OUT:
        edges_ok = all(g.has_edge(x) and g.src(x) == v.site != g.rng(x) for x in v.data)
    elif v.kind == EDGE_IN:
        edges_ok = all(g.has_edge(x) and g.rng(x) == v.site != g.src(x) for x in v.data)
    else:
        raise ValueError(f"unknown violation kind {v.kind!r}")
    if not edges_ok or v.site not in cyclic_vertices(g):
        raise GraphError(f"violation {v.as_dict()} does not describe this graph")


def obstruction_witness(g: Graph, v: Violation, depth: int = DEFAULT_WITNESS_DEPTH) -> WitnessBundle:
    """Build and validate the subsemigroup certifying violation ``v``."""
    if depth < 2:
        raise ValueError("witness depth must be >= 2")
    _check_violation(g, v)
    if v.kind == MULTIPLE_LOOPS:
        return _p2_witness(g, v)
    if v.kind == EDGE_OUT:
        return _out_edge_witness(g, v, depth)
    if v.kind == EDGE_IN:
        return _in_edge_witness(g, v, depth)
    return _cycle_witness(g, v, depth)


def _p2_witness(g: Graph, v: Violation) -> WitnessBundle:
    y, z = (of_path(Path(v.site, v.site, (f,))) for f in v.data[:2])
    one = vertex(v.site)
    rel = {
        f"{v.data[0]}^-1 * {v.data[0]} = {v.site}": mul(inv(y), y, graph=g) == one,
        f"{v.data[1]}^-1 * {v.data[1]} = {v.site}": mul(inv(z), z, graph=g) == one,
        f"{v.data[0]}^-1 * {v.data[1]} = 0": mul(inv(y), z, graph=g) is ZERO,
        f"{v.data[1]}^-1 * {v.data[0]} = 0": mul(inv(z), y, graph=g) is ZERO,
    }
    return WitnessBundle(v, "polycyclic_P2", [y, z, inv(y), inv(z)], relations=rel)


def _cycles_avoiding(g: Graph, site: VertexId, first_edge: EdgeId) -> list:
    return [c for c in cycles_at(g, site, len(g.vertices)) if c.edges[0] != first_edge]


def _out_edge_witness(g: Graph, v: Violation, depth: int) -> WitnessBundle:
    # u^k x are pairwise prefix-incomparable iff x is not the first edge of u
    for x in v.data:
        cycles = _cycles_avoiding(g, v.site, x)
        if not cycles:
            continue
        u = cycles[0]
        xp = Path(g.src(x), g.rng(x), (x,))
        # index 0 is the vertex r(x): u^k x = (u^k x) r(x)^-1 maps to (k, 0)
        legs = {0: Path.vertex(g.rng(x))}
        legs.update((k, concat(_power(u, k), xp)) for k in range(1, depth + 1))
        hom = {ZERO: ZERO}
        hom.update((Pair(a, b), (k, m)) for k, a in legs.items() for m, b in legs.items())
        gens = [of_path(legs[k]) for k in range(1, depth + 1)]
        check = verify_matrix_units_iso(g, gens, hom, depth)
        if not check:
            raise InvariantViolation(f"matrix-unit family failed: {check.problems[:3]}")
        return WitnessBundle(v, "matrix_units", gens, hom, check, note=f"u = {u}, x = {x}")
    return WitnessBundle(v, None, note="every cycle at the site leaves through the edge; "
                                       "no matrix-unit family of the form u^k x exists")


def matrix_unit_family(bundle: WitnessBundle) -> dict:
    """The u^k x (u^m x)^-1 part (k, m >= 1) of a matrix-unit bundle, plus zero."""
    fam = {ZERO: ZERO}
    fam.update((x, h) for x, h in bundle.hom.items() if x is not ZERO and min(h) >= 1)
    return fam


def _in_edge_witness(g: Graph, v: Violation, depth: int) -> WitnessBundle:
    # x u^k (x u^m)^-1 multiply as q^k p^m in the bicyclic monoid, not as matrix units
    x = v.data[0]
    u = _shortest_cycle(g, v.site)
    xp = Path(g.src(x), g.rng(x), (x,))
    legs = {k: concat(xp, _power(u, k)) for k in range(0, depth + 1)}
    hom = {Pair(a, b): (k, m) for k, a in legs.items() for m, b in legs.items()}
    problems = []
    checked = 0
    for s, hs in hom.items():
        for t, ht in hom.items():
            p = mul(s, t, graph=g)
            target = bicyclic_mul(hs, ht)
            if p in hom:
                checked += 1
                if hom[p] != target:
                    problems.append(("not multiplicative", s, t))
            elif max(target) <= depth:
                problems.append(("product missing", s, t))
    gens = [of_path(legs[k]) for k in range(1, depth + 1)]
    return WitnessBundle(v, "bicyclic", gens, hom, IsoCheck(not problems, checked, [], problems),
                         note=f"u = {u}, x = {x}; the family x u^k (x u^m)^-1 is bicyclic")


def _cycle_witness(g: Graph, v: Violation, depth: int) -> WitnessBundle:
    u = Path(g.src(v.data[0]), g.rng(v.data[-1]), tuple(v.data))
    q = of_path(u)
    ok = bicyclic_relation_check(g, inv(q), q, depth)
    return WitnessBundle(v, "bicyclic", [q, inv(q)], check=IsoCheck(ok),
                         note=f"cycle {u} with no loop at {v.site}")


@dataclass
class ClpReport:
    decomposition: Decomposition
    holds: bool
    incoming_sizes: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    @property
    def kappa(self) -> int:
        return len(self.decomposition.loop_components)

    @property
    def verdict(self) -> str:
        if self.holds:
            return "necessary conditions hold"
        return "necessary conditions fail: no dense CLP-compact embedding"

    def as_dict(self):
        return {
            "verdict": self.verdict,
            "holds": self.holds,
            "kappa": self.kappa,
            "acyclic": self.holds and self.kappa == 0,
            "decomposition": self.decomposition.as_dict(),
            "incoming_sizes": {str(k): n for k, n in self.incoming_sizes.items()},
            "witnesses": [w.as_dict() for w in self.witnesses],
        }


def classify_clp(g: Graph, depth: int = DEFAULT_WITNESS_DEPTH) -> ClpReport:
    """Check the necessary conditions for a dense CLP-compact embedding.

    Only ever reports that the necessary conditions hold, never that an
    embedding exists.
    """
    dec = decompose(g)
    if dec.violations:
        witnesses = [obstruction_witness(g, v, depth) for v in dec.violations]
        return ClpReport(dec, False, witnesses=witnesses)
    f = dec.acyclic_part
    sizes = {}
    for v in f.sorted_vertices():
        if not is_Ie_finite(f, v):
            raise InvariantViolation(f"I_{v} is infinite inside the acyclic part")
        sizes[v] = incoming_count(f, v)
    return ClpReport(dec, True, sizes)


@dataclass(frozen=True)
class ChainDescriptor:
    base: VertexId
    idempotents: tuple

    def __len__(self):
        return len(self.idempotents)


def _is_chain(seed: Sequence[GisElement]) -> bool:
    for a in seed:
        if a is ZERO or not is_idempotent(a):
            return False
    return all(nat_leq(a, b) or nat_leq(b, a) for i, a in enumerate(seed) for b in seed[i + 1:])


def maximal_chain(g: Graph, seed: Sequence[GisElement]) -> ChainDescriptor:
    """Extend a chain of non-zero idempotents to a maximal one.

    The chain is u_0 u_0^-1 > u_1 u_1^-1 > ... with u_0 a vertex and
    u_{n+1} = u_n x_n; past the longest seed path it grows by the least
    out-edge until a sink.
    """
    if not g.is_acyclic():
        raise PreconditionError("maximal_chain needs an acyclic graph")
    if not seed or not _is_chain(seed):
        raise ValueError("seed is not a chain of non-zero idempotents")
    longest = max(seed, key=lambda a: len(a.u)).u
    edges = list(longest.edges)
    end = longest.end
    while g.out_edges(end):
        x = g.out_edges(end)[0]
        edges.append(x)
        end = g.rng(x)
    chain = []
    path = Path.vertex(longest.start)
    chain.append(Pair(path, path))
    for x in edges:
        path = concat(path, Path(g.src(x), g.rng(x), (x,)))
        chain.append(Pair(path, path))
    return ChainDescriptor(longest.start, tuple(chain))


def unary_subtree_from_chain(g: Graph, c: ChainDescriptor) -> Graph:
    """The path-shaped subgraph with vertices r(u_n) and edges x_n."""
    if not g.is_acyclic():
        raise PreconditionError("unary_subtree_from_chain needs an acyclic graph")
    paths = [a.u for a in c.idempotents]
    if not paths or not paths[0].is_vertex or paths[0].start != c.base:
        raise ValueError("chain must start at its base vertex")
    edges = []
    for a, b in zip(paths, paths[1:]):
        if len(b) != len(a) + 1 or b.edges[:len(a)] != a.edges or b.start != a.start:
            raise ValueError(f"{b} does not extend {a} by one edge")
        x = b.edges[-1]
        if not g.has_edge(x):
            raise GraphError(f"edge {x!r} is not in the graph")
        edges.append((x, g.src(x), g.rng(x)))
    return build_graph([p.end for p in paths], edges, name="unary-subtree")
