"""Integer-coded element arithmetic for exhaustive sweeps.

A non-zero element ``u v^-1`` with range vertex ``e`` is stored as five
integers ``(e, |u|, code(u), |v|, code(v))``; a path code packs the edge
indices ``b`` bits apiece, first edge most significant. The zero has
``e == -1`` and all other fields 0. Empty paths need no code: an empty
component is the range vertex itself.

Hot loops run under numba when it is importable; set
``GRAPHINV_DISABLE_NUMBA=1`` to force the vectorized numpy path.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .elements import ZERO, GisElement, Pair
from .graph import Graph
from .paths import Path

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("GRAPHINV_DISABLE_NUMBA", "") in ("", "0")


def optional_njit(*args, **kwargs):
    def decorator(func):
        if HAVE_NUMBA:
            return njit(*args, **kwargs)(func)
        return func
    return decorator


@dataclass
class Coded:
    """Struct-of-arrays batch of coded elements."""

    e: np.ndarray
    lu: np.ndarray
    cu: np.ndarray
    lv: np.ndarray
    cv: np.ndarray

    def __len__(self):
        return len(self.e)

    def fields(self):
        return self.e, self.lu, self.cu, self.lv, self.cv

    def take(self, idx) -> "Coded":
        return Coded(*(f[idx] for f in self.fields()))


class Codec:
    """Encoder/decoder between element objects and integer codes for one graph.

    ``max_len`` bounds the component length any coded element may reach,
    including products (three factors of depth L need ``3 * L``).
    """

    def __init__(self, g: Graph, max_len: int):
        self.g = g
        self.vertices = g.sorted_vertices()
        self.edge_list = g.sorted_edges()
        self.vidx = {v: i for i, v in enumerate(self.vertices)}
        self.eidx = {e: i for i, e in enumerate(self.edge_list)}
        self.bits = max(1, (len(self.edge_list) - 1).bit_length())
        self.max_len = max_len
        self.len_bits = max(1, max_len.bit_length())
        self.vert_bits = max(1, len(self.vertices).bit_length())
        if self.vert_bits + 2 * (self.len_bits + self.bits * max_len) > 63:
            raise ValueError(f"paths of length {max_len} over {len(self.edge_list)} edges "
                             "do not fit the 63-bit element key")
        # padded so that indexing with code 0 is safe on edgeless graphs
        self.src = np.array([self.vidx[g.src(e)] for e in self.edge_list] + [-2], dtype=np.int64)

    def encode_path(self, p: Path) -> tuple[int, int]:
        code = 0
        for e in p.edges:
            code = (code << self.bits) | self.eidx[e]
        return len(p.edges), code

    def encode(self, x: GisElement) -> tuple[int, int, int, int, int]:
        if x is ZERO:
            return (-1, 0, 0, 0, 0)
        lu, cu = self.encode_path(x.u)
        lv, cv = self.encode_path(x.v)
        return (self.vidx[x.range_vertex], lu, cu, lv, cv)

    def encode_many(self, xs) -> Coded:
        rows = np.array([self.encode(x) for x in xs], dtype=np.int64).reshape(-1, 5)
        return Coded(*(np.ascontiguousarray(rows[:, i]) for i in range(5)))

    def decode_path(self, e: int, length: int, code: int) -> Path:
        end = self.vertices[e]
        if length == 0:
            return Path.vertex(end)
        mask = (1 << self.bits) - 1
        idx = [(code >> (self.bits * (length - 1 - i))) & mask for i in range(length)]
        edges = tuple(self.edge_list[i] for i in idx)
        return Path(self.g.src(edges[0]), end, edges)

    def decode(self, e, lu, cu, lv, cv) -> GisElement:
        e = int(e)
        if e < 0:
            return ZERO
        return Pair(self.decode_path(e, int(lu), int(cu)), self.decode_path(e, int(lv), int(cv)))

    def decode_many(self, c: Coded) -> list[GisElement]:
        return [self.decode(*row) for row in zip(*(f.tolist() for f in c.fields()))]

    def keys(self, c: Coded) -> np.ndarray:
        """Injective 63-bit key per coded element (zero maps to -1)."""
        w = self.bits * self.max_len
        lb = self.len_bits
        k = c.e.astype(np.int64)
        k = (k << lb) | c.lu
        k = (k << w) | c.cu
        k = (k << lb) | c.lv
        k = (k << w) | c.cv
        return np.where(c.e < 0, -1, k)


# scalar product -- shared by every numba kernel


@optional_njit(cache=True)
def mul_coded(e1, lu1, cu1, lv1, cv1, e2, lu2, cu2, lv2, cv2, src, b):
    if e1 < 0 or e2 < 0:
        return -1, 0, 0, 0, 0
    if lu2 >= lv1:
        # u2 = v1 w  ->  (u1 w) v2^-1
        d = lu2 - lv1
        if lv1 == 0:
            if lu2 == 0:
                ok = e2 == e1
            else:
                ok = src[cu2 >> (b * (lu2 - 1))] == e1
        else:
            ok = (cu2 >> (b * d)) == cv1
        if ok:
            sh = b * d
            return e2, lu1 + d, (cu1 << sh) | (cu2 & ((1 << sh) - 1)), lv2, cv2
        return -1, 0, 0, 0, 0
    # v1 = u2 w, w non-empty  ->  u1 (v2 w)^-1
    d = lv1 - lu2
    if lu2 == 0:
        ok = src[cv1 >> (b * (lv1 - 1))] == e2
    else:
        ok = (cv1 >> (b * d)) == cu2
    if ok:
        sh = b * d
        return e1, lu1, cu1, lv2 + d, (cv2 << sh) | (cv1 & ((1 << sh) - 1))
    return -1, 0, 0, 0, 0


def mul_numpy(x: Coded, y: Coded, src: np.ndarray, b: int) -> Coded:
    """Broadcasting product of two coded batches."""
    e1, lu1, cu1, lv1, cv1 = x.fields()
    e2, lu2, cu2, lv2, cv2 = y.fields()
    live = (e1 >= 0) & (e2 >= 0)

    case1 = lu2 >= lv1
    d1 = np.maximum(lu2 - lv1, 0)
    first_u2 = src[cu2 >> (b * np.maximum(lu2 - 1, 0))]
    ok_vertex1 = np.where(lu2 == 0, e2 == e1, first_u2 == e1)
    ok1 = case1 & live & np.where(lv1 == 0, ok_vertex1, (cu2 >> (b * d1)) == cv1)

    d2 = np.maximum(lv1 - lu2, 0)
    first_v1 = src[cv1 >> (b * np.maximum(lv1 - 1, 0))]
    ok2 = ~case1 & live & np.where(lu2 == 0, first_v1 == e2, (cv1 >> (b * d2)) == cu2)

    sh1, sh2 = b * d1, b * d2
    one = np.int64(1)
    e = np.where(ok1, e2, np.where(ok2, e1, -1))
    lu = np.where(ok1, lu1 + d1, np.where(ok2, lu1, 0))
    cu = np.where(ok1, (cu1 << sh1) | (cu2 & ((one << sh1) - 1)), np.where(ok2, cu1, 0))
    lv = np.where(ok1, lv2, np.where(ok2, lv2 + d2, 0))
    cv = np.where(ok1, cv2, np.where(ok2, (cv2 << sh2) | (cv1 & ((one << sh2) - 1)), 0))
    shape = np.broadcast(e1, e2).shape
    return Coded(*(np.broadcast_to(f, shape).astype(np.int64) for f in (e, lu, cu, lv, cv)))


@optional_njit(cache=True)
def _table_nb(e1, lu1, cu1, lv1, cv1, e2, lu2, cu2, lv2, cv2, src, b):
    n, m = len(e1), len(e2)
    out = np.empty((5, n, m), dtype=np.int64)
    for i in range(n):
        for j in range(m):
            r = mul_coded(e1[i], lu1[i], cu1[i], lv1[i], cv1[i],
                          e2[j], lu2[j], cu2[j], lv2[j], cv2[j], src, b)
            for k in range(5):
                out[k, i, j] = r[k]
    return out


def product_table(x: Coded, y: Coded, src: np.ndarray, b: int, use_numba: bool | None = None) -> Coded:
    """All products x[i] * y[j] as an (len(x), len(y)) coded batch."""
    if USE_NUMBA if use_numba is None else use_numba:
        t = _table_nb(*x.fields(), *y.fields(), src, b)
        return Coded(*t)
    return mul_numpy(x.take((slice(None), None)), y.take((None, slice(None))), src, b)


@optional_njit(cache=True)
def _assoc_nb(e, lu, cu, lv, cv, src, b):
    n = len(e)
    # sparse table of the non-zero products y*z, row-compressed by y
    ptr = np.zeros(n + 1, dtype=np.int64)
    for y in range(n):
        c = 0
        for z in range(n):
            r = mul_coded(e[y], lu[y], cu[y], lv[y], cv[y], e[z], lu[z], cu[z], lv[z], cv[z], src, b)
            if r[0] >= 0:
                c += 1
        ptr[y + 1] = ptr[y] + c
    nnz = ptr[n]
    pz = np.empty(nnz, dtype=np.int64)
    pr = np.empty((nnz, 5), dtype=np.int64)
    k = 0
    for y in range(n):
        for z in range(n):
            r = mul_coded(e[y], lu[y], cu[y], lv[y], cv[y], e[z], lu[z], cu[z], lv[z], cv[z], src, b)
            if r[0] >= 0:
                pz[k] = z
                for f in range(5):
                    pr[k, f] = r[f]
                k += 1

    fails = 0
    first = np.full(3, -1, dtype=np.int64)
    for x in range(n):
        for y in range(n):
            a = mul_coded(e[x], lu[x], cu[x], lv[x], cv[x], e[y], lu[y], cu[y], lv[y], cv[y], src, b)
            if a[0] < 0:
                # (xy)z = 0 for every z; only z with yz != 0 can break x(yz) = 0
                for k in range(ptr[y], ptr[y + 1]):
                    r = mul_coded(e[x], lu[x], cu[x], lv[x], cv[x],
                                  pr[k, 0], pr[k, 1], pr[k, 2], pr[k, 3], pr[k, 4], src, b)
                    if r[0] >= 0:
                        if fails == 0:
                            first[0], first[1], first[2] = x, y, pz[k]
                        fails += 1
                continue
            k = ptr[y]
            kend = ptr[y + 1]
            for z in range(n):
                lhs = mul_coded(a[0], a[1], a[2], a[3], a[4],
                                e[z], lu[z], cu[z], lv[z], cv[z], src, b)
                if k < kend and pz[k] == z:
                    rhs = mul_coded(e[x], lu[x], cu[x], lv[x], cv[x],
                                    pr[k, 0], pr[k, 1], pr[k, 2], pr[k, 3], pr[k, 4], src, b)
                    k += 1
                else:
                    rhs = (-1, 0, 0, 0, 0)
                if lhs != rhs:
                    if fails == 0:
                        first[0], first[1], first[2] = x, y, z
                    fails += 1
    return fails, first


def _assoc_numpy(c: Coded, src, b):
    n = len(c)
    yz = product_table(c, c, src, b, use_numba=False)
    fails = 0
    first = np.full(3, -1, dtype=np.int64)
    for x in range(n):
        xc = c.take(slice(x, x + 1))
        xy = mul_numpy(xc, c, src, b)
        lhs = mul_numpy(xy.take((slice(None), None)), c.take((None, slice(None))), src, b)
        rhs = mul_numpy(xc.take((slice(None), None)), yz, src, b)
        bad = np.zeros((n, n), dtype=bool)
        for f_l, f_r in zip(lhs.fields(), rhs.fields()):
            bad |= f_l != f_r
        nb = int(bad.sum())
        if nb and fails == 0:
            y, z = np.argwhere(bad)[0]
            first[:] = (x, y, z)
        fails += nb
    return fails, first


@dataclass
class SweepResult:
    checked: int
    failures: int
    first_failure: tuple | None

    @property
    def ok(self) -> bool:
        return self.failures == 0


def associativity_sweep(c: Coded, src, b, use_numba: bool | None = None) -> SweepResult:
    """Check (xy)z == x(yz) for every triple of the batch."""
    if USE_NUMBA if use_numba is None else use_numba:
        fails, first = _assoc_nb(*c.fields(), src, b)
    else:
        fails, first = _assoc_numpy(c, src, b)
    n = len(c)
    return SweepResult(n ** 3, int(fails), tuple(int(i) for i in first) if fails else None)


def inverse_of(c: Coded) -> Coded:
    return Coded(c.e, c.lv, c.cv, c.lu, c.cu)


def _equal(a: Coded, b: Coded) -> np.ndarray:
    eq = np.ones(np.broadcast(a.e, b.e).shape, dtype=bool)
    for fa, fb in zip(a.fields(), b.fields()):
        eq &= fa == fb
    return eq


def inverse_axiom_sweep(c: Coded, src, b) -> SweepResult:
    """x x^-1 x == x and x^-1 x x^-1 == x^-1 for every element of the batch."""
    ci = inverse_of(c)
    ok1 = _equal(mul_numpy(mul_numpy(c, ci, src, b), c, src, b), c)
    ok2 = _equal(mul_numpy(mul_numpy(ci, c, src, b), ci, src, b), ci)
    bad = np.flatnonzero(~(ok1 & ok2))
    return SweepResult(2 * len(c), int(len(bad)), (int(bad[0]),) if len(bad) else None)


def idempotent_commute_sweep(c: Coded, src, b) -> SweepResult:
    """ef == fe for all idempotents e, f of the batch."""
    idem = np.flatnonzero((c.lu == c.lv) & (c.cu == c.cv))
    ic = c.take(idem)
    ef = product_table(ic, ic, src, b)
    fe = Coded(*(f.T for f in ef.fields()))
    bad = np.argwhere(~_equal(ef, fe))
    return SweepResult(len(idem) ** 2, int(len(bad)),
                       (int(idem[bad[0][0]]), int(idem[bad[0][1]])) if len(bad) else None)


def dclass_containment_sweep(c: Coded, src, b) -> SweepResult:
    """(D_e + 0)(D_f + 0) lies in D_e + D_f + 0 for every pair of the batch."""
    t = product_table(c, c, src, b)
    ex, ey = c.e[:, None], c.e[None, :]
    bad = np.argwhere((t.e >= 0) & (t.e != ex) & (t.e != ey))
    return SweepResult(len(c) ** 2, int(len(bad)),
                       (int(bad[0][0]), int(bad[0][1])) if len(bad) else None)


def index_products(codec: Codec, domain: Coded, products: Coded) -> np.ndarray:
    """Index of each product within ``domain`` (-1 when it falls outside)."""
    dk = codec.keys(domain)
    order = np.argsort(dk, kind="stable")
    sk = dk[order]
    pk = codec.keys(products)
    pos = np.clip(np.searchsorted(sk, pk), 0, len(sk) - 1)
    return np.where(sk[pos] == pk, order[pos], -1)
