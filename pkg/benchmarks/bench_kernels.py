"""Compare the numba kernels with the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--max-loops K]

Both backends are run on the same coded batches (rose graphs, depth 2 and 3)
and their results are checked for equality before timings are reported.
"""

import argparse
import time

from graphinv import kernels
from graphinv.elements import enumerate_elements
from graphinv.models import rose_graph


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def bench(loops: int, depth: int, repeat: int):
    g = rose_graph(loops)
    elems = enumerate_elements(g, depth)
    codec = kernels.Codec(g, 3 * depth)
    c = codec.encode_many(elems)
    rows = []
    for name, call in [
        ("product_table", lambda nb: kernels.product_table(c, c, codec.src, codec.bits, use_numba=nb)),
        ("associativity", lambda nb: kernels.associativity_sweep(c, codec.src, codec.bits, use_numba=nb)),
    ]:
        if name == "associativity" and len(elems) > 400:
            np_time, np_out = float("nan"), None  # numpy sweep is quadratic memory per x; skip
        else:
            np_time, np_out = _best(lambda: call(False), repeat)
        nb_time = float("nan")
        if kernels.HAVE_NUMBA:
            call(True)  # compile
            nb_time, nb_out = _best(lambda: call(True), repeat)
            if np_out is not None:
                same = (nb_out == np_out if name == "associativity"
                        else all((a == b).all() for a, b in zip(nb_out.fields(), np_out.fields())))
                assert same, f"backends disagree on {name}"
        rows.append((f"rose{loops} L={depth}", len(elems), name, np_time, nb_time))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--max-loops", type=int, default=3)
    args = ap.parse_args()
    print(f"numba available: {kernels.HAVE_NUMBA}")
    print(f"{'graph':<12} {'|S|':>6} {'kernel':<14} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for loops in range(1, args.max_loops + 1):
        for depth in (2, 3):
            for label, n, name, t_np, t_nb in bench(loops, depth, args.repeat):
                speed = t_np / t_nb if t_nb == t_nb and t_np == t_np and t_nb > 0 else float("nan")
                print(f"{label:<12} {n:>6} {name:<14} {t_np:>10.4f} {t_nb:>10.4f} {speed:>8.1f}")


if __name__ == "__main__":
    main()
