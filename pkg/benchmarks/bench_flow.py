"""Time the compiled and pure-Python max-flow kernels on the same queries.

    python3 benchmarks/bench_flow.py [--repeat N] [--seed S]

Each query is a vertex-disjoint path count between two random vertex sets on
a random graph.  Both kernels must report identical values, paths and cuts.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from twsolver import _kernel
from twsolver.generators import gnp, grid, ktree
from twsolver.graph import Graph

WANT = _kernel.WANT_PATHS | _kernel.WANT_CUT_X | _kernel.WANT_CUT_Y


def queries(g: Graph, count: int, rng: random.Random):
    order, index, indptr, indices, rev = g._csr_data()
    n = len(order)
    out = []
    for _ in range(count):
        size = rng.randint(1, max(1, n // 6))
        picks = rng.sample(range(n), min(n, 2 * size))
        src, snk = bytearray(n), bytearray(n)
        for i in picks[:size]:
            src[i] = 1
        for i in picks[size:]:
            snk[i] = 1
        out.append((indptr, indices, rev, n, src, snk, bytearray(n), bytearray(n), n + 1, WANT))
    return out


def run(kernel, qs) -> tuple[float, list]:
    t0 = time.perf_counter()
    results = [kernel(*q) for q in qs]
    return time.perf_counter() - t0, results


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=200, help="queries per graph")
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args(argv)

    if _kernel.compiled_max_flow is None:
        print("compiled kernel not built; only the Python kernel is available")
        return 1
    rng = random.Random(args.seed)
    graphs = {
        "gnp(60, 0.1)": gnp(60, 0.1, args.seed),
        "gnp(200, 0.03)": gnp(200, 0.03, args.seed),
        "grid(15, 15)": grid(15, 15),
        "ktree(300, 4)": ktree(300, 4, args.seed),
    }
    print(f"{'graph':<16} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, g in graphs.items():
        qs = queries(g, args.repeat, rng)
        tp, rp = run(_kernel.python_max_flow, qs)
        tc, rc = run(_kernel.compiled_max_flow, qs)
        if [tuple(map(list, r[1])) for r in rp] != [tuple(map(list, r[1])) for r in rc] or [
            (r[0], set(r[2]), set(r[3])) for r in rp
        ] != [(r[0], set(r[2]), set(r[3])) for r in rc]:
            print(f"{name}: kernels disagree", file=sys.stderr)
            return 2
        print(f"{name:<16} {tp:>10.3f} {tc:>10.3f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
