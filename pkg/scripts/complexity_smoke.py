"""Timing sweep of the all-orders pipeline over site count and domain size.

The labeled structure has O(m n^2) bisector pieces and O(n^3) candidate
circumcenters, so doubling n should cost well under the naive 8x and
doubling m well under 2x once tracing dominates.  Prints one row per
configuration; rerun with --repeat 3 on noisy machines.
"""

import argparse
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from hilbert_voronoi.geometry import MetricKind
from hilbert_voronoi.korder import label_all_orders
from hilbert_voronoi.scenegen import random_scene


def timed(seed, n, m, repeat):
    domain, sites = random_scene(seed, n, m)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = label_all_orders(domain, MetricKind.HILBERT, sites)
        best = min(best, time.perf_counter() - t0)
    edges = sum(len(d.edges) for d in res.diagrams)
    return best, edges


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=4242)
    ap.add_argument("--repeat", type=int, default=2)
    ap.add_argument("--n", type=int, nargs="+", default=[4, 6, 8, 12])
    ap.add_argument("--m", type=int, nargs="+", default=[8])
    args = ap.parse_args(argv)

    print(f"{'n':>4} {'m':>4} {'seconds':>9} {'edges':>7}")
    base = None
    for m in args.m:
        for n in args.n:
            took, edges = timed(args.seed, n, m, args.repeat)
            if base is None:
                base = took
            print(f"{n:>4} {m:>4} {took:>9.2f} {edges:>7}  x{took / base:.1f}")


if __name__ == "__main__":
    main()
