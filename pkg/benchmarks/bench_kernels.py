"""Compare the compiled kernels with the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--rows 60 --cols 60 --repeat 20]

Times each kernel with both backends on the same inputs, then runs a small
SSVP-D+ batch end to end in a subprocess per backend.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from kdpaths import _purepy, gen_grid, kernels

try:
    from kdpaths import _speedups
except ImportError:
    _speedups = None

E2E = """
import time
from kdpaths import BACKEND, Query, gen_grid, solve_ssvp_d_plus
from kdpaths.bench import random_queries
g = gen_grid({rows}, {cols}, seed=0)
qs = random_queries(g, {queries}, seed=1)
t0 = time.perf_counter()
for s, t in qs:
    solve_ssvp_d_plus(g, Query(s, t, 3, 0.5))
print(BACKEND, time.perf_counter() - t0)
"""


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=60)
    ap.add_argument("--cols", type=int, default=60)
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--queries", type=int, default=20)
    args = ap.parse_args(argv)
    if _speedups is None:
        sys.exit("compiled extension not built; run `pip install -e .` with Cython available")

    g = gen_grid(args.rows, args.cols, seed=0)
    root = 0
    far = g.node_count - 1
    dist, _ = kernels.dijkstra(g, far, reverse=True)
    rng = np.random.default_rng(0)
    ids = np.full((20000, 2), -1, dtype=np.int32)
    sizes = rng.integers(0, 3, size=len(ids))
    fill = rng.integers(0, 200, size=ids.shape).astype(np.int32)
    ids[np.arange(2)[None, :] < sizes[:, None]] = fill[np.arange(2)[None, :] < sizes[:, None]]
    compat = (rng.random(200) < 0.7).astype(np.uint8)

    cases = {
        "dijkstra (full tree)": lambda impl: kernels.dijkstra(g, root, impl=impl),
        "dijkstra (reverse, early stop)": lambda impl: kernels.dijkstra(
            g, far, reverse=True, stop=root, impl=impl),
        "lex_walk": lambda impl: kernels.lex_walk(g, dist, root, impl=impl),
        "scan_compatible (20k rows)": lambda impl: kernels.scan_compatible(
            ids, len(ids), compat, impl=impl),
    }
    print(f"graph: {g!r}, best of {args.repeat}")
    print(f"{'kernel':34s} {'cython ms':>10s} {'python ms':>10s} {'speedup':>8s}")
    for name, fn in cases.items():
        fast = best_of(lambda: fn(_speedups), args.repeat)
        slow = best_of(lambda: fn(_purepy), args.repeat)
        print(f"{name:34s} {fast * 1e3:10.3f} {slow * 1e3:10.3f} {slow / fast:7.1f}x")

    code = E2E.format(rows=args.rows, cols=args.cols, queries=args.queries)
    print(f"\nssvpd-plus, {args.queries} queries, k=3, theta=0.5:")
    for pure in ("0", "1"):
        env = dict(os.environ, KDPATHS_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                             text=True, check=True).stdout.split()
        print(f"  {out[0]:7s} {float(out[1]):8.2f} s")


if __name__ == "__main__":
    main()
