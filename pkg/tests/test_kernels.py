import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_graph
from kdpaths import _purepy, kernels

try:
    from kdpaths import _speedups
except ImportError:  # pragma: no cover
    _speedups = None

needs_ext = pytest.mark.skipif(_speedups is None, reason="compiled extension not built")


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


@needs_ext
@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_dijkstra_backends_agree(seed, reverse):
    rng = random.Random(seed)
    g = random_graph(rng, 3, 15, 3, 40, w_hi=3)
    root = rng.randrange(g.node_count)
    bn = rng.sample(range(g.node_count), rng.randint(0, 2))
    be = rng.sample(range(g.edge_count), rng.randint(0, 3))
    stop = rng.choice([-1, rng.randrange(g.node_count)])
    a = kernels.dijkstra(g, root, reverse, bn, be, stop, impl=_speedups)
    b = kernels.dijkstra(g, root, reverse, bn, be, stop, impl=_purepy)
    assert np.array_equal(np.asarray(a[0]), np.asarray(b[0]))
    assert np.array_equal(np.asarray(a[1]), np.asarray(b[1]))


@needs_ext
@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_lex_walk_backends_agree(seed):
    rng = random.Random(seed)
    g = random_graph(rng, 3, 15, 3, 40, w_hi=3)
    t = rng.randrange(g.node_count)
    dist, _ = kernels.dijkstra(g, t, reverse=True, impl=_purepy)
    dist = np.asarray(dist)
    for start in range(g.node_count):
        if start != t and np.isfinite(dist[start]):
            a = kernels.lex_walk(g, dist, start, impl=_speedups)
            b = kernels.lex_walk(g, dist, start, impl=_purepy)
            assert list(a) == list(b)
            assert sum(g.edge(e)[2] for e in a) == dist[start]


@needs_ext
@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_scan_backends_agree(seed):
    rng = np.random.default_rng(seed)
    width = int(rng.integers(1, 5))
    rows = int(rng.integers(1, 50))
    n = int(rng.integers(1, 20))
    ids = rng.integers(0, n, size=(rows + 5, width)).astype(np.int32)
    # rows are prefix-packed: -1 padding only trails the ids
    sizes = rng.integers(0, width + 1, size=rows + 5)
    ids[np.arange(width)[None, :] >= sizes[:, None]] = -1
    compat = (rng.random(n) < 0.6).astype(np.uint8)
    a = kernels.scan_compatible(ids, rows, compat, impl=_speedups)
    b = kernels.scan_compatible(ids, rows, compat, impl=_purepy)
    assert np.array_equal(np.asarray(a), np.asarray(b))
    want = [r for r in range(rows) if all(x < 0 or compat[x] for x in ids[r])]
    assert list(np.asarray(a)) == want


def test_pure_python_fallback_end_to_end():
    import os
    import subprocess
    import sys

    code = (
        "from kdpaths import BACKEND, Query, gen_grid, solve_exact, solve_svp_d\n"
        "g = gen_grid(8, 8, seed=3)\n"
        "q = Query(0, 63, 3, 0.5)\n"
        "print(BACKEND, solve_exact(g, q).collective_length, solve_svp_d(g, q).collective_length)\n"
    )
    env = dict(os.environ, KDPATHS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    from kdpaths import Query, gen_grid, solve_exact, solve_svp_d

    g = gen_grid(8, 8, seed=3)
    q = Query(0, 63, 3, 0.5)
    assert out[0] == "python"
    assert float(out[1]) == solve_exact(g, q).collective_length
    assert float(out[2]) == solve_svp_d(g, q).collective_length
