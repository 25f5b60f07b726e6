"""Backend selection for the hot kernels.

The compiled ``_speedups`` extension is used when it imports; otherwise the
pure-Python twin in ``_purepy``.  Setting ``KDPATHS_PURE_PYTHON=1`` forces the
fallback.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from . import _purepy

_impl = _purepy
BACKEND = "python"
if os.environ.get("KDPATHS_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        _impl = _purepy


def _mask(size: int, items) -> bytearray:
    m = bytearray(size)
    if items:
        for i in items:
            m[i] = 1
    return m


class _Adjacency:
    __slots__ = ("indptr", "edges", "nbrs", "weight")

    def __init__(self, indptr, edges, nbrs, weight):
        self.indptr, self.edges, self.nbrs, self.weight = indptr, edges, nbrs, weight


@lru_cache(maxsize=64)
def _py_adjacency(g, reverse: bool) -> _Adjacency:
    if reverse:
        return _Adjacency(g.rev_indptr.tolist(), g.rev_edges.tolist(), g.rev_nbrs.tolist(), g._w)
    return _Adjacency(g.fwd_indptr.tolist(), g.fwd_edges.tolist(), g.fwd_nbrs.tolist(), g._w)


def _adjacency(g, reverse: bool, impl) -> _Adjacency:
    if impl is _purepy:
        return _py_adjacency(g, reverse)
    if reverse:
        return _Adjacency(g.rev_indptr, g.rev_edges, g.rev_nbrs, g.weight)
    return _Adjacency(g.fwd_indptr, g.fwd_edges, g.fwd_nbrs, g.weight)


def dijkstra(g, root: int, reverse: bool = False, banned_nodes=None, banned_edges=None,
             stop: int = -1, impl=None) -> tuple[np.ndarray, np.ndarray]:
    """Distances and parent edges from ``root`` (to ``root`` when ``reverse``)."""
    impl = impl or _impl
    adj = _adjacency(g, reverse, impl)
    return impl.dijkstra(
        adj.indptr, adj.edges, adj.nbrs, adj.weight, root,
        _mask(g.node_count, banned_nodes), _mask(g.edge_count, banned_edges), stop,
    )


def lex_walk(g, dist_to_target: np.ndarray, start: int, banned_edges=None, impl=None) -> list[int]:
    """Lexicographically smallest tight-edge route from ``start`` to the root of
    a reverse distance array."""
    impl = impl or _impl
    adj = _adjacency(g, False, impl)
    dist = dist_to_target if impl is not _purepy else dist_to_target.tolist()
    return impl.lex_walk(adj.indptr, adj.edges, adj.nbrs, adj.weight, dist,
                         _mask(g.edge_count, banned_edges), start)


def scan_compatible(ids: np.ndarray, count: int, compat: np.ndarray, impl=None) -> np.ndarray:
    """Indices of the first ``count`` rows whose ids are all flagged in ``compat``.

    Rows must be prefix-packed: ids first, then ``-1`` padding.
    """
    impl = impl or _impl
    return impl.scan_compatible(ids, count, compat)
