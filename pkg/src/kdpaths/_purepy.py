"""Pure-Python implementations of the kernels in ``_speedups.pyx``.

Same signatures and tie-breaking; selected automatically when the compiled
module is unavailable.
"""

from __future__ import annotations

from heapq import heappop, heappush

import numpy as np


def dijkstra(indptr, adj_edge, adj_nbr, weight, root, node_ban, edge_ban, stop):
    n = len(indptr) - 1
    dist = [float("inf")] * n
    parent = [-1] * n
    if n and not node_ban[root]:
        indptr = indptr.tolist() if hasattr(indptr, "tolist") else indptr
        adj_edge = adj_edge.tolist() if hasattr(adj_edge, "tolist") else adj_edge
        adj_nbr = adj_nbr.tolist() if hasattr(adj_nbr, "tolist") else adj_nbr
        weight = weight.tolist() if hasattr(weight, "tolist") else weight
        settled = [False] * n
        dist[root] = 0.0
        heap = [(0.0, root)]
        while heap:
            d, u = heappop(heap)
            if settled[u]:
                continue
            settled[u] = True
            if u == stop:
                break
            for j in range(indptr[u], indptr[u + 1]):
                e = adj_edge[j]
                v = adj_nbr[j]
                if settled[v] or node_ban[v] or edge_ban[e]:
                    continue
                nd = d + weight[e]
                if nd < dist[v]:
                    dist[v] = nd
                    parent[v] = e
                    heappush(heap, (nd, v))
                elif nd == dist[v] and e < parent[v]:
                    parent[v] = e
    return np.array(dist, dtype=np.float64), np.array(parent, dtype=np.int64)


def lex_walk(indptr, adj_edge, adj_nbr, weight, dist, edge_ban, start):
    out = []
    u = start
    while dist[u] != 0.0:
        best_e = best_v = -1
        for j in range(indptr[u], indptr[u + 1]):
            e = int(adj_edge[j])
            if edge_ban[e]:
                continue
            v = int(adj_nbr[j])
            if weight[e] + dist[v] == dist[u]:
                if best_e < 0 or v < best_v or (v == best_v and e < best_e):
                    best_e, best_v = e, v
        if best_e < 0:
            raise RuntimeError("no tight edge; distance array inconsistent")
        out.append(best_e)
        u = best_v
    return out


def scan_compatible(ids, count, compat):
    if count == 0:
        return np.empty(0, dtype=np.int64)
    ext = np.append(np.asarray(compat, dtype=bool), True)  # index -1 hits the padding slot
    ok = ext[ids[:count]].all(axis=1)
    return np.nonzero(ok)[0].astype(np.int64)
