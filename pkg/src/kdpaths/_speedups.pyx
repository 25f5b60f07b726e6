# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled kernels: banned-mask Dijkstra, lexicographic tight-edge walk, subset scan."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free
from libc.math cimport INFINITY

cnp.import_array()

ctypedef cnp.int64_t i64
ctypedef cnp.int32_t i32
ctypedef cnp.uint8_t u8


cdef inline bint _less(double ka, i64 na, double kb, i64 nb) noexcept nogil:
    return ka < kb or (ka == kb and na < nb)


cdef inline void _push(double* keys, i64* nodes, i64* size, double key, i64 node) noexcept nogil:
    cdef i64 i = size[0]
    cdef i64 parent
    size[0] += 1
    while i > 0:
        parent = (i - 1) >> 1
        if not _less(key, node, keys[parent], nodes[parent]):
            break
        keys[i] = keys[parent]
        nodes[i] = nodes[parent]
        i = parent
    keys[i] = key
    nodes[i] = node


cdef inline void _pop(double* keys, i64* nodes, i64* size) noexcept nogil:
    cdef i64 n = size[0] - 1
    cdef double key = keys[n]
    cdef i64 node = nodes[n]
    cdef i64 i = 0
    cdef i64 child
    size[0] = n
    while True:
        child = 2 * i + 1
        if child >= n:
            break
        if child + 1 < n and _less(keys[child + 1], nodes[child + 1], keys[child], nodes[child]):
            child += 1
        if not _less(keys[child], nodes[child], key, node):
            break
        keys[i] = keys[child]
        nodes[i] = nodes[child]
        i = child
    keys[i] = key
    nodes[i] = node


def dijkstra(const i64[::1] indptr, const i64[::1] adj_edge, const i64[::1] adj_nbr,
             const double[::1] weight, i64 root, const u8[::1] node_ban,
             const u8[::1] edge_ban, i64 stop):
    """Single-source distances over one CSR direction.

    Parent ties resolve to the smallest edge id; stops once ``stop`` settles.
    """
    cdef i64 n = indptr.shape[0] - 1
    dist_arr = np.full(n, np.inf)
    parent_arr = np.full(n, -1, dtype=np.int64)
    cdef double[::1] dist = dist_arr
    cdef i64[::1] parent = parent_arr
    cdef u8* settled
    cdef double* hkeys
    cdef i64* hnodes
    cdef i64 hsize = 0
    cdef i64 cap = adj_edge.shape[0] + 1
    cdef i64 u, v, e, j
    cdef double d, nd
    if n == 0 or node_ban[root]:
        return dist_arr, parent_arr
    settled = <u8*> malloc(n * sizeof(u8))
    hkeys = <double*> malloc(cap * sizeof(double))
    hnodes = <i64*> malloc(cap * sizeof(i64))
    if settled == NULL or hkeys == NULL or hnodes == NULL:
        free(settled); free(hkeys); free(hnodes)
        raise MemoryError()
    with nogil:
        for j in range(n):
            settled[j] = 0
        dist[root] = 0.0
        _push(hkeys, hnodes, &hsize, 0.0, root)
        while hsize > 0:
            d = hkeys[0]
            u = hnodes[0]
            _pop(hkeys, hnodes, &hsize)
            if settled[u]:
                continue
            settled[u] = 1
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
                    _push(hkeys, hnodes, &hsize, nd, v)
                elif nd == dist[v] and e < parent[v]:
                    parent[v] = e
    free(settled)
    free(hkeys)
    free(hnodes)
    return dist_arr, parent_arr


def lex_walk(const i64[::1] indptr, const i64[::1] adj_edge, const i64[::1] adj_nbr,
             const double[::1] weight, const double[::1] dist, const u8[::1] edge_ban,
             i64 start):
    """Follow tight edges toward the distance root, always taking the smallest
    (neighbour id, edge id)."""
    out = []
    cdef i64 u = start
    cdef i64 j, e, v, best_e, best_v
    while dist[u] != 0.0:
        best_e = -1
        best_v = -1
        for j in range(indptr[u], indptr[u + 1]):
            e = adj_edge[j]
            if edge_ban[e]:
                continue
            v = adj_nbr[j]
            if weight[e] + dist[v] == dist[u]:
                if best_e < 0 or v < best_v or (v == best_v and e < best_e):
                    best_e = e
                    best_v = v
        if best_e < 0:
            raise RuntimeError("no tight edge; distance array inconsistent")
        out.append(best_e)
        u = best_v
    return out


def scan_compatible(const i32[:, ::1] ids, i64 count, const u8[::1] compat):
    """Rows among the first ``count`` whose ids are all flagged in ``compat`` (-1 = padding)."""
    cdef i64 width = ids.shape[1]
    hits_arr = np.empty(count, dtype=np.int64)
    cdef i64[::1] hits = hits_arr
    cdef i64 nh = 0
    cdef i64 r, c
    cdef i32 x
    cdef bint ok
    with nogil:
        for r in range(count):
            ok = True
            for c in range(width):
                x = ids[r, c]
                if x < 0:
                    break
                if not compat[x]:
                    ok = False
                    break
            if ok:
                hits[nh] = r
                nh += 1
    return hits_arr[:nh]
