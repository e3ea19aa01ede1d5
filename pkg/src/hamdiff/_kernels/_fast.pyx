# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled cycle kernels; see ``hamdiff._kernels.pure`` for the contract."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

ctypedef unsigned long long u64
ctypedef unsigned int u32

cdef extern from *:
    int __builtin_ctz(unsigned int) nogil


cdef u64 _dfs(int s, int v, u32 visited, int depth, u32* adj,
              u64 mask, u64 stop_mask) noexcept nogil:
    cdef u32 nbrs = adj[v]
    cdef u32 bit
    cdef int w
    while nbrs:
        bit = nbrs & (0 - nbrs)
        nbrs ^= bit
        w = __builtin_ctz(bit)
        if w == s:
            if depth >= 3:
                mask |= (<u64>1) << depth
                if mask & stop_mask:
                    return mask
        elif w > s and (visited & bit) == 0:
            mask = _dfs(s, w, visited | bit, depth + 1, adj, mask, stop_mask)
            if mask & stop_mask:
                return mask
    return mask


cdef u64 _cycle_mask(int n, u32* adj, u64 stop_mask) noexcept nogil:
    cdef u64 mask = 0
    cdef u32 above
    cdef int s
    for s in range(n - 2):
        above = adj[s] >> (s + 1)
        # a cycle whose smallest vertex is s needs two neighbors above s
        if above & (above - 1):
            mask = _dfs(s, s, (<u32>1) << s, 1, adj, mask, stop_mask)
            if mask & stop_mask:
                break
    return mask


def cycle_length_mask(int n, adj, u64 stop_mask=0):
    """Bitmask of simple-cycle lengths of an undirected graph."""
    cdef u32 buf[32]
    cdef u64 result
    cdef int i
    if n > 32:
        raise ValueError("cycle kernels support at most 32 vertices")
    for i in range(n):
        buf[i] = adj[i]
    with nogil:
        result = _cycle_mask(n, buf, stop_mask)
    return result


def union_cycle_mask(seq_a, seq_b, u64 stop_mask=0):
    """Cycle-length mask of the union of two 1-based vertex sequences."""
    cdef u32 buf[32]
    cdef u64 result
    cdef int n = len(seq_a)
    cdef int k, u, v
    if n > 32:
        raise ValueError("cycle kernels support at most 32 vertices")
    for k in range(n):
        buf[k] = 0
    for k in range(n - 1):
        u = seq_a[k] - 1
        v = seq_a[k + 1] - 1
        buf[u] |= (<u32>1) << v
        buf[v] |= (<u32>1) << u
    for k in range(n - 1):
        u = seq_b[k] - 1
        v = seq_b[k + 1] - 1
        buf[u] |= (<u32>1) << v
        buf[v] |= (<u32>1) << u
    with nogil:
        result = _cycle_mask(n, buf, stop_mask)
    return result


def row_union_cycle_masks(cnp.uint8_t[:, ::1] paths, Py_ssize_t i,
                          Py_ssize_t j_start=0, u64 stop_mask=0):
    """Cycle-length masks of path i unioned with every path j >= j_start."""
    cdef Py_ssize_t count = paths.shape[0]
    cdef int n = <int>paths.shape[1]
    cdef u32 base[32]
    cdef u32 adj[32]
    cdef int k, u, v
    cdef Py_ssize_t j
    if n > 32:
        raise ValueError("cycle kernels support at most 32 vertices")
    out_arr = np.zeros(count, dtype=np.uint64)
    cdef cnp.uint64_t[::1] out = out_arr
    for k in range(n):
        base[k] = 0
    for k in range(n - 1):
        u = paths[i, k]
        v = paths[i, k + 1]
        base[u] |= (<u32>1) << v
        base[v] |= (<u32>1) << u
    with nogil:
        for j in range(j_start, count):
            for k in range(n):
                adj[k] = base[k]
            for k in range(n - 1):
                u = paths[j, k]
                v = paths[j, k + 1]
                adj[u] |= (<u32>1) << v
                adj[v] |= (<u32>1) << u
            out[j] = _cycle_mask(n, adj, stop_mask)
    return out_arr
