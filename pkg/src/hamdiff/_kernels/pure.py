"""Pure-Python cycle kernels.

Same contract as the compiled module ``_fast``: graphs are given as
per-vertex neighbor bitmasks over 0-based vertices (n <= 32), cycle-length
sets come back as bitmasks (bit L set iff a simple cycle on L vertices
exists).  A nonzero ``stop_mask`` lets the search return as soon as any
length from the mask has been seen; the rest of the result is then
incomplete and only ``result & stop_mask`` is meaningful.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


def _dfs(s: int, v: int, visited: int, depth: int, adj: Sequence[int],
         mask: int, stop_mask: int) -> int:
    nbrs = adj[v]
    while nbrs:
        bit = nbrs & -nbrs
        nbrs ^= bit
        w = bit.bit_length() - 1
        if w == s:
            if depth >= 3:
                mask |= 1 << depth
                if mask & stop_mask:
                    return mask
        elif w > s and not visited & bit:
            mask = _dfs(s, w, visited | bit, depth + 1, adj, mask, stop_mask)
            if mask & stop_mask:
                return mask
    return mask


def cycle_length_mask(n: int, adj: Sequence[int], stop_mask: int = 0) -> int:
    """Bitmask of simple-cycle lengths of an undirected graph."""
    if n > 32:
        raise ValueError("cycle kernels support at most 32 vertices")
    mask = 0
    for s in range(n - 2):
        above = adj[s] >> (s + 1)
        # a cycle whose smallest vertex is s needs two neighbors above s
        if above & (above - 1):
            mask = _dfs(s, s, 1 << s, 1, adj, mask, stop_mask)
            if mask & stop_mask:
                break
    return mask


def _add_path_edges(adj: list[int], seq: Sequence[int]) -> None:
    for u, v in zip(seq, seq[1:]):
        adj[u] |= 1 << v
        adj[v] |= 1 << u


def union_cycle_mask(seq_a: Sequence[int], seq_b: Sequence[int],
                     stop_mask: int = 0) -> int:
    """Cycle-length mask of the union of two 1-based vertex sequences."""
    n = len(seq_a)
    adj = [0] * n
    _add_path_edges(adj, [v - 1 for v in seq_a])
    _add_path_edges(adj, [v - 1 for v in seq_b])
    return cycle_length_mask(n, adj, stop_mask)


def row_union_cycle_masks(paths: np.ndarray, i: int, j_start: int = 0,
                          stop_mask: int = 0) -> np.ndarray:
    """Cycle-length masks of path i unioned with every path j >= j_start.

    ``paths`` is a (P, n) uint8 matrix of 0-based vertex sequences.  Entries
    below ``j_start`` of the returned uint64 array are left at zero.
    """
    count, n = paths.shape
    base = [0] * n
    _add_path_edges(base, paths[i].tolist())
    out = np.zeros(count, dtype=np.uint64)
    for j in range(j_start, count):
        adj = base.copy()
        _add_path_edges(adj, paths[j].tolist())
        out[j] = cycle_length_mask(n, adj, stop_mask)
    return out
