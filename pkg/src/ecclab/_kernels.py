"""Compiled subset kernels for the rankwidth dynamic programs.

Vertex sets are int64 masks, so graphs are limited to 62 vertices here;
the callers guard far below that.
"""

import numba as nb
import numpy as np


@nb.njit(cache=True)
def _rank_of_cut(adj, n, s):
    comp = ((np.int64(1) << n) - 1) ^ s
    basis = np.zeros(64, dtype=np.int64)  # basis[b] has leading bit b
    rank = 0
    for v in range(n):
        if not (s >> v) & 1:
            continue
        row = adj[v] & comp
        while row:
            top = 63
            while not (row >> top) & 1:
                top -= 1
            if basis[top] == 0:
                basis[top] = row
                rank += 1
                break
            row ^= basis[top]
    return rank


@nb.njit(cache=True)
def cut_rank_table(adj, n):
    """GF(2) cut-rank of every subset of ``range(n)``, indexed by mask."""
    size = np.int64(1) << n
    out = np.zeros(size, dtype=np.int8)
    for s in range(size):
        # symmetry: only compute the side containing vertex n-1 once
        if n > 0 and (s >> (n - 1)) & 1:
            out[s] = out[(size - 1) ^ s]
        else:
            out[s] = _rank_of_cut(adj, n, s)
    return out


@nb.njit(cache=True)
def rankwidth_dp(ranks, n):
    """Branch-width DP over subsets.

    ``cost[S]`` is the least width of a rooted binary tree with leaf set S,
    counting the edges below its root. ``split[S]`` holds the child
    containing the lowest vertex of S in the first optimal split found.
    """
    size = np.int64(1) << n
    cost = np.zeros(size, dtype=np.int8)
    split = np.zeros(size, dtype=np.int64)
    for s in range(1, size):
        low = s & -s
        if s == low:
            cost[s] = ranks[s]
            continue
        rest = s ^ low
        best = 127
        best_a = 0
        t = (rest - 1) & rest  # proper submasks of rest, largest first
        while True:
            a = low | t
            b = s ^ a
            val = ranks[a]
            if ranks[b] > val:
                val = ranks[b]
            if cost[a] > val:
                val = cost[a]
            if cost[b] > val:
                val = cost[b]
            if val < best:
                best = val
                best_a = a
            if t == 0:
                break
            t = (t - 1) & rest
        cost[s] = best
        split[s] = best_a
    return cost, split


@nb.njit(cache=True)
def linear_rankwidth_dp(ranks, n):
    """``h[S] = max(rho(S) for proper S, min_v h[S - v])``; ``last[S]`` is the argmin."""
    size = np.int64(1) << n
    full = size - 1
    h = np.zeros(size, dtype=np.int8)
    last = np.full(size, -1, dtype=np.int8)
    for s in range(1, size):
        best = 127
        best_v = -1
        for v in range(n):
            if (s >> v) & 1:
                val = h[s ^ (np.int64(1) << v)]
                if val < best:
                    best = val
                    best_v = v
        own = ranks[s] if s != full else 0
        h[s] = own if own > best else best
        last[s] = best_v
    return h, last
