"""Cut-rank over GF(2), exact and linear rankwidth, and decomposition checks."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .edge_clique import ResourceLimitError
from .graph import Graph, bits, complement

__all__ = [
    "EXACT_MAX_N",
    "LINEAR_MAX_N",
    "MalformedDecomposition",
    "gf2_rank",
    "CutRankOracle",
    "cut_rank",
    "BranchDecomposition",
    "DecompositionCheck",
    "GapReport",
    "exact_rankwidth",
    "linear_rankwidth",
    "caterpillar",
    "greedy_rankwidth_upper_bound",
    "complement_gap_check",
    "verify_branch_decomposition",
]

EXACT_MAX_N = 16
LINEAR_MAX_N = 24


class MalformedDecomposition(ValueError):
    pass


def gf2_rank(rows) -> int:
    """Rank over GF(2) of integer bit rows."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


class CutRankOracle:
    """Memoised cut-rank function of a host graph."""

    def __init__(self, host: Graph):
        self.host = host
        self.memo: dict[int, int] = {}
        self._table = None

    def rank(self, s: int) -> int:
        assert s >> self.host.n == 0, "vertex set from a different graph"
        r = self.memo.get(s)
        if r is None:
            comp = self.host.vertices & ~s
            r = gf2_rank(self.host.adj[v] & comp for v in bits(s))
            self.memo[s] = r
        return r

    __call__ = rank

    def table(self) -> np.ndarray:
        """All ``2**n`` cut-ranks at once (compiled kernel)."""
        if self._table is None:
            if self.host.n > 40:
                raise ResourceLimitError(f"full cut-rank table for n={self.host.n}")
            adj = np.array(self.host.adj, dtype=np.int64)
            self._table = _kernels.cut_rank_table(adj, self.host.n)
        return self._table


def cut_rank(oracle: CutRankOracle, s: int) -> int:
    return oracle.rank(s)


# --- decompositions ----------------------------------------------------------


@dataclass
class BranchDecomposition:
    """Unrooted tree; ``leaves`` maps a tree node to the vertex it carries."""

    n_nodes: int
    edges: list[tuple[int, int]]
    leaves: dict[int, int]
    width: int

    def to_json(self) -> dict:
        return {
            "nodes": list(range(self.n_nodes)),
            "edges": [list(e) for e in self.edges],
            "leaves": {str(k): v for k, v in sorted(self.leaves.items())},
            "width": self.width,
        }

    @classmethod
    def from_json(cls, data: dict) -> BranchDecomposition:
        return cls(
            len(data["nodes"]),
            [tuple(e) for e in data["edges"]],
            {int(k): v for k, v in data["leaves"].items()},
            data["width"],
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1) + "\n")


class _TreeBuilder:
    def __init__(self):
        self.n_nodes = 0
        self.edges: list[tuple[int, int]] = []
        self.leaves: dict[int, int] = {}

    def leaf(self, v: int) -> int:
        node = self.new()
        self.leaves[node] = v
        return node

    def new(self) -> int:
        self.n_nodes += 1
        return self.n_nodes - 1

    def join(self, children: list[int]) -> int:
        node = self.new()
        for c in children:
            self.edges.append((node, c))
        return node

    def finish(self, root_children: list[int], width: int) -> BranchDecomposition:
        # the root is a subdivision vertex; drop it
        if len(root_children) == 2:
            self.edges.append((root_children[0], root_children[1]))
        return self._relabel(width)

    def _relabel(self, width: int) -> BranchDecomposition:
        used = sorted({x for e in self.edges for x in e} | set(self.leaves))
        ids = {old: i for i, old in enumerate(used)}
        return BranchDecomposition(
            len(used),
            [tuple(sorted((ids[a], ids[b]))) for a, b in self.edges],
            {ids[k]: v for k, v in self.leaves.items()},
            width,
        )


def _from_splits(n: int, split, width: int) -> BranchDecomposition:
    tb = _TreeBuilder()
    if n == 0:
        return BranchDecomposition(0, [], {}, 0)
    if n == 1:
        tb.leaf(0)
        return tb.finish([], width)

    def build(s: int) -> int:
        if s & (s - 1) == 0:
            return tb.leaf(s.bit_length() - 1)
        a = int(split[s])
        return tb.join([build(a), build(s ^ a)])

    full = (1 << n) - 1
    a = int(split[full])
    return tb.finish([build(a), build(full ^ a)], width)


def _guard(g: Graph, max_n: int, what: str) -> None:
    if g.n > max_n:
        raise ResourceLimitError(f"{what} limited to n <= {max_n}, got n={g.n}")


def exact_rankwidth(
    g: Graph, max_n: int = EXACT_MAX_N, oracle: CutRankOracle | None = None
) -> tuple[int, BranchDecomposition]:
    """Rankwidth by the 3^n subset DP, with an optimal decomposition."""
    _guard(g, max_n, "exact rankwidth")
    if g.n <= 1:
        return 0, _from_splits(g.n, None, 0)
    oracle = oracle or CutRankOracle(g)
    cost, split = _kernels.rankwidth_dp(oracle.table(), g.n)
    width = int(cost[g.vertices])
    return width, _from_splits(g.n, split, width)


def caterpillar(order: list[int], width: int) -> BranchDecomposition:
    """Branch decomposition whose spine cuts are exactly the prefixes of ``order``."""
    tb = _TreeBuilder()
    leaves = [tb.leaf(v) for v in order]
    if len(order) <= 2:
        return tb.finish(leaves, width)
    spine = [tb.new() for _ in range(len(order) - 2)]
    for i, node in enumerate(spine):
        tb.edges.append((node, leaves[i + 1]))
    tb.edges.append((spine[0], leaves[0]))
    tb.edges.append((spine[-1], leaves[-1]))
    tb.edges.extend(zip(spine, spine[1:]))
    return tb._relabel(width)


def linear_rankwidth(
    g: Graph, max_n: int = LINEAR_MAX_N, oracle: CutRankOracle | None = None
) -> tuple[int, list[int]]:
    """Linear rankwidth by subset DP; returns the width and a realising order."""
    _guard(g, max_n, "linear rankwidth")
    if g.n == 0:
        return 0, []
    oracle = oracle or CutRankOracle(g)
    h, last = _kernels.linear_rankwidth_dp(oracle.table(), g.n)
    order = []
    s = g.vertices
    while s:
        v = int(last[s])
        order.append(v)
        s &= ~(1 << v)
    order.reverse()
    return int(h[g.vertices]), order


def _greedy_order(oracle: CutRankOracle, start: int, rng: random.Random) -> list[int]:
    g = oracle.host
    order = [start]
    s = 1 << start
    rest = [v for v in range(g.n) if v != start]
    while rest:
        rng.shuffle(rest)
        v = min(rest, key=lambda u: oracle.rank(s | 1 << u))
        rest.remove(v)
        order.append(v)
        s |= 1 << v
    return order


def _bisect(oracle: CutRankOracle, s: int, rng: random.Random) -> int:
    """Grow a part of ``s`` vertex by vertex; keep the most balanced good prefix."""
    verts = list(bits(s))
    k = len(verts)
    lo, hi = max(1, k // 3), max(1, k - k // 3)
    a = 1 << rng.choice(verts)
    best_a, best_val = None, None
    size = 1
    while size < hi:
        if size >= lo:
            val = max(oracle.rank(a), oracle.rank(s & ~a))
            if best_val is None or val < best_val:
                best_a, best_val = a, val
        outside = list(bits(s & ~a))
        rng.shuffle(outside)
        v = min(outside, key=lambda u: oracle.rank(a | 1 << u))
        a |= 1 << v
        size += 1
    if best_a is None:
        best_a = a
    return best_a


def _bisection_tree(oracle: CutRankOracle, rng: random.Random) -> BranchDecomposition:
    n = oracle.host.n
    tb = _TreeBuilder()

    def build(s: int) -> int:
        if s & (s - 1) == 0:
            return tb.leaf(s.bit_length() - 1)
        a = _bisect(oracle, s, rng)
        return tb.join([build(a), build(s & ~a)])

    full = (1 << n) - 1
    a = _bisect(oracle, full, rng)
    d = tb.finish([build(a), build(full & ~a)], 0)
    d.width = _tree_width(oracle, d)
    return d


def greedy_rankwidth_upper_bound(
    g: Graph, seed: int = 0, restarts: int = 3
) -> tuple[int, BranchDecomposition]:
    """Heuristic upper bound: best of greedy vertex orders and greedy bisection trees."""
    if g.n <= 1:
        return 0, _from_splits(g.n, None, 0)
    rng = random.Random(seed)
    oracle = CutRankOracle(g)
    best = None
    for _ in range(restarts):
        order = _greedy_order(oracle, rng.randrange(g.n), rng)
        d = caterpillar(order, 0)
        d.width = _tree_width(oracle, d)
        if best is None or d.width < best.width:
            best = d
        d = _bisection_tree(oracle, rng)
        if d.width < best.width:
            best = d
    return best.width, best


# --- verification ------------------------------------------------------------


@dataclass(frozen=True)
class DecompositionCheck:
    width: int
    claimed: int

    @property
    def mismatch(self) -> bool:
        return self.width != self.claimed


def _side_masks(d: BranchDecomposition) -> list[int]:
    """For each tree edge ``(a, b)``, the mask of vertices on ``b``'s side."""
    nbrs: dict[int, list[int]] = {i: [] for i in range(d.n_nodes)}
    for a, b in d.edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    out = []
    for a, b in d.edges:
        mask, stack, seen = 0, [b], {a, b}
        while stack:
            x = stack.pop()
            if x in d.leaves:
                mask |= 1 << d.leaves[x]
            for y in nbrs[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        out.append(mask)
    return out


def _check_shape(g: Graph, d: BranchDecomposition) -> None:
    if sorted(d.leaves.values()) != list(range(g.n)):
        raise MalformedDecomposition("leaves do not biject with the vertex set")
    if g.n == 0:
        if d.n_nodes or d.edges:
            raise MalformedDecomposition("nonempty tree for the empty graph")
        return
    if len(d.edges) != d.n_nodes - 1:
        raise MalformedDecomposition("edge count is not nodes - 1")
    deg = [0] * d.n_nodes
    for a, b in d.edges:
        if not (0 <= a < d.n_nodes and 0 <= b < d.n_nodes) or a == b:
            raise MalformedDecomposition(f"bad tree edge ({a}, {b})")
        deg[a] += 1
        deg[b] += 1
    # connectivity
    nbrs: dict[int, list[int]] = {i: [] for i in range(d.n_nodes)}
    for a, b in d.edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    seen, stack = {0}, [0]
    while stack:
        for y in nbrs[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != d.n_nodes:
        raise MalformedDecomposition("tree is disconnected")
    for node in range(d.n_nodes):
        if node in d.leaves:
            if deg[node] > 1:
                raise MalformedDecomposition(f"leaf node {node} has degree {deg[node]}")
        elif deg[node] != 3:
            raise MalformedDecomposition(f"internal node {node} has degree {deg[node]}")


def _tree_width(oracle: CutRankOracle, d: BranchDecomposition) -> int:
    return max((oracle.rank(s) for s in _side_masks(d)), default=0)


def verify_branch_decomposition(g: Graph, d: BranchDecomposition) -> DecompositionCheck:
    """Recompute every edge cut-rank from scratch and compare with ``d.width``."""
    _check_shape(g, d)
    width = 0
    for s in _side_masks(d):
        comp = g.vertices & ~s
        width = max(width, gf2_rank(g.adj[v] & comp for v in bits(s)))
    return DecompositionCheck(width, d.width)


@dataclass(frozen=True)
class GapReport:
    rw_g: int
    rw_complement: int

    @property
    def gap(self) -> int:
        return abs(self.rw_g - self.rw_complement)

    @property
    def holds(self) -> bool:
        return self.gap <= 1


def complement_gap_check(g: Graph, max_n: int = EXACT_MAX_N) -> GapReport:
    rw_g, _ = exact_rankwidth(g, max_n)
    rw_c, _ = exact_rankwidth(complement(g), max_n)
    return GapReport(rw_g, rw_c)
