"""Exact solvers for alpha, chi, kappa and theta_e with checkable certificates.

Every public solver returns a :class:`SolveReport`; its certificate is
re-verified before the report is handed back.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

from .edge_clique import clique_edge_image
from .graph import (
    Graph,
    bits,
    complement,
    equivalent_vertices,
    isolated_vertices,
    maximal_cliques,
    popcount,
)

__all__ = [
    "SolveTimeout",
    "CliqueCover",
    "SolveReport",
    "GyarfasBound",
    "max_clique",
    "max_independent_set",
    "chromatic_number",
    "vertex_clique_cover",
    "edge_clique_cover",
    "gyarfas_lower_bound",
    "verify_cover",
    "verify_coloring",
    "verify_vertex_partition",
    "dsatur_coloring",
]


class SolveTimeout(RuntimeError):
    """Raised when a solve exceeds its time limit."""


class _Budget:
    """Node counter with an optional wall-clock deadline."""

    __slots__ = ("nodes", "deadline")

    def __init__(self, time_limit: float | None):
        self.nodes = 0
        self.deadline = None if time_limit is None else time.monotonic() + time_limit

    def tick(self) -> None:
        self.nodes += 1
        if self.deadline is not None and not self.nodes & 1023:
            if time.monotonic() > self.deadline:
                raise SolveTimeout(f"time limit hit after {self.nodes} nodes")


@dataclass(frozen=True)
class CliqueCover:
    graph: Graph
    parts: tuple[int, ...]

    def __len__(self):
        return len(self.parts)

    def as_lists(self) -> list[list[int]]:
        return [list(bits(p)) for p in self.parts]


@dataclass
class SolveReport:
    objective: int
    certificate: Any
    lower_bound_used: int
    nodes_explored: int = 0
    wall_time: float = 0.0
    extra: dict = field(default_factory=dict)

    def certificate_json(self) -> Any:
        c = self.certificate
        if isinstance(c, CliqueCover):
            return c.as_lists()
        if isinstance(c, int):
            return list(bits(c))
        return list(c)


# --- certificate checks -------------------------------------------------------


def verify_cover(g: Graph, cover: CliqueCover) -> bool:
    """True iff every part is a clique of ``g`` and every edge lies in a part."""
    full = g.vertices
    for p in cover.parts:
        if p & ~full or not g.is_clique(p):
            return False
    for u, v in g.edges():
        pair = 1 << u | 1 << v
        if not any(p & pair == pair for p in cover.parts):
            return False
    return True


def verify_vertex_partition(g: Graph, cover: CliqueCover) -> bool:
    """True iff the parts are nonempty cliques partitioning ``V(g)``."""
    seen = 0
    for p in cover.parts:
        if not p or p & seen or not g.is_clique(p):
            return False
        seen |= p
    return seen == g.vertices


def verify_coloring(g: Graph, coloring) -> bool:
    if len(coloring) != g.n:
        return False
    return all(coloring[u] != coloring[v] for u, v in g.edges())


# --- maximum clique / independent set ----------------------------------------


def _color_sort(adj, p: int) -> tuple[list[int], list[int]]:
    """Greedy colouring of ``p``; returns vertices and running colour bounds."""
    order, bounds = [], []
    color = 0
    rest = p
    while rest:
        color += 1
        avail = rest
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            order.append(v)
            bounds.append(color)
            rest ^= low
            avail &= ~adj[v] & ~low
    return order, bounds


def _max_clique(g: Graph, budget: _Budget) -> int:
    adj = g.adj
    best = [0, 0]  # size, mask

    def expand(r: int, size: int, p: int) -> None:
        budget.tick()
        order, bounds = _color_sort(adj, p)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best[0]:
                return
            v = order[i]
            bit = 1 << v
            np_ = p & adj[v]
            if np_:
                expand(r | bit, size + 1, np_)
            elif size + 1 > best[0]:
                best[0], best[1] = size + 1, r | bit
            p &= ~bit

    if g.n:
        expand(0, 0, g.vertices)
    return best[1]


def max_clique(g: Graph, time_limit: float | None = None) -> SolveReport:
    t0 = time.perf_counter()
    budget = _Budget(time_limit)
    c = _max_clique(g, budget)
    assert g.is_clique(c)
    return SolveReport(popcount(c), c, 0, budget.nodes, time.perf_counter() - t0)


def max_independent_set(g: Graph, time_limit: float | None = None) -> SolveReport:
    """alpha(g) with a witness, as a maximum clique of the complement."""
    t0 = time.perf_counter()
    budget = _Budget(time_limit)
    s = _max_clique(complement(g), budget)
    assert g.is_independent(s)
    return SolveReport(popcount(s), s, 0, budget.nodes, time.perf_counter() - t0)


# --- colouring ----------------------------------------------------------------


def dsatur_coloring(g: Graph) -> list[int]:
    """Greedy DSATUR colouring (saturation, then degree, then lowest id)."""
    n = g.n
    colors = [-1] * n
    nbr_colors = [0] * n
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (popcount(nbr_colors[u]), g.degree(u), -u),
        )
        forb = nbr_colors[v]
        c = 0
        while forb >> c & 1:
            c += 1
        colors[v] = c
        for u in bits(g.adj[v]):
            nbr_colors[u] |= 1 << c
    return colors


def _k_coloring(g: Graph, k: int, seed_clique: int, budget: _Budget) -> list[int] | None:
    adj = g.adj
    n = g.n
    classes = [0] * k
    pre = list(bits(seed_clique))
    if len(pre) > k:
        return None
    for c, v in enumerate(pre):
        classes[c] = 1 << v

    def pick(uncolored: int) -> tuple[int, int]:
        best_v, best_key, best_forb = -1, None, 0
        for v in bits(uncolored):
            forb = 0
            for c in range(k):
                if classes[c] & adj[v]:
                    forb |= 1 << c
            key = (popcount(forb), popcount(adj[v] & uncolored))
            if best_key is None or key > best_key:
                best_v, best_key, best_forb = v, key, forb
        return best_v, best_forb

    def rec(uncolored: int, used: int) -> bool:
        budget.tick()
        if not uncolored:
            return True
        v, forb = pick(uncolored)
        bit = 1 << v
        for c in range(min(k, used + 1)):
            if forb >> c & 1:
                continue
            classes[c] |= bit
            if rec(uncolored & ~bit, max(used, c + 1)):
                return True
            classes[c] &= ~bit
        return False

    if not rec(g.vertices & ~seed_clique, len(pre)):
        return None
    coloring = [-1] * n
    for c, cls in enumerate(classes):
        for v in bits(cls):
            coloring[v] = c
    return coloring


def chromatic_number(g: Graph, time_limit: float | None = None) -> SolveReport:
    """chi(g) by iterative deepening on k between omega(g) and DSATUR."""
    t0 = time.perf_counter()
    budget = _Budget(time_limit)
    if g.n == 0:
        return SolveReport(0, (), 0, 0, time.perf_counter() - t0)
    clique = _max_clique(g, budget)
    lb = popcount(clique)
    best = dsatur_coloring(g)
    ub = max(best) + 1
    for k in range(lb, ub):
        col = _k_coloring(g, k, clique, budget)
        if col is not None:
            best = col
            break
    assert verify_coloring(g, best)
    return SolveReport(max(best) + 1, tuple(best), lb, budget.nodes, time.perf_counter() - t0)


def vertex_clique_cover(g: Graph, time_limit: float | None = None) -> SolveReport:
    """kappa(g) = chi(complement(g)); colour classes become the cliques."""
    rep = chromatic_number(complement(g), time_limit)
    classes: dict[int, int] = {}
    for v, c in enumerate(rep.certificate):
        classes[c] = classes.get(c, 0) | 1 << v
    cover = CliqueCover(g, tuple(classes[c] for c in sorted(classes)))
    assert verify_vertex_partition(g, cover) and len(cover) == rep.objective
    rep.certificate = cover
    return rep


# --- edge-clique cover ----------------------------------------------------------


@dataclass(frozen=True)
class GyarfasBound:
    value: int | None  # None when the theorem's hypothesis fails
    isolated: tuple[int, ...] = ()
    equivalent: tuple[tuple[int, int], ...] = ()

    @property
    def applicable(self) -> bool:
        return self.value is not None

    def __str__(self):
        return "NA" if self.value is None else str(self.value)


def gyarfas_lower_bound(g: Graph) -> GyarfasBound:
    """ceil(log2(n + 1)) when ``g`` has no isolated and no equivalent vertices."""
    iso = tuple(bits(isolated_vertices(g)))
    eq = tuple(equivalent_vertices(g))
    if iso or eq:
        return GyarfasBound(None, iso, eq)
    # ceil(log2(n + 1)) == n.bit_length() for n >= 0
    return GyarfasBound(g.n.bit_length())


def _lp_floor(sets: list[int], m: int) -> int:
    """Ceiling of the fractional set-cover optimum."""
    import numpy as np
    from scipy.optimize import linprog

    a = np.zeros((m, len(sets)))
    for j, s in enumerate(sets):
        for e in bits(s):
            a[e, j] = 1.0
    res = linprog(
        np.ones(len(sets)), A_ub=-a, b_ub=-np.ones(m), bounds=(0, 1), method="highs"
    )
    if res.status != 0:
        return 0
    return int(np.ceil(res.fun - 1e-7))


def _greedy_cover(sets: list[int], universe: int) -> list[int]:
    chosen = []
    left = universe
    while left:
        j = max(range(len(sets)), key=lambda i: (popcount(sets[i] & left), -i))
        chosen.append(j)
        left &= ~sets[j]
    return chosen


def edge_clique_cover(
    g: Graph, time_limit: float | None = None, use_lp: bool = True
) -> SolveReport:
    """theta_e(g) with an optimal cover by maximal cliques.

    Set cover over the maximal cliques (edge sets as bitmasks) solved by
    depth-first branch and bound. Each node branches on the uncovered edge
    with the fewest admissible cliques; a clique tried in one branch is
    forbidden in later sibling branches. Node bound: the larger of a
    greedy packing of pairwise non-co-coverable edges and
    ``ceil(uncovered / largest remaining clique)``.
    """
    t0 = time.perf_counter()
    budget = _Budget(time_limit)
    edges = g.edges()
    m = len(edges)
    if m == 0:
        return SolveReport(0, CliqueCover(g, ()), 0, 0, time.perf_counter() - t0)
    index = {e: i for i, e in enumerate(edges)}
    cliques = [c for c in maximal_cliques(g) if popcount(c) >= 2]
    sets = [clique_edge_image(c, index) for c in cliques]
    k = len(sets)
    cand = [0] * m
    for j, s in enumerate(sets):
        for e in bits(s):
            cand[e] |= 1 << j
    reach = [0] * m
    for e in range(m):
        r = 0
        for j in bits(cand[e]):
            r |= sets[j]
        reach[e] = r
    universe = (1 << m) - 1

    def packing(left: int) -> int:
        count = 0
        while left:
            e = (left & -left).bit_length() - 1
            count += 1
            left &= ~reach[e]
        return count

    gy = gyarfas_lower_bound(g)
    lb = max(gy.value or 0, packing(universe))
    if use_lp:
        lb = max(lb, _lp_floor(sets, m))
    best = _greedy_cover(sets, universe)

    def search(left: int, chosen: list[int], forbidden: int) -> None:
        nonlocal best
        budget.tick()
        if not left:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        depth = len(chosen)
        if depth + 1 >= len(best):
            return
        allowed = ~forbidden
        usable = _union_cand(cand, left) & allowed
        biggest = max((popcount(sets[j] & left) for j in bits(usable)), default=0)
        if biggest == 0:
            return
        bound = max(packing(left), -(-popcount(left) // biggest))
        if depth + bound >= len(best):
            return
        c_best, n_best = 0, k + 1
        for e in bits(left):
            c = cand[e] & allowed
            cnt = popcount(c)
            if cnt < n_best:
                c_best, n_best = c, cnt
                if cnt <= 1:
                    break
        if n_best == 0:
            return
        options = sorted(bits(c_best), key=lambda j: (-popcount(sets[j] & left), j))
        for j in options:
            chosen.append(j)
            search(left & ~sets[j], chosen, forbidden)
            chosen.pop()
            forbidden |= 1 << j
            if len(best) <= max(lb, depth + 1):
                return

    if len(best) > lb:
        search(universe, [], 0)
    cover = CliqueCover(g, tuple(cliques[j] for j in sorted(best)))
    assert verify_cover(g, cover) and len(cover) >= lb
    rep = SolveReport(len(cover), cover, lb, budget.nodes, time.perf_counter() - t0)
    rep.extra["gyarfas"] = gy.value
    rep.extra["max_cliques"] = k
    return rep


def _union_cand(cand: list[int], left: int) -> int:
    out = 0
    for e in bits(left):
        out |= cand[e]
    return out
