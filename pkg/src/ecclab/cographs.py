"""Cotrees, cograph recognition, and the edge-clique-cover sweep over cographs."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .edge_clique import ResourceLimitError, edge_clique_graph
from .graph import Graph, bits, maximal_cliques
from .solvers import SolveTimeout, edge_clique_cover, gyarfas_lower_bound, max_independent_set

__all__ = [
    "LEAF",
    "UNION",
    "JOIN",
    "Cotree",
    "MalformedCotree",
    "leaf",
    "union",
    "join",
    "normalize",
    "cograph_from_cotree",
    "is_cograph",
    "find_induced_p4",
    "random_cotree",
    "SweepRow",
    "sweep_row",
    "conjecture_sweep",
    "SWEEP_COLUMNS",
    "format_sweep",
]

LEAF, UNION, JOIN = "leaf", "union", "join"


class MalformedCotree(ValueError):
    pass


@dataclass(frozen=True)
class Cotree:
    kind: str
    children: tuple[Cotree, ...] = ()
    vertex: int | None = None

    def leaves(self) -> list[int]:
        if self.kind == LEAF:
            return [self.vertex]
        return [v for c in self.children for v in c.leaves()]

    def __str__(self):
        if self.kind == LEAF:
            return str(self.vertex)
        tag = "U" if self.kind == UNION else "J"
        return f"{tag}({','.join(str(c) for c in self.children)})"


def leaf(v: int) -> Cotree:
    return Cotree(LEAF, (), v)


def union(*children: Cotree) -> Cotree:
    return Cotree(UNION, tuple(children))


def join(*children: Cotree) -> Cotree:
    return Cotree(JOIN, tuple(children))


def normalize(t: Cotree) -> Cotree:
    """Merge every internal node into a parent carrying the same label."""
    if t.kind == LEAF:
        return t
    kids: list[Cotree] = []
    for c in t.children:
        c = normalize(c)
        if c.kind == t.kind:
            kids.extend(c.children)
        else:
            kids.append(c)
    return Cotree(t.kind, tuple(kids))


def _validate(t: Cotree) -> int:
    def walk(node: Cotree) -> None:
        if node.kind == LEAF:
            if node.children or node.vertex is None:
                raise MalformedCotree("leaf must carry a vertex and no children")
        elif node.kind in (UNION, JOIN):
            if len(node.children) < 2:
                raise MalformedCotree(f"{node.kind} node with {len(node.children)} children")
            for c in node.children:
                walk(c)
        else:
            raise MalformedCotree(f"unknown node kind {node.kind!r}")

    walk(t)
    labels = t.leaves()
    if sorted(labels) != list(range(len(labels))):
        raise MalformedCotree("leaf labels must be exactly 0..n-1")
    return len(labels)


def cograph_from_cotree(t: Cotree) -> Graph:
    """Vertices are adjacent iff their lowest common ancestor is a JOIN node."""
    n = _validate(t)
    adj = [0] * n

    def build(node: Cotree) -> int:
        if node.kind == LEAF:
            return 1 << node.vertex
        parts = [build(c) for c in node.children]
        total = 0
        for p in parts:
            total |= p
        if node.kind == JOIN:
            for p in parts:
                for v in bits(p):
                    adj[v] |= total & ~p
        return total

    build(t)
    return Graph(n, adj)


def find_induced_p4(g: Graph) -> tuple[int, int, int, int] | None:
    """An induced path ``a-b-c-d`` if one exists, else None.

    Tries every edge ``b-c`` as the middle: ``a`` ranges over ``N(b) - N[c]``,
    ``d`` over ``N(c) - N[b]``, and the path is induced iff ``a`` and ``d``
    are non-adjacent.
    """
    adj = g.adj
    for b, c in g.edges():
        left = adj[b] & ~adj[c] & ~(1 << c)
        right = adj[c] & ~adj[b] & ~(1 << b)
        if not left or not right:
            continue
        for a in bits(left):
            free = right & ~adj[a]
            if free:
                d = (free & -free).bit_length() - 1
                return a, b, c, d
    return None


def is_cograph(g: Graph, max_n: int = 40) -> tuple[bool, tuple[int, int, int, int] | None]:
    """P4-freeness by exhaustive search; returns (verdict, witness)."""
    if g.n > max_n:
        raise ValueError(f"brute-force recognition limited to n <= {max_n}")
    w = find_induced_p4(g)
    return w is None, w


def random_cotree(n: int, seed: int = 0) -> Cotree:
    """Random normalised cotree on ``n`` leaves, reproducible per seed.

    Vertices are shuffled, then split recursively into 2-4 consecutive
    blocks; labels alternate down the tree so the result is already
    normalised. The root label is a coin flip.
    """
    if n < 1:
        raise ValueError("a cotree needs at least one leaf")
    rng = random.Random(seed)
    verts = list(range(n))
    rng.shuffle(verts)

    def build(vs: list[int], kind: str) -> Cotree:
        if len(vs) == 1:
            return leaf(vs[0])
        k = rng.randint(2, min(4, len(vs)))
        cuts = sorted(rng.sample(range(1, len(vs)), k - 1))
        blocks = [vs[i:j] for i, j in zip([0] + cuts, cuts + [len(vs)])]
        other = JOIN if kind == UNION else UNION
        return Cotree(kind, tuple(build(b, other) for b in blocks))

    return build(verts, rng.choice((UNION, JOIN)))


# --- conjecture sweep --------------------------------------------------------

SWEEP_COLUMNS = ("id", "n", "m", "theta_e", "gyarfas_lb", "alpha_ke", "max_cliques", "status")


@dataclass(frozen=True)
class SweepRow:
    id: str
    n: int
    m: int
    theta_e: int | None
    gyarfas_lb: int | None
    alpha_ke: int | None
    max_cliques: int
    status: str
    cotree: str = ""

    def cells(self) -> list[str]:
        def show(x):
            return "NA" if x is None else str(x)

        return [self.id, str(self.n), str(self.m), show(self.theta_e), show(self.gyarfas_lb),
                show(self.alpha_ke), str(self.max_cliques), self.status]


def sweep_row(row_id: str, t: Cotree, time_limit: float | None = None) -> SweepRow:
    g = cograph_from_cotree(t)
    ok, witness = is_cograph(g)
    assert ok, f"cotree produced an induced P4 {witness}"
    gy = gyarfas_lower_bound(g).value
    n_cliques = len(maximal_cliques(g))
    try:
        theta = edge_clique_cover(g, time_limit=time_limit).objective
        alpha = max_independent_set(edge_clique_graph(g).graph, time_limit=time_limit).objective
    except SolveTimeout:
        return SweepRow(row_id, g.n, g.m, None, gy, None, n_cliques, "timeout", str(t))
    status = "ok"
    if gy is not None and theta < gy:
        status = "bound-violated"
    return SweepRow(row_id, g.n, g.m, theta, gy, alpha, n_cliques, status, str(t))


def conjecture_sweep(
    n_max: int, samples: int, seed: int = 0, time_limit: float | None = None,
    max_n: int = 14,
) -> list[SweepRow]:
    """Exact theta_e and companions for ``samples`` random cographs per ``n <= n_max``."""
    if n_max > max_n:
        raise ResourceLimitError(f"n_max={n_max} exceeds the sweep guard {max_n}")
    master = random.Random(seed)
    rows = []
    for n in range(1, n_max + 1):
        for k in range(samples):
            t = random_cotree(n, master.getrandbits(64))
            rows.append(sweep_row(f"n{n}-{k}", t, time_limit))
    return rows


def format_sweep(rows: list[SweepRow]) -> str:
    lines = ["\t".join(SWEEP_COLUMNS)]
    lines.extend("\t".join(r.cells()) for r in rows)
    return "\n".join(lines) + "\n"
