"""Edge-clique graphs K_e(G) and their iterates."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .graph import Graph, bits, isolated_vertices, mask_of, maximal_cliques

__all__ = [
    "ResourceLimitError",
    "EdgeCliqueResult",
    "CorrespondenceReport",
    "edge_clique_graph",
    "iterated_edge_clique",
    "iterate_to",
    "clique_edge_image",
    "verify_clique_correspondence",
    "write_catalog",
    "read_catalog",
]

DEFAULT_VERTEX_BUDGET = 5000


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured size guard."""


@dataclass(frozen=True)
class EdgeCliqueResult:
    graph: Graph
    # catalog[i] is the edge (u, v), u < v, of the source graph behind vertex i
    catalog: tuple[tuple[int, int], ...]

    def __post_init__(self):
        assert self.graph.n == len(self.catalog)


def edge_clique_graph(g: Graph) -> EdgeCliqueResult:
    """Build K_e(g).

    Edge ``{a, b}`` is adjacent to every other edge lying inside the common
    closed neighbourhood ``N[a] & N[b]``; that is exactly the set of edges
    whose endpoints together with ``a, b`` span a clique.
    """
    catalog = tuple(g.edges())
    index = {e: i for i, e in enumerate(catalog)}
    adj = [0] * len(catalog)
    for i, (a, b) in enumerate(catalog):
        common = g.closed_neighborhood(a) & g.closed_neighborhood(b)
        row = 0
        for c in bits(common):
            for d in bits(g.adj[c] & common & ~((2 << c) - 1)):
                row |= 1 << index[(c, d)]
        adj[i] = row & ~(1 << i)
    return EdgeCliqueResult(Graph(len(catalog), adj), catalog)


def iterated_edge_clique(
    g: Graph, r: int, budget: int = DEFAULT_VERTEX_BUDGET
) -> list[EdgeCliqueResult]:
    """Return ``[K_e^1(g), ..., K_e^r(g)]``; an empty list for ``r == 0``.

    Raises :class:`ResourceLimitError` before building any graph with more
    than ``budget`` vertices.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    chain: list[EdgeCliqueResult] = []
    current = g
    for step in range(1, r + 1):
        if current.m > budget:
            raise ResourceLimitError(
                f"K_e^{step} would have {current.m} vertices (budget {budget})"
            )
        res = edge_clique_graph(current)
        chain.append(res)
        current = res.graph
    return chain


def iterate_to(g: Graph, r: int, budget: int = DEFAULT_VERTEX_BUDGET) -> Graph:
    chain = iterated_edge_clique(g, r, budget)
    return chain[-1].graph if chain else g


def clique_edge_image(clique: int, catalog_index: dict[tuple[int, int], int]) -> int:
    """Mask of K_e vertices corresponding to the edges inside ``clique``."""
    verts = list(bits(clique))
    return mask_of(
        catalog_index[(u, v)] for i, u in enumerate(verts) for v in verts[i + 1 :]
    )


@dataclass(frozen=True)
class CorrespondenceReport:
    count_g: int
    count_ke: int
    matched: bool
    unmatched: tuple[int, ...] = ()  # cliques of g whose image is not maximal


def verify_clique_correspondence(g: Graph) -> CorrespondenceReport:
    """Check the maximal-clique bijection between ``g`` and ``K_e(g)``.

    Each maximal clique of ``g`` is sent to the set of its edges. The map
    must land on maximal cliques of K_e(g), be injective, and hit all of
    them. Graphs with isolated vertices are rejected: a singleton maximal
    clique has no edge to map to.
    """
    iso = isolated_vertices(g)
    if iso:
        raise ValueError(f"isolated vertices present: {list(bits(iso))}")
    ke = edge_clique_graph(g)
    index = {e: i for i, e in enumerate(ke.catalog)}
    cliques_g = maximal_cliques(g)
    cliques_ke = set(maximal_cliques(ke.graph))
    images = {}
    unmatched = []
    for c in cliques_g:
        img = clique_edge_image(c, index)
        images[img] = c
        if img not in cliques_ke:
            unmatched.append(c)
    injective = len(images) == len(cliques_g)
    matched = injective and not unmatched and len(cliques_g) == len(cliques_ke)
    return CorrespondenceReport(len(cliques_g), len(cliques_ke), matched, tuple(unmatched))


def write_catalog(catalog, path: str | Path) -> None:
    """One line ``i u v`` per K_e vertex; all ids are 1-based like the graph files."""
    lines = [f"{i + 1} {u + 1} {v + 1}" for i, (u, v) in enumerate(catalog)]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))


def read_catalog(path: str | Path) -> tuple[tuple[int, int], ...]:
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        if not line.strip():
            continue
        i, u, v = (int(x) for x in line.split())
        if i != lineno:
            raise ValueError(f"catalog line {lineno} has index {i}")
        out.append((u - 1, v - 1))
    return tuple(out)
