"""Test corpora of small graphs."""

from __future__ import annotations

from functools import lru_cache

from .graph import (
    Graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    make_cocktail_party,
    path_graph,
    random_graph,
)

__all__ = ["atlas", "structured", "random_corpus", "small_corpus"]


@lru_cache(maxsize=1)
def atlas() -> tuple[Graph, ...]:
    """Every graph on at most 7 vertices, one per isomorphism class (1253 graphs)."""
    from networkx.generators.atlas import graph_atlas_g

    return tuple(
        Graph.from_edges(h.number_of_nodes(), list(h.edges())) for h in graph_atlas_g()
    )


def structured(max_n: int = 7) -> list[Graph]:
    out = []
    for n in range(0, max_n + 1):
        out += [complete_graph(n), empty_graph(n), path_graph(n)]
        if n >= 3:
            out.append(cycle_graph(n))
    for k in range(0, max_n // 2 + 1):
        out.append(make_cocktail_party(k))
    return out


def random_corpus(count: int, n: int, seed: int = 0, ps=(0.3, 0.5, 0.8)) -> list[Graph]:
    return [random_graph(n, ps[i % len(ps)], seed * 1_000_003 + i) for i in range(count)]


def small_corpus(max_n: int = 7, random_count: int = 100, seed: int = 0) -> list[Graph]:
    """Atlas graphs, named families and random graphs, all on <= ``max_n`` vertices."""
    graphs = [g for g in atlas() if g.n <= max_n]
    graphs += structured(max_n)
    graphs += random_corpus(random_count, max_n, seed)
    return graphs
