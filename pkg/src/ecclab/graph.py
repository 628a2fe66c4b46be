"""Simple undirected graphs stored as one int bitmask per vertex.

Vertex sets are plain Python ints: bit ``v`` set means vertex ``v`` is a
member. All constructors return immutable :class:`Graph` objects whose
adjacency is checked for symmetry and irreflexivity.
"""

from __future__ import annotations

import random
from pathlib import Path
from typing import Iterable, Iterator

__all__ = [
    "Graph",
    "bits",
    "popcount",
    "mask_of",
    "make_cocktail_party",
    "complete_graph",
    "empty_graph",
    "cycle_graph",
    "path_graph",
    "random_graph",
    "complement",
    "equivalent_vertices",
    "isolated_vertices",
    "maximal_cliques",
    "clique_number",
    "read_graph",
    "write_graph",
    "parse_graph",
    "format_graph",
]


def bits(mask: int) -> Iterator[int]:
    """Yield the members of a packed vertex set in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "_m")

    def __init__(self, n: int, adj: Iterable[int]):
        adj = tuple(adj)
        if n < 0 or len(adj) != n:
            raise ValueError(f"adjacency has {len(adj)} rows for n={n}")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour id >= n")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "_m", sum(popcount(r) for r in adj) // 2)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @property
    def m(self) -> int:
        return self._m

    @property
    def vertices(self) -> int:
        """The full vertex set as a mask."""
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def closed_neighborhood(self, v: int) -> int:
        return self.adj[v] | 1 << v

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def is_clique(self, s: int) -> bool:
        assert s >> self.n == 0, "vertex set from a different graph"
        for v in bits(s):
            if (s & ~(1 << v)) & ~self.adj[v]:
                return False
        return True

    def is_independent(self, s: int) -> bool:
        assert s >> self.n == 0, "vertex set from a different graph"
        return all(not (self.adj[v] & s) for v in bits(s))

    def induced(self, s: int) -> Graph:
        """Induced subgraph on ``s``, relabelled to ``0..|s|-1`` in id order."""
        verts = list(bits(s))
        index = {v: i for i, v in enumerate(verts)}
        adj = []
        for v in verts:
            adj.append(mask_of(index[u] for u in bits(self.adj[v] & s)))
        return Graph(len(verts), adj)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def make_cocktail_party(n: int) -> Graph:
    """Complement of the perfect matching ``{2k, 2k+1}`` on ``2n`` vertices."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    size = 2 * n
    full = (1 << size) - 1
    return Graph(size, [full & ~(1 << v) & ~(1 << (v ^ 1)) for v in range(size)])


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)])


def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def random_graph(n: int, p: float, seed: int = 0) -> Graph:
    """Erdos-Renyi G(n, p); pairs are drawn in lexicographic order."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
    return Graph.from_edges(n, edges)


def complement(g: Graph) -> Graph:
    full = g.vertices
    return Graph(g.n, [full & ~g.adj[v] & ~(1 << v) for v in range(g.n)])


def equivalent_vertices(g: Graph) -> list[tuple[int, int]]:
    """Adjacent pairs ``(u, v)``, ``u < v``, with equal closed neighbourhoods."""
    out = []
    for u, v in g.edges():
        if g.closed_neighborhood(u) == g.closed_neighborhood(v):
            out.append((u, v))
    return out


def isolated_vertices(g: Graph) -> int:
    return mask_of(v for v in range(g.n) if not g.adj[v])


def maximal_cliques(g: Graph) -> list[int]:
    """All inclusion-maximal cliques, sorted by mask value.

    Bron-Kerbosch with pivoting. The pivot maximises ``|P & N(u)|`` with
    ties going to the lowest id, so the recursion is fully deterministic.
    Isolated vertices come out as singleton cliques; a graph on zero
    vertices has none.
    """
    if g.n == 0:
        return []
    adj = g.adj
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        best_u, best_c = -1, -1
        for u in bits(p | x):
            c = popcount(p & adj[u])
            if c > best_c:
                best_u, best_c = u, c
        for v in bits(p & ~adj[best_u]):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    expand(0, g.vertices, 0)
    out.sort()
    return out


def clique_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    return max(popcount(c) for c in maximal_cliques(g))


# --- DIMACS-like text format -------------------------------------------------


def format_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    edges = g.edges()
    lines.append(f"p edge {g.n} {len(edges)}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    n = None
    declared = 0
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None or len(parts) != 4:
                raise ValueError(f"line {lineno}: bad problem line {raw!r}")
            n, declared = int(parts[2]), int(parts[3])
        elif parts[0] == "e":
            if n is None:
                raise ValueError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: bad edge line {raw!r}")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            edges.append((u, v))
        else:
            raise ValueError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise ValueError("missing 'p edge <n> <m>' line")
    g = Graph.from_edges(n, edges)
    if g.m != declared:
        raise ValueError(f"header declares {declared} edges, found {g.m} distinct")
    return g


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(g: Graph, path: str | Path, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_graph(g, comments))
