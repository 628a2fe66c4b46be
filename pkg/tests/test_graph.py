import itertools

import pytest
from hypothesis import given, settings

import oracles
from ecclab.corpus import atlas
from ecclab.graph import (
    Graph,
    bits,
    complement,
    complete_graph,
    cycle_graph,
    empty_graph,
    equivalent_vertices,
    format_graph,
    isolated_vertices,
    make_cocktail_party,
    mask_of,
    maximal_cliques,
    parse_graph,
    path_graph,
    random_graph,
    read_graph,
    write_graph,
)
from strategies import graphs


def assert_simple(g: Graph):
    for v in range(g.n):
        assert not g.has_edge(v, v)
        for u in bits(g.adj[v]):
            assert u < g.n and g.has_edge(u, v)


def test_graph_rejects_bad_adjacency():
    with pytest.raises(ValueError):
        Graph(2, [0b10, 0])  # asymmetric
    with pytest.raises(ValueError):
        Graph(1, [0b1])  # loop
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])
    g = complete_graph(3)
    with pytest.raises(AttributeError):
        g.n = 4


@pytest.mark.parametrize("n, m", [(0, 0), (1, 0), (2, 4), (3, 12), (4, 24), (5, 40)])
def test_cocktail_party_counts(n, m):
    g = make_cocktail_party(n)
    assert_simple(g)
    assert g.n == 2 * n and g.m == m == 2 * n * n - 2 * n
    assert all(g.degree(v) == 2 * n - 2 for v in range(g.n))


def test_cocktail_party_small_cases():
    assert make_cocktail_party(2).edges() == [(0, 2), (0, 3), (1, 2), (1, 3)]
    # 0-2-1-3-0 is a 4-cycle
    c4 = Graph.from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)])
    assert make_cocktail_party(2) == c4
    cp3 = make_cocktail_party(3)
    expected = {(u, v) for u, v in itertools.combinations(range(6), 2) if u // 2 != v // 2}
    assert set(cp3.edges()) == expected
    assert set(complement(cp3).edges()) == {(0, 1), (2, 3), (4, 5)}


@pytest.mark.parametrize("n", range(1, 7))
def test_cocktail_party_complement_is_matching(n):
    assert complement(make_cocktail_party(n)).edges() == [(2 * k, 2 * k + 1) for k in range(n)]


def test_complement_examples():
    assert complement(complete_graph(4)).m == 0
    assert complement(empty_graph(3)) == complete_graph(3)


@given(graphs())
def test_complement_involution_and_edge_count(g):
    c = complement(g)
    assert_simple(c)
    assert complement(c) == g
    assert g.m + c.m == g.n * (g.n - 1) // 2
    assert set(c.edges()) == oracles.complement_edges(g)


def test_equivalent_vertices_examples():
    assert equivalent_vertices(complete_graph(3)) == [(0, 1), (0, 2), (1, 2)]
    assert equivalent_vertices(cycle_graph(4)) == []
    assert equivalent_vertices(complete_graph(2)) == [(0, 1)]
    for n in range(2, 7):
        assert equivalent_vertices(make_cocktail_party(n)) == []


def test_isolated_vertices_examples():
    assert isolated_vertices(empty_graph(3)) == 0b111
    assert isolated_vertices(make_cocktail_party(1)) == 0b11
    assert isolated_vertices(make_cocktail_party(3)) == 0
    for n in range(2, 7):
        assert isolated_vertices(make_cocktail_party(n)) == 0


def test_maximal_cliques_examples():
    assert maximal_cliques(complete_graph(4)) == [0b1111]
    c5 = cycle_graph(5)
    assert sorted(maximal_cliques(c5)) == sorted(mask_of(e) for e in c5.edges())
    assert maximal_cliques(empty_graph(0)) == []
    assert maximal_cliques(empty_graph(2)) == [0b01, 0b10]


@pytest.mark.parametrize("n", range(2, 6))
def test_cocktail_party_maximal_cliques(n):
    g = make_cocktail_party(n)
    got = maximal_cliques(g)
    assert len(got) == 2**n
    for c in got:
        # one vertex from each matched pair
        assert all(bin(c >> (2 * k) & 0b11).count("1") == 1 for k in range(n))
    assert {frozenset(bits(c)) for c in got} == oracles.maximal_cliques(g)


def test_maximal_cliques_sorted_and_deterministic():
    g = random_graph(10, 0.5, seed=3)
    a = maximal_cliques(g)
    assert a == sorted(a) == maximal_cliques(g)


def test_maximal_cliques_match_exhaustive_oracle_on_corpus():
    corpus = list(atlas()) + [random_graph(n, p, s) for n in (9, 10, 12)
                              for p in (0.3, 0.6, 0.9) for s in range(3)]
    for g in corpus:
        assert {frozenset(bits(c)) for c in maximal_cliques(g)} == oracles.maximal_cliques(g)


@given(graphs())
@settings(max_examples=60)
def test_maximal_cliques_property(g):
    assert {frozenset(bits(c)) for c in maximal_cliques(g)} == oracles.maximal_cliques(g)


def test_random_graph_extremes_and_determinism():
    assert random_graph(7, 0.0, 1).m == 0
    assert random_graph(7, 1.0, 1) == complete_graph(7)
    assert random_graph(12, 0.4, 99) == random_graph(12, 0.4, 99)
    assert random_graph(12, 0.4, 99) != random_graph(12, 0.4, 100)
    with pytest.raises(ValueError):
        random_graph(3, 1.5)


@pytest.mark.parametrize("g", [empty_graph(0), empty_graph(1), path_graph(5), cycle_graph(6),
                               make_cocktail_party(3), random_graph(11, 0.5, 4)])
def test_generators_are_simple(g):
    assert_simple(g)


# --- file format ----------------------------------------------------------------


def test_format_graph_layout():
    text = format_graph(path_graph(3), ["demo"])
    assert text == "c demo\np edge 3 2\ne 1 2\ne 2 3\n"


def test_parse_ignores_comments_and_checks_header():
    g = parse_graph("c hi\np edge 4 2\ne 2 1\nc mid\ne 3 4\n")
    assert g.edges() == [(0, 1), (2, 3)]
    with pytest.raises(ValueError):
        parse_graph("p edge 3 2\ne 1 2\n")
    with pytest.raises(ValueError):
        parse_graph("e 1 2\n")
    with pytest.raises(ValueError):
        parse_graph("p edge 2 1\ne 1 3\n")


@given(graphs(max_n=12))
def test_text_round_trip(g):
    assert parse_graph(format_graph(g)) == g


def test_file_round_trip(tmp_path):
    g = random_graph(9, 0.5, 2)
    write_graph(g, tmp_path / "g.col")
    assert read_graph(tmp_path / "g.col") == g
