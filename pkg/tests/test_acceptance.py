"""Acceptance criteria, one test each, with their time limits.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary lists
one PASS/FAIL line per criterion.
"""
import math
import random
import time

import pytest

import oracles
from ecclab.cli import growth_rows
from ecclab.cographs import cograph_from_cotree, is_cograph, random_cotree
from ecclab.corpus import atlas, small_corpus
from ecclab.edge_clique import edge_clique_graph, iterate_to, verify_clique_correspondence
from ecclab.graph import (
    cycle_graph,
    isolated_vertices,
    make_cocktail_party,
    popcount,
    random_graph,
)
from ecclab.rankwidth import (
    CutRankOracle,
    complement_gap_check,
    exact_rankwidth,
    linear_rankwidth,
    verify_branch_decomposition,
)
from ecclab.solvers import (
    edge_clique_cover,
    gyarfas_lower_bound,
    max_independent_set,
    verify_cover,
    verify_vertex_partition,
    vertex_clique_cover,
)

pytestmark = pytest.mark.acceptance


class Clock:
    def __init__(self, limit: float):
        self.limit = limit
        self.start = time.perf_counter()

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start

    def ok(self) -> bool:
        return self.elapsed < self.limit

    def __str__(self) -> str:
        return f"{self.elapsed:.1f}s/{self.limit:.0f}s"


def test_c01_alpha_of_edge_clique_graph_of_cocktail_party(criterion):
    clock = Clock(120)
    values = {}
    for n in range(2, 9):
        ke = edge_clique_graph(make_cocktail_party(n)).graph
        rep = max_independent_set(ke)
        assert ke.is_independent(rep.certificate) and popcount(rep.certificate) == rep.objective
        values[n] = (ke.n, rep.objective)
    # brute force agrees where it is cheap
    for n in (2, 3):
        assert oracles.alpha(edge_clique_graph(make_cocktail_party(n)).graph) == 4
    ok = all(a == 4 for _, a in values.values()) and values[8][0] == 112 and clock.ok()
    criterion("C1 alpha(K_e(cp(n)))=4, n=2..8", ok, f"{values} {clock}")
    assert ok


def test_c02_gyarfas_bound(criterion):
    clock = Clock(300)
    checked = violations = 0
    for g in small_corpus(7):
        gy = gyarfas_lower_bound(g)
        if not gy.applicable:
            continue
        checked += 1
        theta = edge_clique_cover(g).objective
        # integer form and real form of the bound must agree
        assert (theta >= gy.value) == (theta >= math.log2(g.n + 1))
        violations += theta < math.log2(g.n + 1)
    ok = checked >= 500 and violations == 0 and clock.ok()
    criterion("C2 theta_e >= log2(n+1)", ok, f"graphs={checked} violations={violations} {clock}")
    assert ok


def test_c03_theta_equals_kappa_of_edge_clique_graph(criterion):
    clock = Clock(300)
    corpus = small_corpus(7) + [make_cocktail_party(2), make_cocktail_party(3)]
    bad = []
    for i, g in enumerate(corpus):
        theta = edge_clique_cover(g)
        kappa = vertex_clique_cover(edge_clique_graph(g).graph)
        assert verify_cover(g, theta.certificate)
        assert verify_vertex_partition(edge_clique_graph(g).graph, kappa.certificate)
        if theta.objective != kappa.objective:
            bad.append(i)
    ok = not bad and clock.ok()
    criterion("C3 theta_e(G)=kappa(K_e(G))", ok, f"graphs={len(corpus)} mismatches={bad} {clock}")
    assert ok


def test_c04_cocktail_party_cover_numbers(criterion):
    clock = Clock(120)
    values = {}
    for n in range(2, 7):
        g = make_cocktail_party(n)
        rep = edge_clique_cover(g)
        assert verify_cover(g, rep.certificate) and len(rep.certificate) == rep.objective
        values[n] = rep.objective
    bounds_ok = all(values[n] >= math.ceil(math.log2(2 * n + 1)) for n in values)
    goldens = values[2] == 4 and values[3] == 4
    # the goldens are confirmed by brute force over all cliques
    goldens = goldens and oracles.theta_e(make_cocktail_party(2)) == 4
    goldens = goldens and oracles.theta_e(make_cocktail_party(3)) == 4
    ok = bounds_ok and goldens and clock.ok()
    criterion("C4 theta_e(cp(n)), n=2..6", ok, f"{values} {clock}")
    assert ok


def test_c05_maximal_clique_correspondence(criterion):
    clock = Clock(120)
    rng = random.Random(2024)
    failures = 0
    for k in range(200):
        g = random_graph(rng.randint(2, 8), (0.3, 0.5, 0.8)[k % 3], rng.getrandbits(32))
        g = g.induced(g.vertices & ~isolated_vertices(g))
        failures += not verify_clique_correspondence(g).matched
    cp_counts = {}
    for n in range(2, 6):
        rep = verify_clique_correspondence(make_cocktail_party(n))
        failures += not (rep.matched and rep.count_g == rep.count_ke == 2**n)
        cp_counts[n] = (rep.count_g, rep.count_ke)
    ok = failures == 0 and clock.ok()
    criterion("C5 maximal clique correspondence", ok,
              f"random=200 cp={cp_counts} failures={failures} {clock}")
    assert ok


def test_c06_shearer_instance(criterion):
    clock = Clock(60)
    g = iterate_to(make_cocktail_party(3), 2)
    rep = max_independent_set(g)
    assert g.is_independent(rep.certificate)
    bound = 3 * math.factorial(2**2)
    ok = g.n == 24 and rep.objective <= bound and clock.ok()
    criterion("C6 alpha(K_e^2(cp(3))) <= 72", ok, f"n={g.n} alpha={rep.objective} {clock}")
    assert ok


def test_c07_rankwidth_engine(criterion):
    clock = Clock(600)
    small = [g for g in atlas() if g.n <= 6]
    dp_vs_trees = sum(exact_rankwidth(g)[0] == oracles.rankwidth_by_trees(g) for g in small)
    c5 = exact_rankwidth(cycle_graph(5))[0]

    cographs = [g for g in small_corpus(7) if is_cograph(g)[0]]
    cographs += [cograph_from_cotree(random_cotree(1 + s % 12, s)) for s in range(100)]
    cograph_max = max(exact_rankwidth(g)[0] for g in cographs)

    ke = edge_clique_graph(make_cocktail_party(3)).graph
    rw_ke, d = exact_rankwidth(ke)
    certified = verify_branch_decomposition(ke, d).width == rw_ke

    sandwich = [g for g in small_corpus(7) if g.n >= 1] + [ke]
    sandwich_ok = all(linear_rankwidth(g)[0] >= exact_rankwidth(g)[0] for g in sandwich)

    ok = (len(small) >= 200 and dp_vs_trees == len(small) and c5 == 2 and cograph_max <= 1
          and ke.n == 12 and certified and sandwich_ok and clock.ok())
    criterion("C7 rankwidth engine", ok,
              f"dp=trees {dp_vs_trees}/{len(small)} rw(C5)={c5} cographs={len(cographs)} "
              f"max_rw={cograph_max} rw(K_e(cp(3)))={rw_ke} lrw>=rw on {len(sandwich)} {clock}")
    assert ok


def test_c08_complement_gap(criterion):
    clock = Clock(600)
    rng = random.Random(77)
    reports = [complement_gap_check(random_graph(7, rng.random(), rng.getrandbits(32)))
               for _ in range(100)]
    worst = max(r.gap for r in reports)
    ok = all(r.holds for r in reports) and clock.ok()
    criterion("C8 |rw(G)-rw(co-G)| <= 1", ok, f"graphs=100 max_gap={worst} {clock}")
    assert ok


def test_c09_growth_table_substitute(criterion):
    # the limit and unboundedness claims are out of reach; the table is the substitute
    clock = Clock(600)
    rows = growth_rows(range(2, 7))
    kinds = [r["rw_kind"] for r in rows]
    ok = ([r["theta_e"] for r in rows] == [4, 4, 5, 6, 6]
          and all(r["theta_e"] >= r["log2_bound"] for r in rows)
          and kinds[:2] == ["exact", "exact"] and set(kinds[2:]) == {"upper"}
          and rows[0]["rw_ke"] == 0)
    table = " ".join(f"n={r['n']}:rw={r['rw_ke']}({r['rw_kind']}),ratio={r['ratio']}"
                     for r in rows)
    criterion("C9 growth table (no limit asserted)", ok, f"{table} {clock}")
    assert ok


def test_c10_cut_rank_laws(criterion):
    clock = Clock(60)
    rng = random.Random(10)
    corpus = [g for g in small_corpus(7) if g.n >= 2]
    corpus += [random_graph(rng.randint(8, 14), rng.random(), rng.getrandbits(32))
               for _ in range(100)]
    samples = violations = 0
    while samples < 10_000:
        g = rng.choice(corpus)
        o = CutRankOracle(g)
        for _ in range(5):
            a, b = rng.getrandbits(g.n), rng.getrandbits(g.n)
            ra = o.rank(a)
            violations += ra != o.rank(g.vertices & ~a)
            violations += ra + o.rank(b) < o.rank(a | b) + o.rank(a & b)
            violations += not 0 <= ra <= min(popcount(a), g.n - popcount(a))
            samples += 1
    # the compiled table and the span-counting oracle agree on a slice
    for g in corpus[-5:]:
        table = CutRankOracle(g).table()
        for s in rng.sample(range(2**g.n), 40):
            violations += table[s] != oracles.cut_rank(g, {v for v in range(g.n) if s >> v & 1})
    ok = violations == 0 and clock.ok()
    criterion("C10 cut-rank laws", ok, f"samples={samples} violations={violations} {clock}")
    assert ok
