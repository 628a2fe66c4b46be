"""Command-line entry point.

Exit codes: 0 success / all cases pass, 1 a verification case failed,
2 usage error, 3 a resource guard or time limit was hit.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import cographs, corpus
from .edge_clique import (
    ResourceLimitError,
    edge_clique_graph,
    iterate_to,
    iterated_edge_clique,
    verify_clique_correspondence,
    write_catalog,
)
from .graph import (
    Graph,
    complete_graph,
    cycle_graph,
    format_graph,
    isolated_vertices,
    make_cocktail_party,
    path_graph,
    random_graph,
    read_graph,
)
from .rankwidth import (
    EXACT_MAX_N,
    LINEAR_MAX_N,
    caterpillar,
    complement_gap_check,
    exact_rankwidth,
    greedy_rankwidth_upper_bound,
    linear_rankwidth,
    verify_branch_decomposition,
)
from .solvers import (
    SolveTimeout,
    chromatic_number,
    edge_clique_cover,
    gyarfas_lower_bound,
    max_independent_set,
    vertex_clique_cover,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
SCHEMA = 1


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"2..8"`` -> [2, ..., 8]; ``"3"`` -> [3]; ``"2,4"`` -> [2, 4]."""
    out = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad integer range {text!r}") from None
    return out


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> Graph:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such input file: {path}")
    try:
        return read_graph(p)
    except ValueError as e:
        raise UsageError(f"{path}: {e}") from None


def _check_writable(path: str | None) -> None:
    if path and not Path(path).resolve().parent.is_dir():
        raise UsageError(f"cannot write to {path}: directory does not exist")


# --- generate ------------------------------------------------------------------


def cmd_generate(args) -> int:
    _check_writable(args.output)
    params = args.params
    try:
        if args.kind in ("cp", "complete", "cycle", "path", "cograph"):
            if len(params) != 1:
                raise UsageError(f"{args.kind} takes one parameter n")
            n = int(params[0])
            if n < 0:
                raise UsageError("n must be nonnegative")
            if args.kind == "cp":
                g = make_cocktail_party(n)
            elif args.kind == "complete":
                g = complete_graph(n)
            elif args.kind == "cycle":
                g = cycle_graph(n)
            elif args.kind == "path":
                g = path_graph(n)
            else:
                g = cographs.cograph_from_cotree(cographs.random_cotree(n, args.seed))
        else:
            if len(params) != 2:
                raise UsageError("random takes parameters n p")
            g = random_graph(int(params[0]), float(params[1]), args.seed)
    except ValueError as e:
        raise UsageError(str(e)) from None
    comment = f"{args.kind} {' '.join(params)} seed={args.seed}"
    _emit(format_graph(g, [comment]), args.output)
    return EXIT_OK


# --- transform -------------------------------------------------------------------


def cmd_transform(args) -> int:
    _check_writable(args.output)
    _check_writable(args.catalog)
    g = _load(args.input)
    chain = iterated_edge_clique(g, args.iterate, args.budget)
    result = chain[-1].graph if chain else g
    _emit(format_graph(result, [f"K_e^{args.iterate} of {args.input}"]), args.output)
    if args.catalog:
        # catalog of the last step: its vertices are edges of the previous graph
        write_catalog(chain[-1].catalog if chain else (), args.catalog)
    return EXIT_OK


# --- solve -------------------------------------------------------------------------


def _parts_of(coloring) -> list[list[int]]:
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(coloring):
        classes.setdefault(c, []).append(v)
    return [classes[c] for c in sorted(classes)]


def cmd_solve(args) -> int:
    _check_writable(args.certificate)
    g = _load(args.input)
    if args.problem == "rankwidth":
        return _solve_rankwidth(args, g)
    solver = {
        "alpha": max_independent_set,
        "chi": chromatic_number,
        "kappa": vertex_clique_cover,
        "theta-e": edge_clique_cover,
    }[args.problem]
    rep = solver(g, time_limit=args.time_limit)
    cert = {
        "schema": SCHEMA,
        "problem": args.problem,
        "n": g.n,
        "objective": rep.objective,
        "lower_bound": rep.lower_bound_used,
    }
    if args.problem == "alpha":
        cert["witness"] = rep.certificate_json()
    elif args.problem == "chi":
        cert["coloring"] = list(rep.certificate)
        cert["parts"] = _parts_of(rep.certificate)
    else:
        cert["parts"] = rep.certificate_json()
    if args.certificate:
        Path(args.certificate).write_text(json.dumps(cert) + "\n")
    if args.format == "json":
        cert.update(nodes=rep.nodes_explored, wall_time=round(rep.wall_time, 6))
        print(json.dumps(cert))
    else:
        print(f"{args.problem}\t{rep.objective}\tlower_bound={rep.lower_bound_used}"
              f"\tnodes={rep.nodes_explored}")
    return EXIT_OK


def _solve_rankwidth(args, g: Graph) -> int:
    if args.linear:
        width, order = linear_rankwidth(g, args.max_n or LINEAR_MAX_N)
        d = caterpillar(order, width)
        method = "linear"
    elif args.greedy:
        width, d = greedy_rankwidth_upper_bound(g, args.seed)
        method = "greedy"
    else:
        width, d = exact_rankwidth(g, args.max_n or EXACT_MAX_N)
        method = "exact"
    check = verify_branch_decomposition(g, d)
    if check.mismatch:
        print(f"decomposition claims {d.width} but recomputes to {check.width}", file=sys.stderr)
        return EXIT_FAIL
    if args.certificate:
        d.save(args.certificate)
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, "problem": "rankwidth", "method": method,
                          "width": width}))
    else:
        print(f"rankwidth\t{width}\tmethod={method}")
    return EXIT_OK


# --- verify -------------------------------------------------------------------------


@dataclass
class Case:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)


def _corpus(name: str, seed: int) -> list[Graph]:
    if name == "small":
        return corpus.small_corpus(7, 100, seed)
    if name == "tiny":
        return corpus.small_corpus(5, 20, seed)
    raise UsageError(f"unknown corpus {name!r} (choose small or tiny)")


def _guarded(name: str, fn) -> Case:
    try:
        return fn()
    except (ResourceLimitError, SolveTimeout) as e:
        return Case(name, False, {"error": f"guard: {e}"})


def suite_lemma_alpha(args) -> list[Case]:
    cases = []
    for n in parse_range(args.n or "2..8"):
        def run(n=n):
            ke = edge_clique_graph(make_cocktail_party(n)).graph
            rep = max_independent_set(ke, args.time_limit)
            return Case(f"cp({n})", rep.objective == 4,
                        {"ke_vertices": ke.n, "alpha": rep.objective,
                         "witness": rep.certificate_json()})
        cases.append(_guarded(f"cp({n})", run))
    return cases


def suite_gyarfas(args) -> list[Case]:
    cases = []
    for i, g in enumerate(_corpus(args.corpus, args.seed)):
        gy = gyarfas_lower_bound(g)
        if not gy.applicable:
            continue

        def run(g=g, i=i):
            theta = edge_clique_cover(g, args.time_limit).objective
            return Case(f"g{i}", theta >= math.log2(g.n + 1),
                        {"n": g.n, "m": g.m, "theta_e": theta,
                         "log2(n+1)": round(math.log2(g.n + 1), 4)})
        cases.append(_guarded(f"g{i}", run))
    return cases


def _strip_isolated(g: Graph) -> Graph:
    return g.induced(g.vertices & ~isolated_vertices(g))


def suite_correspondence(args) -> list[Case]:
    rng = random.Random(args.seed)
    graphs = []
    for k in range(args.samples if args.samples is not None else 200):
        n = rng.randint(2, args.max_n or 8)
        p = (0.3, 0.5, 0.8)[k % 3]
        graphs.append((f"random{k}", _strip_isolated(random_graph(n, p, rng.getrandbits(64)))))
    for n in range(2, 6):
        graphs.append((f"cp({n})", make_cocktail_party(n)))
    cases = []
    for name, g in graphs:
        rep = verify_clique_correspondence(g)
        detail = {"n": g.n, "m": g.m, "count_g": rep.count_g, "count_ke": rep.count_ke}
        ok = rep.matched
        if name.startswith("cp("):
            n = g.n // 2
            ok = ok and rep.count_g == rep.count_ke == 2**n
        cases.append(Case(name, ok, detail))
    return cases


def suite_theta_kappa(args) -> list[Case]:
    graphs = list(_corpus(args.corpus, args.seed))
    graphs += [make_cocktail_party(2), make_cocktail_party(3)]
    cases = []
    for i, g in enumerate(graphs):
        def run(g=g, i=i):
            theta = edge_clique_cover(g, args.time_limit).objective
            kappa = vertex_clique_cover(edge_clique_graph(g).graph, args.time_limit).objective
            return Case(f"g{i}", theta == kappa,
                        {"n": g.n, "m": g.m, "theta_e": theta, "kappa_ke": kappa})
        cases.append(_guarded(f"g{i}", run))
    return cases


def suite_complement_gap(args) -> list[Case]:
    rng = random.Random(args.seed)
    n = int(args.n or 7)
    cases = []
    for k in range(args.samples if args.samples is not None else 100):
        g = random_graph(n, 0.5, rng.getrandbits(64))

        def run(g=g, k=k):
            rep = complement_gap_check(g, args.max_n or EXACT_MAX_N)
            return Case(f"random{k}", rep.holds,
                        {"m": g.m, "rw": rep.rw_g, "rw_complement": rep.rw_complement,
                         "gap": rep.gap})
        cases.append(_guarded(f"random{k}", run))
    return cases


def suite_shearer(args) -> list[Case]:
    cases = []
    r = args.r if args.r is not None else 2
    for n in parse_range(args.n or "3"):
        def run(n=n):
            h = iterate_to(make_cocktail_party(n), r)
            alpha = max_independent_set(h, args.time_limit).objective
            bound = 3 * math.factorial(2**r)
            return Case(f"cp({n}),r={r}", alpha <= bound,
                        {"vertices": h.n, "alpha": alpha, "bound": bound})
        cases.append(_guarded(f"cp({n}),r={r}", run))
    return cases


SUITES = {
    "lemma-alpha": suite_lemma_alpha,
    "gyarfas": suite_gyarfas,
    "correspondence": suite_correspondence,
    "theta-kappa": suite_theta_kappa,
    "complement-gap": suite_complement_gap,
    "shearer": suite_shearer,
}


def cmd_verify(args) -> int:
    _check_writable(args.output)
    cases = SUITES[args.suite](args)
    passed = all(c.passed for c in cases)
    if args.format == "json":
        report = {
            "schema": SCHEMA,
            "suite": args.suite,
            "passed": passed,
            "cases": [{"name": c.name, "passed": c.passed, **c.detail} for c in cases],
        }
        _emit(json.dumps(report, indent=1) + "\n", args.output)
    else:
        lines = []
        for c in cases:
            detail = " ".join(f"{k}={v}" for k, v in c.detail.items() if k != "witness")
            lines.append(f"{'PASS' if c.passed else 'FAIL'}\t{c.name}\t{detail}")
        n_fail = sum(not c.passed for c in cases)
        lines.append(f"{args.suite}: {len(cases) - n_fail}/{len(cases)} passed")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if passed else EXIT_FAIL


# --- growth table ----------------------------------------------------------------------

GROWTH_COLUMNS = ("n", "theta_e", "log2_bound", "ratio", "rw_ke", "rw_kind")


def growth_rows(ns, time_limit=None, exact_max_n=EXACT_MAX_N, seed=0) -> list[dict]:
    rows = []
    for n in ns:
        g = make_cocktail_party(n)
        row: dict = {"n": n, "log2_bound": math.ceil(math.log2(2 * n + 1))}
        try:
            row["theta_e"] = edge_clique_cover(g, time_limit).objective
        except SolveTimeout:
            row["theta_e"] = None
        if row["theta_e"] is not None and n >= 2:
            row["ratio"] = round(row["theta_e"] / math.log2(n), 4)
        else:
            row["ratio"] = None
        ke = edge_clique_graph(g).graph
        if ke.n <= exact_max_n:
            row["rw_ke"], _ = exact_rankwidth(ke, exact_max_n)
            row["rw_kind"] = "exact"
        else:
            row["rw_ke"], _ = greedy_rankwidth_upper_bound(ke, seed)
            row["rw_kind"] = "upper"
        rows.append(row)
    return rows


def cmd_table(args) -> int:
    _check_writable(args.output)
    rows = growth_rows(parse_range(args.n or "2..6"), args.time_limit,
                       args.max_n or EXACT_MAX_N, args.seed)
    if args.format == "json":
        _emit(json.dumps({"schema": SCHEMA, "table": "growth", "rows": rows}, indent=1) + "\n",
              args.output)
    else:
        lines = ["\t".join(GROWTH_COLUMNS)]
        for r in rows:
            lines.append("\t".join("NA" if r[c] is None else str(r[c]) for c in GROWTH_COLUMNS))
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


# --- sweep -------------------------------------------------------------------------


def cmd_sweep(args) -> int:
    _check_writable(args.out)
    rows = cographs.conjecture_sweep(args.max_n, args.samples, args.seed, args.time_limit)
    if args.format == "json":
        data = {"schema": SCHEMA, "columns": list(cographs.SWEEP_COLUMNS),
                "rows": [dict(zip(cographs.SWEEP_COLUMNS, r.cells()), cotree=r.cotree)
                         for r in rows]}
        _emit(json.dumps(data, indent=1) + "\n", args.out)
    else:
        _emit(cographs.format_sweep(rows), args.out)
    bad = any(r.status == "bound-violated" for r in rows)
    return EXIT_FAIL if bad else EXIT_OK


# --- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ecclab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=True):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--time-limit", type=float, default=None)
        if fmt:
            sp.add_argument("--format", choices=("tsv", "json"), default="tsv")

    g = sub.add_parser("generate", help="write a graph file")
    g.add_argument("kind", choices=("cp", "complete", "cycle", "path", "random", "cograph"))
    g.add_argument("params", nargs="+")
    g.add_argument("--output")
    common(g, fmt=False)
    g.set_defaults(func=cmd_generate)

    t = sub.add_parser("transform", help="edge-clique graph transform")
    t.add_argument("op", choices=("ke",))
    t.add_argument("--input", required=True)
    t.add_argument("--iterate", type=int, default=1)
    t.add_argument("--output")
    t.add_argument("--catalog")
    t.add_argument("--budget", type=int, default=5000)
    t.set_defaults(func=cmd_transform)

    s = sub.add_parser("solve", help="exact solvers")
    s.add_argument("problem", choices=("alpha", "chi", "kappa", "theta-e", "rankwidth"))
    s.add_argument("--input", required=True)
    s.add_argument("--certificate")
    s.add_argument("--max-n", type=int)
    method = s.add_mutually_exclusive_group()
    method.add_argument("--exact", action="store_true")
    method.add_argument("--linear", action="store_true")
    method.add_argument("--greedy", action="store_true")
    common(s)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=tuple(SUITES))
    v.add_argument("--n", help="integer or range like 2..8")
    v.add_argument("--r", type=int)
    v.add_argument("--corpus", default="small")
    v.add_argument("--samples", type=int)
    v.add_argument("--max-n", type=int)
    v.add_argument("--output")
    common(v)
    v.set_defaults(func=cmd_verify)

    tb = sub.add_parser("table", help="tabulate cocktail-party growth")
    tb.add_argument("table", choices=("growth",))
    tb.add_argument("--n", help="range like 2..6")
    tb.add_argument("--max-n", type=int, help="largest K_e size for the exact rankwidth DP")
    tb.add_argument("--output")
    common(tb)
    tb.set_defaults(func=cmd_table)

    sw = sub.add_parser("sweep", help="edge-clique cover sweep over random cographs")
    sw.add_argument("target", choices=("cographs",))
    sw.add_argument("--max-n", type=int, required=True)
    sw.add_argument("--samples", type=int, default=5)
    sw.add_argument("--out")
    common(sw)
    sw.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"ecclab: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceLimitError, SolveTimeout) as e:
        print(f"ecclab: resource guard: {e}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
