"""Command-line interface.

Every output line is ``key=value`` or a ``#`` comment. Exit status: 0 on
success, 1 when ``verify`` finds a disagreement, 2 for bad input, 3 when a
size guard or cap refuses the request. Errors are one line on stderr.
"""

from __future__ import annotations

import argparse
import math
import sys

from .bounds import bounds_report
from .cuts import cut_report
from .decomposition import (
    comb_tree,
    exact_min_width,
    f_width,
    greedy_decompose,
    hsu_structured_tree,
    random_tree,
    read_tree,
    save_tree,
)
from .errors import GraphFormatError, RefusalError, TreeError
from .generators import (
    gen_classic,
    gen_complete_bipartite,
    gen_grid,
    gen_hsu,
    gen_hsu_grid,
    gen_rk,
    grid_columns,
)
from .graph import format_vertices, parse_vertices, read_graph, save_graph
from .oracles import (
    brute_cut,
    brute_optimal_width,
    brute_partition_exists,
    brute_subset_opt,
)
from .partition_dp import DQ_PROBLEMS, dq_catalog, read_matrix, solve_partition, solve_partition_opt
from .subset_dp import PROBLEMS, SetSpec, SubsetProblem, catalog, run_subset

EXIT_DISAGREE = 1
EXIT_BAD_INPUT = 2
EXIT_REFUSED = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(f"error: usage: {message}\n")
        raise SystemExit(EXIT_BAD_INPUT)


def _out(stream, lines):
    for line in lines:
        stream.write(line + "\n")


def _open_out(path):
    return sys.stdout if path in (None, "-") else open(path, "w", encoding="utf-8")


def _meta_params(meta: dict) -> dict:
    """``# family hsu-grid p=4 q=4`` -> {'family': 'hsu-grid', 'p': 4, 'q': 4}."""
    fam = meta.get("family", "").split()
    out = {"family": fam[0]} if fam else {}
    for tok in fam[1:]:
        key, _, val = tok.partition("=")
        try:
            out[key] = int(val)
        except ValueError:
            pass
    return out


def _cut_from(args, g, meta):
    if args.vertices:
        return parse_vertices(args.vertices, g.n).bits
    if "cut" in meta:
        return parse_vertices(meta["cut"], g.n).bits
    raise GraphFormatError("no cut given: pass --vertices or use a file with a '# cut' line")


# ----------------------------------------------------------------- commands


def cmd_gen(args) -> int:
    fam = args.family
    cut = None
    params = []
    if fam == "hsu":
        g, cut = gen_hsu(_need(args.k, "--k"))
        params = [f"k={args.k}"]
    elif fam == "rk":
        g, cut = gen_rk(_need(args.k, "--k"))
        params = [f"k={args.k}"]
    elif fam in ("hsu-grid", "grid"):
        p, q = _need(args.p, "--p"), _need(args.q, "--q")
        g = gen_hsu_grid(p, q) if fam == "hsu-grid" else gen_grid(p, q)
        params = [f"p={p}", f"q={q}"]
    elif fam == "complete-bipartite":
        n = _need(args.n, "--n")
        g, cut = gen_complete_bipartite(n, args.m if args.m is not None else n)
        params = [f"n={n}", f"m={args.m if args.m is not None else n}"]
    else:
        n = _need(args.n, "--n")
        if fam == "random":
            if args.seed is None:
                raise ValueError("random graphs need --seed")
            _need(args.p_edge, "--p-edge")
            params = [f"n={n}", f"p_edge={args.p_edge}", f"seed={args.seed}"]
        else:
            params = [f"n={n}"]
        g = gen_classic(fam, n, p_edge=args.p_edge, seed=args.seed)
    comments = [" ".join([f"family {fam}"] + params)]
    if cut is not None:
        comments.append(f"cut {format_vertices(cut)}")
    stream = _open_out(args.output)
    try:
        save_graph(g, stream, comments)
    finally:
        if stream is not sys.stdout:
            stream.close()
    return 0


def _need(value, flag):
    if value is None:
        raise ValueError(f"missing {flag}")
    return value


def cmd_cut(args) -> int:
    g, meta = read_graph(args.graph)
    a = _cut_from(args, g, meta)
    rep = cut_report(g, a, with_nss=args.nss, classes=args.classes or (), cap=args.cap)
    _out(sys.stdout, [f"vertices={format_vertices(a)}"] + rep.lines())
    return 0


def _width_lines(f, value, edge):
    lines = [f"function={f}"]
    if f == "boolean":
        lines += [f"closure_count={value}", f"beta={math.log2(value):.6f}"]
    else:
        lines.append(f"width={value}")
    lines.append(f"edge={'-' if edge is None else edge}")
    return lines


def cmd_width(args) -> int:
    g, _ = read_graph(args.graph)
    tree = read_tree(args.tree)
    value, edge = f_width(g, tree, args.function)
    _out(sys.stdout, _width_lines(args.function, value, edge))
    return 0


def cmd_decompose(args) -> int:
    g, meta = read_graph(args.graph)
    m = args.method
    heuristic = False
    if m == "exact":
        tree, _ = exact_min_width(g, args.function)
    elif m == "greedy":
        if args.seed is None:
            raise ValueError("greedy decomposition needs --seed")
        tree, _ = greedy_decompose(g, args.function, seed=args.seed)
        heuristic = True
    elif m == "random":
        if args.seed is None:
            raise ValueError("random trees need --seed")
        tree = random_tree(g.n, args.seed)
    elif m in ("hsu-vertical", "hsu-horizontal", "grid-columns"):
        info = _meta_params(meta)
        p = args.p if args.p is not None else info.get("p")
        q = args.q if args.q is not None else info.get("q")
        if p is None or q is None:
            raise ValueError(f"{m} needs --p and --q (or a generated file naming them)")
        if p * q != g.n:
            raise TreeError(f"p*q = {p * q} does not match the graph's {g.n} vertices")
        if m == "grid-columns":
            tree = comb_tree(grid_columns(p, q), g.n)
        else:
            tree = hsu_structured_tree(p, q, m.split("-")[1])
    else:
        raise ValueError(f"unknown method {m!r}")
    value, edge = f_width(g, tree, args.function)
    stream = _open_out(args.output)
    try:
        save_tree(tree, stream)
    finally:
        if stream is not sys.stdout:
            stream.close()
    info_stream = sys.stderr if args.output in (None, "-") else sys.stdout
    lines = [f"method={m}", f"heuristic={'true' if heuristic else 'false'}"] + _width_lines(args.function, value, edge)
    _out(info_stream, lines)
    return 0


def _subset_problem(args) -> SubsetProblem:
    if args.problem:
        if args.sigma or args.rho:
            raise ValueError("give either --problem or --sigma/--rho, not both")
        return catalog(args.problem, k=args.k, objective=args.objective)
    if not (args.sigma and args.rho):
        raise ValueError("need --problem, or both --sigma and --rho")
    return SubsetProblem(SetSpec.parse(args.sigma), SetSpec.parse(args.rho), args.objective or "min")


def cmd_solve_subset(args) -> int:
    g, _ = read_graph(args.graph)
    tree = read_tree(args.tree)
    prob = _subset_problem(args)
    run = run_subset(g, tree, prob, cap=args.cap)
    lines = [
        f"value={'INFEASIBLE' if run.value is None else run.value}",
        f"sigma={prob.sigma}",
        f"rho={prob.rho}",
        f"objective={prob.objective}",
        f"d={prob.d}",
        f"max_classes={run.max_classes}",
    ]
    _out(sys.stdout, lines)
    return 0


def _degree_matrix(args):
    if args.matrix:
        if args.problem:
            raise ValueError("give either --problem or --matrix, not both")
        return read_matrix(args.matrix)
    if not args.problem:
        raise ValueError("need --problem or --matrix")
    h = None
    loops = ()
    if args.problem in ("h-homomorphism", "h-cover"):
        h, _ = read_graph(_need(args.h, "--h"))
        if args.loops:
            loops = list(parse_vertices(args.loops, h.n))
    return dq_catalog(args.problem, q=args.q, h=h, loops=loops)


def cmd_solve_partition(args) -> int:
    g, _ = read_graph(args.graph)
    tree = read_tree(args.tree)
    dm = _degree_matrix(args)
    lines = [f"q={dm.q}", f"d={dm.d}"]
    if args.extremal_class is not None:
        target = args.extremal_class - 1
        val = solve_partition_opt(g, tree, dm, target, args.objective or "max", strict=args.strict, cap=args.cap)
        lines.insert(0, f"value={'INFEASIBLE' if val is None else val}")
    else:
        ok = solve_partition(g, tree, dm, strict=args.strict, cap=args.cap)
        lines.insert(0, f"feasible={'true' if ok else 'false'}")
    _out(sys.stdout, lines)
    return 0


def _verify_graph(g, tree, meta, label, lines):
    """Append result lines for every applicable (main, oracle) pair; return the disagreement count."""
    from .cuts import cut_value, nss

    bad = 0

    def record(name, main, oracle):
        nonlocal bad
        fmt = lambda v: "INFEASIBLE" if v is None else str(v).lower() if isinstance(v, bool) else str(v)
        ok = main == oracle
        bad += not ok
        lines.append(f"{label}{name}.main={fmt(main)}")
        lines.append(f"{label}{name}.oracle={fmt(oracle)}")
        lines.append(f"{label}{name}={'agree' if ok else 'disagree'}")

    if g.n <= 20:
        for name in PROBLEMS[:7]:
            prob = catalog(name)
            main = run_subset(g, tree, prob).value
            record(f"subset.{name}", main, brute_subset_opt(g, prob.sigma, prob.rho, prob.objective))
    for q in (2, 3):
        if q**g.n <= 10**6:
            dm = dq_catalog("q-coloring", q=q)
            record(f"partition.{q}-coloring", solve_partition(g, tree, dm), brute_partition_exists(g, dm))
    if "cut" in meta:
        a = parse_vertices(meta["cut"], g.n).bits
        if g.n - a.bit_count() <= 12 and a.bit_count() <= 12:
            closure, rank, sub = brute_cut(g, a)
            record("cut.closure_count", cut_value(g, a, "boolean"), closure)
            record("cut.rank", cut_value(g, a, "rank"), rank)
            record("cut.nss", nss(g, a), sub)
    if g.n <= 8:
        for f in ("boolean", "rank"):
            record(f"width.{f}", exact_min_width(g, f)[1], brute_optimal_width(g, f))
    return bad


def cmd_verify(args) -> int:
    lines = []
    bad = 0
    if args.graph:
        g, meta = read_graph(args.graph)
        if args.tree:
            tree = read_tree(args.tree)
        elif args.seed is not None:
            tree = random_tree(g.n, args.seed)
        else:
            raise ValueError("verify needs --tree or --seed for a random tree")
        bad += _verify_graph(g, tree, meta, "", lines)
    else:
        if args.seed is None or args.n is None:
            raise ValueError("generated verification needs --n and --seed (or pass --graph)")
        for i in range(args.count):
            seed = args.seed + i
            g = gen_classic("random", args.n, p_edge=args.p_edge, seed=seed)
            lines.append(f"# graph {i + 1}: random n={args.n} p_edge={args.p_edge} seed={seed}")
            bad += _verify_graph(g, random_tree(g.n, seed), {}, f"g{i + 1}.", lines)
    total = sum(1 for ln in lines if ln.endswith(("=agree", "=disagree")))
    lines += [f"checks={total}", f"disagreements={bad}"]
    _out(sys.stdout, lines)
    return EXIT_DISAGREE if bad else 0


def cmd_bounds(args) -> int:
    g, meta = read_graph(args.graph)
    mode = "heuristic" if args.heuristic else "exact"
    extra = []
    if args.vertices:
        extra.append(parse_vertices(args.vertices, g.n).bits)
    elif "cut" in meta:
        extra.append(parse_vertices(meta["cut"], g.n).bits)
    rep = bounds_report(g, mode, samples=args.samples, seed=args.seed, extra_cuts=extra)
    _out(sys.stdout, rep.lines())
    return 0


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="boolwidth", description="Boolean-width and rank-width toolkit.")
    p.add_argument("--jobs", type=int, default=1, help="worker cap (all work currently runs in one process)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("gen", help="write a graph from a named family")
    s.add_argument("family", choices=["hsu", "rk", "grid", "hsu-grid", "path", "cycle", "complete", "complete-bipartite", "random"])
    s.add_argument("--k", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--p-edge", type=float)
    s.add_argument("--seed", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("cut", help="cut function values of one cut")
    s.add_argument("--graph", required=True)
    s.add_argument("--vertices", help="comma-separated 1-indexed side A")
    s.add_argument("--nss", action="store_true", help="also count spanned subspaces")
    s.add_argument("--classes", type=int, action="append", metavar="D", help="count d-neighbor classes (repeatable)")
    s.add_argument("--cap", type=int)
    s.set_defaults(func=cmd_cut)

    s = sub.add_parser("width", help="f-width of a given tree")
    s.add_argument("--function", choices=["boolean", "rank"], required=True)
    s.add_argument("--graph", required=True)
    s.add_argument("--tree", required=True)
    s.set_defaults(func=cmd_width)

    s = sub.add_parser("decompose", help="build a decomposition tree")
    s.add_argument("--graph", required=True)
    s.add_argument("--method", required=True, choices=["exact", "greedy", "random", "hsu-vertical", "hsu-horizontal", "grid-columns"])
    s.add_argument("--function", choices=["boolean", "rank"], default="boolean")
    s.add_argument("--seed", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("solve", help="run a dynamic program")
    solve = s.add_subparsers(dest="kind", required=True, parser_class=_Parser)

    t = solve.add_parser("subset", help="min/max (sigma, rho)-set")
    t.add_argument("--problem", choices=list(PROBLEMS))
    t.add_argument("--k", type=int)
    t.add_argument("--sigma")
    t.add_argument("--rho")
    t.add_argument("--objective", choices=["min", "max"])
    t.add_argument("--graph", required=True)
    t.add_argument("--tree", required=True)
    t.add_argument("--cap", type=int)
    t.set_defaults(func=cmd_solve_subset)

    t = solve.add_parser("partition", help="degree-constrained partition")
    t.add_argument("--problem", choices=list(DQ_PROBLEMS))
    t.add_argument("--q", type=int)
    t.add_argument("--h", help="pattern graph file for h-homomorphism / h-cover")
    t.add_argument("--loops", help="looped pattern vertices, 1-indexed")
    t.add_argument("--matrix")
    t.add_argument("--graph", required=True)
    t.add_argument("--tree", required=True)
    t.add_argument("--strict", action="store_true", help="iterate the full tuple product")
    t.add_argument("--extremal-class", type=int, help="optimize the size of this part (1-indexed)")
    t.add_argument("--objective", choices=["min", "max"])
    t.add_argument("--cap", type=int)
    t.set_defaults(func=cmd_solve_partition)

    s = sub.add_parser("verify", help="compare main results with brute-force oracles")
    s.add_argument("--graph")
    s.add_argument("--tree")
    s.add_argument("--seed", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--p-edge", type=float, default=0.5)
    s.add_argument("--count", type=int, default=5)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("bounds", help="check the width and per-cut inequality chains")
    s.add_argument("--graph", required=True)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--heuristic", action="store_true")
    s.add_argument("--samples", type=int, default=0, help="random cuts to check")
    s.add_argument("--seed", type=int)
    s.add_argument("--vertices")
    s.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RefusalError as exc:
        sys.stderr.write(f"error: refused: {exc}\n")
        return EXIT_REFUSED
    except (GraphFormatError, TreeError) as exc:
        sys.stderr.write(f"error: bad input: {exc}\n")
        return EXIT_BAD_INPUT
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: bad input: {exc}\n")
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
