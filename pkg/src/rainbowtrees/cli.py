"""Command-line front end.

Exit codes: 0 on success, 1 when a search fails although its guarantee was
claimed for the input, 2 on bad input (unreadable files, malformed text,
guard or feasibility limits).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import experiments
from .coloring import (
    check_outtree_coloring,
    check_parity_coloring,
    greedy_refinement,
    level_coloring,
    natural_orientation,
)
from .embedding import (
    bikernel_tree_embedding,
    br_bound,
    br_tree_embedding,
    dag_tree_embedding,
    girth_bound,
    good_tree_search,
    outtree_bound,
    parity_tree_search,
    rainbow_paths_harness,
    st_plan,
    stuck_state_diagnostic,
)
from .formats import (
    FormatError,
    parse_coloring,
    parse_graph,
    parse_tree,
    serialize_coloring,
    serialize_graph,
    serialize_tree,
)
from .generators import (
    BudgetExhausted,
    default_class_sizes,
    mycielski,
    named_graph,
    oriented_trees,
    planted_br_instance,
    rainbow_ary_host,
    random_coloring,
    random_dag,
    random_graph,
    random_triangle_free,
    synth_outtree_colored,
)
from .graphs import (
    ACYCLIC,
    DEFAULT_CHI_GUARD,
    Coloring,
    GuardError,
    OrientedGraph,
    chromatic_number,
    forbidden_witness,
    girth,
    is_triangle_free,
    monochromatic_edge,
    verify_embedding,
)
from .oracle import aravind_scan, contains_induced_copy, enumerate_induced_rainbow_paths, mu


class InputError(Exception):
    pass


class Outcome:
    """Collected result of one command: printed lines, JSON payload, exit code."""

    def __init__(self):
        self.lines: list[str] = []
        self.data: dict = {}
        self.code = 0

    def say(self, text: str) -> None:
        self.lines.append(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text)


def _graph(path):
    return parse_graph(_read(path))


def _coloring(path, n, order=None) -> Coloring:
    c = parse_coloring(_read(path), n)
    if order:
        c = c.with_order([int(x) for x in order.split(",")])
    return c


# gen


def cmd_gen(args, out: Outcome):
    what = args.what
    coloring = None
    if what == "graph":
        if args.family == "random":
            g = random_graph(args.n, args.p, args.seed)
        elif args.family == "triangle-free":
            g = random_triangle_free(args.n, args.seed, args.p)
        elif args.family == "mycielski":
            # one level over K_2 gives C_5, two give the Groetzsch graph
            g = mycielski(named_graph("complete", 2), args.levels)
        else:
            params = [int(x) for x in args.params.split(",")] if args.params else []
            g = named_graph(args.family, *params)
        text = serialize_graph(g)
        if args.with_coloring:
            coloring = random_coloring(g, args.seed, args.extra)
    elif what == "dag":
        text = serialize_graph(random_dag(args.n, args.p, args.seed))
    elif what == "synth":
        kind, _, param = args.constraint.partition(":")
        constraint = (kind,) if kind == "none" else (kind, int(param))
        sizes = [int(x) for x in args.sizes.split(",")] if args.sizes else default_class_sizes(args.k)
        inst = synth_outtree_colored(args.k, sizes, constraint, args.extra_arcs, args.seed,
                                     two_sided=args.two_sided)
        text = serialize_graph(inst.digraph)
        coloring = inst.alpha
    elif what == "planted":
        T = parse_tree(_read(args.tree))
        text = serialize_graph(planted_br_instance(T, args.r, args.seed))
    elif what == "ary":
        g, _, coloring = rainbow_ary_host(args.r, args.s, args.extra, args.seed)
        text = serialize_graph(g)
    elif what == "trees":
        cat = oriented_trees(args.s)
        pick = {"all": cat.trees, "out": cat.out_trees, "in": cat.in_trees}[args.kind]
        text = "".join(serialize_tree(T) + "\n" for T in pick)
        out.data["count"] = len(pick)
    else:
        raise InputError(f"unknown generator {what}")
    if args.out:
        _write(args.out, text)
    else:
        out.say(text.rstrip("\n"))
    if coloring is not None:
        if args.coloring_out:
            _write(args.coloring_out, serialize_coloring(coloring))
        out.data["colors"] = coloring.num_colors


def cmd_refine(args, out: Outcome):
    g = _graph(args.input)
    beta = _coloring(args.coloring, g.n, args.order)
    res = greedy_refinement(g, beta)
    text = serialize_coloring(res.alpha)
    _write(args.out, text)
    if not args.out:
        out.say(text.rstrip("\n"))
    out.data.update(colors_before=res.colors_before, colors_after=res.colors_after)
    out.say(f"# colors {res.colors_before} -> {res.colors_after}")


def cmd_orient(args, out: Outcome):
    g = _graph(args.input)
    c = _coloring(args.coloring, g.n, args.order)
    text = serialize_graph(natural_orientation(g, c))
    _write(args.out, text)
    if not args.out:
        out.say(text.rstrip("\n"))


def cmd_verify(args, out: Outcome):
    g = _graph(args.input)
    c = _coloring(args.coloring, g.n, args.order) if args.coloring else None
    checks = 0

    def need_coloring(name):
        if c is None:
            raise InputError(f"--{name} needs --coloring")

    def need_digraph(name):
        if not isinstance(g, OrientedGraph):
            raise InputError(f"--{name} needs a digraph")

    if args.girth:
        value = girth(g)
        out.say("acyclic" if value is ACYCLIC else str(value))
        out.data["girth"] = None if value is ACYCLIC else value
        checks += 1
    if args.proper:
        need_coloring("proper")
        bad = monochromatic_edge(g, c)
        out.data["proper"] = bad is None
        out.say("proper" if bad is None else f"monochromatic edge {bad[0]} {bad[1]}")
        out.code |= bad is not None
        checks += 1
    if args.outtree:
        need_coloring("outtree")
        need_digraph("outtree")
        res = check_outtree_coloring(g, c)
        out.data["outtree"] = res.ok
        out.say("out-tree coloring" if res else f"vertex {res.vertex} misses color {res.missing}")
        out.code |= not res
        checks += 1
    if args.parity:
        need_coloring("parity")
        need_digraph("parity")
        res = check_parity_coloring(g, c)
        out.data["parity"] = res.ok
        out.say("parity coloring" if res else
                f"vertex {res.vertex} lacks {res.detail}-neighbour of color {res.missing}")
        out.code |= not res
        checks += 1
    if args.acyclic:
        need_digraph("acyclic")
        ok = g.is_acyclic()
        out.data["acyclic"] = ok
        out.say("acyclic" if ok else "has a directed cycle")
        out.code |= not ok
        checks += 1
    if args.triangle_free:
        ok = is_triangle_free(g)
        out.data["triangle_free"] = ok
        out.say("triangle-free" if ok else "has a triangle")
        out.code |= not ok
        checks += 1
    for name, r in (("k2r", args.k2r), ("br", args.br)):
        if r is None:
            continue
        if name == "br":
            need_digraph("br")
        w = forbidden_witness(g, name, r)
        out.data[f"{name}_free"] = w is None
        label = f"K_2,{r}" if name == "k2r" else f"B_{r}"
        out.say(f"{label}-free" if w is None else
                f"{label} at pair {w.pair} with {' '.join(map(str, w.common))}")
        out.code |= w is not None
        checks += 1
    if args.chi:
        k, _ = chromatic_number(g, guard=args.guard_n)
        out.data["chi"] = k
        out.say(str(k))
        checks += 1
    if args.tree:
        T = parse_tree(_read(args.tree))
        image = [int(x) for x in args.image.split(",")]
        v = verify_embedding(g, T, image, c)
        out.data["embedding"] = {"induced": v.induced, "direction_exact": v.direction_exact,
                                 "rainbow": v.rainbow, "decreasing": v.decreasing}
        out.say(json.dumps(out.data["embedding"], sort_keys=True))
        out.code |= not v.ok(c is not None)
        checks += 1
    if not checks:
        raise InputError("no check selected")


def _k2r_guarantee(g, c, s, r, guard) -> tuple[bool, str]:
    """Whether the induced rainbow path guarantee provably applies."""
    if r is None:
        return False, "no --r given"
    if g.n > guard:
        return False, "host above guard; hypotheses not checked"
    if forbidden_witness(g, "k2r", r) is not None:
        return False, f"host contains K_2,{r}"
    chi, _ = chromatic_number(g, guard=guard)
    need = outtree_bound(r, s)
    if chi < need:
        return False, f"chi {chi} below {need}"
    return True, f"K_2,{r}-free with chi {chi} >= {need}"


def cmd_find_rainbow_path(args, out: Outcome):
    g = _graph(args.input).underlying()
    c = _coloring(args.coloring, g.n)
    orderings = args.orderings if args.orderings == "all" else int(args.orderings)
    res = rainbow_paths_harness(g, c, args.s, orderings, seed=args.seed)
    paths = sorted(res.paths)
    for p in paths:
        out.say(" ".join(map(str, p)))
    out.say(f"# {len(paths)} distinct paths over {res.runs} orderings, {res.failures} failed runs")
    claimed, why = _k2r_guarantee(g, c, args.s, args.r, args.guard_n)
    out.data.update(paths=[list(p) for p in paths], runs=res.runs, failures=res.failures,
                    guarantee=claimed, guarantee_reason=why)
    if claimed and (not paths or res.failures):
        out.code = 1


def _tree_claim(args, d, T, variant, colors) -> tuple[bool, str]:
    s = T.n
    if variant == "parity":
        return (s <= 2 and d.arc_count > 0), "single arc" if s <= 2 else "no desk-scale bound"
    if args.r is None and variant in ("dag", "br"):
        return False, "no --r given"
    if variant == "dag":
        if forbidden_witness(d, "br", args.r) is not None:
            return False, f"host contains B_{args.r}"
        need = outtree_bound(args.r, s)
        return colors >= need, f"{colors} colors vs bound {need}"
    if variant == "br":
        if forbidden_witness(d, "br", args.r) is not None:
            return False, f"host contains B_{args.r}"
        if d.n > args.guard_n:
            return False, "host above guard; chi not computed"
        chi, _ = chromatic_number(d, guard=args.guard_n)
        need = br_bound(s, st_plan(T).st, args.r)
        return chi >= need, f"chi {chi} vs bound {need}"
    if variant == "girth":
        gg = girth(d)
        if gg is not ACYCLIC and gg < args.g:
            return False, f"girth {gg} below {args.g}"
        need = girth_bound(s, args.g)
        return colors >= need, f"{colors} colors vs bound {need:.2f}"
    return False, ""


def cmd_find_tree(args, out: Outcome):
    d = _graph(args.input)
    if not isinstance(d, OrientedGraph):
        raise InputError("find-tree needs a digraph")
    T = parse_tree(_read(args.tree))
    c = _coloring(args.coloring, d.n, args.order) if args.coloring else None
    variant = args.variant
    colors = 0
    if variant == "dag":
        res = dag_tree_embedding(d, T, c)
        colors = res.coloring.num_colors if res and res.coloring else (
            c.num_colors if c else greedy_refinement(d.underlying(), level_coloring(d)).alpha.num_colors)
    elif variant == "parity":
        if c is None:
            res = bikernel_tree_embedding(d, T)
        else:
            res = parity_tree_search(d, c, T)
    elif variant == "br":
        if args.r is None:
            raise InputError("--r is required for the br variant")
        res = br_tree_embedding(d, T, args.r)
    else:
        alpha = c if c is not None else greedy_refinement(d.underlying(), level_coloring(d)).alpha
        colors = alpha.num_colors
        res = good_tree_search(d, d, alpha, T)
        if not res and res.trace.size >= args.g:
            report = stuck_state_diagnostic(res.trace, d, args.g)
            out.data["stuck"] = {"size": report.size, "x_size": report.x_size,
                                 "h_edges": report.h_edges, "violations": report.violations}
    claimed, why = _tree_claim(args, d, T, variant, colors)
    out.data.update(variant=variant, success=bool(res), guarantee=claimed, guarantee_reason=why)
    if res:
        out.data["embedding"] = res.as_dict()
        out.say(" ".join(map(str, res.image)))
    else:
        out.data["reason"] = res.reason
        out.say(f"# no embedding: {res.reason}")
        if claimed:
            out.code = 1


def cmd_oracle(args, out: Outcome):
    if args.which in ("paths", "mu") and not args.coloring:
        raise InputError(f"oracle {args.which} needs --coloring")
    if args.which == "contains" and not args.tree:
        raise InputError("oracle contains needs --tree")
    if args.which == "aravind":
        corpus = []
        for p in args.inputs:
            corpus.append((p, _graph(p)))
        rep = aravind_scan(corpus, args.colorings, args.seed)
        out.data.update(rep.as_dict())
        out.say(f"{rep.checked} pairs over {rep.graphs} graphs, {len(rep.counterexamples)} counterexamples")
        for ce in rep.counterexamples:
            out.say(json.dumps(ce, sort_keys=True))
        out.code = 1 if rep.counterexamples else 0
        return
    g = _graph(args.inputs[0])
    if args.which == "paths":
        c = _coloring(args.coloring, g.n)
        found = sorted(enumerate_induced_rainbow_paths(g, c, args.s, guard_n=args.guard_n))
        for p in found:
            out.say(" ".join(map(str, p)))
        out.data["paths"] = [list(p) for p in found]
    elif args.which == "mu":
        c = _coloring(args.coloring, g.n)
        m = mu(g, c, guard_n=args.guard_n)
        out.say(str(m))
        out.data["mu"] = m
    else:
        T = parse_tree(_read(args.tree))
        ok, witness = contains_induced_copy(g, T, guard=args.guard_n)
        out.say(" ".join(map(str, witness)) if ok else "absent")
        out.data.update(contains=ok, witness=list(witness) if ok else None)


def cmd_experiment(args, out: Outcome):
    params = {}
    for item in args.param or []:
        key, _, value = item.partition("=")
        params[key.replace("-", "_")] = json.loads(value)
    for key in ("r", "s", "seeds"):
        if getattr(args, key) is not None:
            params[key] = getattr(args, key)
    if args.name == "acceptance":
        jobs = experiments.ACCEPTANCE
    else:
        jobs = [(args.name, args.name, {})]
    reports, timings = [], []
    for label, name, base in jobs:
        merged = dict(base)
        if args.name != "acceptance":
            merged.update(params)
        if "seed" in experiments.SUITES[name].__code__.co_varnames:
            merged.setdefault("seed", args.seed)
        rep, t = experiments.run_suite(name, **merged)
        rep["label"] = label
        reports.append(rep)
        timings.append(dict(t, label=label))
        s = rep["summary"]
        out.say(f"{'PASS' if s['pass'] else 'FAIL'} {label}: {s['passed']}/{s['runs']} ({t['seconds']}s)")
        if not s["pass"]:
            out.code = 1
    out.data = reports[0] if len(reports) == 1 else {"reports": reports}
    out.timings = timings
    if args.csv:
        _write(args.csv, experiments.summary_csv(reports))


def build_parser() -> argparse.ArgumentParser:
    def global_flags(p, defaults):
        kw = {} if defaults else {"default": argparse.SUPPRESS}
        p.add_argument("--seed", type=int, **(kw or {"default": 0}))
        p.add_argument("--guard-n", type=int, help="vertex limit for exhaustive routines",
                       **(kw or {"default": DEFAULT_CHI_GUARD}))
        p.add_argument("--json-out", help="write the machine-readable result here",
                       **(kw or {"default": None}))

    parser = argparse.ArgumentParser(prog="rainbowtrees", description=__doc__.splitlines()[0])
    global_flags(parser, True)
    # the same flags are accepted after the subcommand as well
    common = argparse.ArgumentParser(add_help=False)
    global_flags(common, False)
    sub = parser.add_subparsers(dest="command", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **k: _add(*a, parents=[common], **k)

    gen = sub.add_parser("gen", help="generate graphs, digraphs, instances or tree catalogs")
    gen.add_argument("what", choices=["graph", "dag", "synth", "planted", "ary", "trees"])
    gen.add_argument("--family", default="random",
                     help="random, triangle-free, mycielski, cycle, path, complete, kneser, petersen, grotzsch, brinkmann")
    gen.add_argument("--params", help="comma-separated family parameters, e.g. 5 for cycle")
    gen.add_argument("--n", type=int)
    gen.add_argument("--p", type=float, default=0.3)
    gen.add_argument("--levels", type=int, default=1)
    gen.add_argument("--k", type=int, default=6)
    gen.add_argument("--sizes")
    gen.add_argument("--constraint", default="br_free:2", help="none, br_free:R or girth:G")
    gen.add_argument("--extra-arcs", type=float, default=0.0)
    gen.add_argument("--two-sided", action="store_true")
    gen.add_argument("--tree")
    gen.add_argument("--r", type=int, default=2)
    gen.add_argument("--s", type=int, default=3)
    gen.add_argument("--extra", type=int, default=0)
    gen.add_argument("--kind", choices=["all", "out", "in"], default="all")
    gen.add_argument("--with-coloring", action="store_true")
    gen.add_argument("--out")
    gen.add_argument("--coloring-out")
    gen.set_defaults(func=cmd_gen)

    for name, func, helptext in (("refine", cmd_refine, "greedy refinement of a coloring"),
                                 ("orient", cmd_orient, "natural orientation under a coloring")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--input", required=True)
        p.add_argument("--coloring", required=True)
        p.add_argument("--order", help="comma-separated colors, smallest first")
        p.add_argument("--out")
        p.set_defaults(func=func)

    ver = sub.add_parser("verify", help="property checkers")
    ver.add_argument("--input", required=True)
    ver.add_argument("--coloring")
    ver.add_argument("--order")
    for flag in ("girth", "proper", "outtree", "parity", "acyclic", "triangle-free", "chi"):
        ver.add_argument(f"--{flag}", action="store_true")
    ver.add_argument("--k2r", type=int, metavar="R")
    ver.add_argument("--br", type=int, metavar="R")
    ver.add_argument("--tree", help="tree file; with --image checks an embedding")
    ver.add_argument("--image", help="comma-separated host vertices, one per tree vertex")
    ver.set_defaults(func=cmd_verify)

    frp = sub.add_parser("find-rainbow-path", help="collect induced rainbow paths over color orders")
    frp.add_argument("--input", required=True)
    frp.add_argument("--coloring", required=True)
    frp.add_argument("--s", type=int, required=True)
    frp.add_argument("--orderings", default="all", help="'all' or a number of sampled orders")
    frp.add_argument("--r", type=int, help="claim the guarantee for K_2,r-free hosts")
    frp.set_defaults(func=cmd_find_rainbow_path)

    ft = sub.add_parser("find-tree", help="embed an oriented tree")
    ft.add_argument("variant", choices=["dag", "parity", "br", "girth"])
    ft.add_argument("--input", required=True)
    ft.add_argument("--tree", required=True)
    ft.add_argument("--coloring")
    ft.add_argument("--order")
    ft.add_argument("--r", type=int)
    ft.add_argument("--g", type=int, default=5)
    ft.set_defaults(func=cmd_find_tree)

    orc = sub.add_parser("oracle", help="brute-force ground truth")
    orc.add_argument("which", choices=["paths", "mu", "contains", "aravind"])
    orc.add_argument("inputs", nargs="+")
    orc.add_argument("--coloring")
    orc.add_argument("--s", type=int, default=3)
    orc.add_argument("--tree")
    orc.add_argument("--colorings", type=int, default=10)
    orc.set_defaults(func=cmd_oracle)

    exp = sub.add_parser("experiment", help="named experiment suites")
    exp.add_argument("name", choices=sorted(experiments.SUITES) + ["acceptance"])
    exp.add_argument("--r", type=int)
    exp.add_argument("--s", type=int)
    exp.add_argument("--seeds", type=int)
    exp.add_argument("--param", action="append", help="extra suite parameter key=json")
    exp.add_argument("--csv")
    exp.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Outcome()
    out.timings = None
    try:
        args.func(args, out)
    except (InputError, FormatError, GuardError, BudgetExhausted, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for line in out.lines:
        print(line)
    if args.json_out:
        Path(args.json_out).write_text(json.dumps(out.data, sort_keys=True, indent=1) + "\n")
        if out.timings is not None:
            Path(args.json_out + ".timings.json").write_text(json.dumps(out.timings, indent=1) + "\n")
    return out.code


if __name__ == "__main__":
    sys.exit(main())
