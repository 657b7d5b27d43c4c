"""Named experiment suites with deterministic, replayable JSON reports.

Each suite returns ``(report, timings)``. The report holds no wall-clock data,
so identical config and seeds give byte-identical JSON; timings travel
separately. Every record that carries an ``image`` also carries a ``host``
spec from which `build_host` regenerates the instance, so `replay` can
re-verify the embedding from scratch.
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from typing import Callable, Optional

from .coloring import (
    check_outtree_coloring,
    check_parity_coloring,
    greedy_refinement,
    natural_orientation,
    parity_coloring,
    refinement_witnesses,
)
from .embedding import (
    bikernel_tree_embedding,
    br_tree_embedding,
    dag_tree_embedding,
    decreasing_tree_search,
    extract_from_rainbow_ary_tree,
    good_tree_search,
    outtree_bound,
    parity_tree_search,
    rainbow_paths_harness,
    st_plan,
    stuck_state_diagnostic,
)
from .formats import parse_tree, serialize_graph
from .generators import (
    cycle,
    default_class_sizes,
    grotzsch,
    oriented_trees,
    planted_br_instance,
    rainbow_ary_host,
    random_coloring,
    random_dag,
    random_graph,
    random_triangle_free,
    synth_outtree_colored,
    undirected_trees,
)
from .graphs import (
    ACYCLIC,
    Embedding,
    chromatic_number,
    forbidden_witness,
    girth,
    is_proper,
    is_triangle_free,
    verify_embedding,
)
from .oracle import (
    aravind_scan,
    contains_induced_copy,
    enumerate_induced_rainbow_paths,
    mu,
    st_number,
)
from .trees import RootedOrientedTree

SUITES: dict[str, Callable] = {}


def suite(name: str):
    def register(fn):
        SUITES[name] = fn
        return fn
    return register


# instance specs


def build_host(spec: dict):
    """(host, coloring) from a JSON-able spec; coloring may be None."""
    kind = spec["kind"]
    if kind == "synth":
        inst = synth_outtree_colored(spec["k"], spec["sizes"], tuple(spec["constraint"]),
                                     spec["extra"], spec["seed"], two_sided=spec["two_sided"])
        return inst.digraph, inst.alpha
    if kind == "random_graph":
        g = random_graph(spec["n"], spec["p"], spec["seed"])
        beta = random_coloring(g, spec["seed"], spec["extra"])
        if spec.get("oriented"):
            alpha = greedy_refinement(g, beta).alpha
            return natural_orientation(g, alpha), alpha
        return g, beta
    if kind == "random_dag":
        d = random_dag(spec["n"], spec["p"], spec["seed"])
        return d, parity_coloring(d)[0]
    if kind == "planted":
        return planted_br_instance(parse_tree(spec["tree"]), spec["r"], spec["seed"]), None
    if kind == "ary":
        g, _, c = rainbow_ary_host(spec["r"], spec["s"], spec["extra"], spec["seed"])
        return g, c
    if kind == "named":
        g = {"c5": cycle(5), "grotzsch": grotzsch()}[spec["name"]]
        return g, chromatic_number(g)[1]
    raise ValueError(f"unknown host kind {kind!r}")


def _run_record(host_spec: dict, T: RootedOrientedTree, res, **extra) -> dict:
    rec = {"host": host_spec, "tree": T.to_text(), "success": bool(res)}
    rec.update(extra)
    if res:
        rec["verdict"] = res.as_dict()
        rec["revalidated"] = res.revalidate()
    else:
        rec["reason"] = res.reason
    return rec


def _passed(rec: dict, need_rainbow: bool = True) -> bool:
    if not rec["success"] or not rec["revalidated"]:
        return False
    v = rec["verdict"]
    if not v["induced"] or v["direction_exact"] is False:
        return False
    return not (need_rainbow and v["rainbow"] is False)


def replay(report: dict) -> list[str]:
    """Regenerate every success record's host and re-verify its image."""
    problems = []
    cache: dict[str, tuple] = {}
    for i, rec in enumerate(report["records"]):
        if not rec.get("success") or "verdict" not in rec or "host" not in rec:
            continue
        key = json.dumps(rec["host"], sort_keys=True)
        if key not in cache:
            cache[key] = build_host(rec["host"])
        host, coloring = cache[key]
        T = parse_tree(rec["tree"])
        image = rec["verdict"]["image"]
        fresh = verify_embedding(host, T, image, coloring)
        want = rec["verdict"]
        if fresh.induced != want["induced"] or fresh.direction_exact != want["direction_exact"]:
            problems.append(f"record {i}: structure verdict differs on replay")
        elif coloring is not None and want["rainbow"] is not None and fresh.rainbow != want["rainbow"]:
            problems.append(f"record {i}: rainbow verdict differs on replay")
    return problems


def run_suite(name: str, **params) -> tuple[dict, dict]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    start = time.perf_counter()
    records, summary, config = SUITES[name](**params)
    elapsed = time.perf_counter() - start
    report = {"suite": name, "config": config, "records": records, "summary": summary}
    return report, {"suite": name, "seconds": round(elapsed, 3)}


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1) + "\n"


def summary_csv(reports: list[dict]) -> str:
    buf = io.StringIO()
    keys = sorted({k for r in reports for k in r["summary"]})
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["suite"] + keys)
    for r in reports:
        writer.writerow([r["suite"]] + [r["summary"].get(k, "") for k in keys])
    return buf.getvalue()


def _tally(records, ok) -> dict:
    good = sum(1 for r in records if ok(r))
    return {"runs": len(records), "passed": good, "failed": len(records) - good,
            "pass": good == len(records)}


# suites


@suite("refinement")
def refinement_suite(graphs: int = 200, max_n: int = 60, seed: int = 0):
    rng = random.Random(seed)
    records = []
    for i in range(graphs):
        n = rng.randint(1, max_n)
        p = round(rng.uniform(0.02, 0.5), 4)
        extra = rng.randint(0, 3)
        gseed = rng.getrandbits(32)
        g = random_graph(n, p, gseed)
        beta = random_coloring(g, gseed, extra)
        order = list(beta.order)
        rng.shuffle(order)
        beta = beta.with_order(order)
        res = greedy_refinement(g, beta)
        D = natural_orientation(g, res.alpha)
        rec = {
            "instance": i, "n": n, "p": p, "seed": gseed, "order": order,
            "colors_before": res.colors_before, "colors_after": res.colors_after,
            "proper": is_proper(g, res.alpha),
            "non_increasing": res.colors_after <= res.colors_before,
            "witnesses": bool(refinement_witnesses(g, beta, res.alpha)),
            "acyclic": D.is_acyclic(),
            "outtree_colored": bool(check_outtree_coloring(D, res.alpha)),
        }
        records.append(rec)
    checks = ("proper", "non_increasing", "witnesses", "acyclic", "outtree_colored")
    summary = _tally(records, lambda r: all(r[c] for c in checks))
    return records, summary, {"graphs": graphs, "max_n": max_n, "seed": seed}


def _synth_spec(k, r_or_g, constraint_kind, seed, extra=0.01, sizes=None, two_sided=False):
    sizes = list(sizes) if sizes is not None else default_class_sizes(k)
    return {"kind": "synth", "k": k, "sizes": sizes, "constraint": [constraint_kind, r_or_g],
            "extra": extra, "seed": seed, "two_sided": two_sided}


@suite("lemma-main")
def lemma_suite(r: int = 2, s: int = 3, seeds: int = 50, k: Optional[int] = None, seed: int = 0):
    k = outtree_bound(r, s) if k is None else k
    trees = oriented_trees(s).out_trees
    records = []
    for i in range(seeds):
        spec = _synth_spec(k, r, "br_free", seed + i)
        d, alpha = build_host(spec)
        for T in trees:
            res = good_tree_search(d, d, alpha, T)
            rec = _run_record(spec, T, res)
            rec["decreasing"] = bool(res) and res.verdict.decreasing
            records.append(rec)
    summary = _tally(records, lambda r: _passed(r) and r["decreasing"])
    summary["bound"] = k
    per = len(trees)
    summary["instances"] = seeds
    summary["instances_succeeded"] = sum(
        all(_passed(x) and x["decreasing"] for x in records[i * per:(i + 1) * per]) for i in range(seeds))
    return records, summary, {"r": r, "s": s, "seeds": seeds, "k": k, "seed": seed}


@suite("oracle-agreement")
def oracle_suite(graphs: int = 300, max_n: int = 12, seed: int = 0):
    rng = random.Random(seed)
    records = []
    small_trees = [T for h in range(2, 5) for T in oriented_trees(h).out_trees]
    for i in range(graphs):
        n = rng.randint(2, max_n)
        spec = {"kind": "random_graph", "n": n, "p": round(rng.uniform(0.15, 0.6), 4),
                "seed": rng.getrandbits(32), "extra": rng.randint(0, 2)}
        g, beta = build_host(spec)
        k = beta.num_colors
        truth = {h: enumerate_induced_rainbow_paths(g, beta, h) for h in range(1, k + 1)}
        m = mu(g, beta)
        longest = max(h for h in truth if truth[h])
        rec = {"instance": i, "host": spec, "k": k, "mu": m, "mu_consistent": m == longest}
        stray = []
        for h in range(2, min(k, 4) + 1):
            orderings = "all" if k <= 5 else 24
            found = rainbow_paths_harness(g, beta, h, orderings, seed=i)
            stray += [list(p) for p in sorted(found.paths - truth[h])]
            if found.paths and h > m:
                rec["mu_consistent"] = False
        rec["stray_paths"] = stray
        unconfirmed = 0
        confirmed = 0
        D, alpha = build_host(dict(spec, oriented=True))
        for T in small_trees:
            # decreasing trees may repeat a color across siblings, so only the
            # out-tree search is held to full rainbowness
            for host, res, need in ((g, decreasing_tree_search(g, beta, T), "decreasing"),
                                    (D, dag_tree_embedding(D, T, alpha), "rainbow")):
                if not res:
                    continue
                sub, _ = host.induce(res.image)
                ok, _ = contains_induced_copy(host, T)
                # the image itself must carry T as well
                inside, _ = contains_induced_copy(sub, T)
                if ok and inside and res.verdict.ok(False) and getattr(res.verdict, need):
                    confirmed += 1
                else:
                    unconfirmed += 1
        rec["tree_successes_confirmed"] = confirmed
        rec["tree_successes_unconfirmed"] = unconfirmed
        records.append(rec)
    summary = _tally(records, lambda r: r["mu_consistent"] and not r["stray_paths"]
                     and r["tree_successes_unconfirmed"] == 0)
    summary["confirmed_tree_successes"] = sum(r["tree_successes_confirmed"] for r in records)
    return records, summary, {"graphs": graphs, "max_n": max_n, "seed": seed}


@suite("c5")
def c5_suite(s: int = 2, seed: int = 0):
    spec = {"kind": "named", "name": "c5"}
    g, beta = build_host(spec)
    chi = beta.num_colors
    k22_free = forbidden_witness(g, "k2r", 2) is None
    found = rainbow_paths_harness(g, beta, s, "all")
    need = 1
    for i in range(2, s + 1):
        need *= i
    need //= 2
    rec = {"host": spec, "chi": chi, "k22_free": k22_free, "runs": found.runs,
           "failures": found.failures, "paths": sorted(list(p) for p in found.paths),
           "distinct": found.count, "required": need}
    ok = chi >= s and k22_free and found.count >= need
    summary = {"runs": 1, "passed": int(ok), "failed": int(not ok), "pass": ok}
    return [rec], summary, {"s": s, "seed": seed}


@suite("aravind")
def aravind_suite(graphs: int = 200, colorings: int = 10, max_n: int = 12, seed: int = 0):
    rng = random.Random(seed)
    corpus = [("grotzsch", grotzsch()), ("c5", cycle(5)), ("c7", cycle(7))]
    i = 0
    while len(corpus) < graphs:
        n = rng.randint(4, max_n)
        gseed = rng.getrandbits(32)
        g = random_triangle_free(n, gseed, round(rng.uniform(0.3, 1.0), 4))
        corpus.append((f"tf-{i}-n{n}-s{gseed}", g))
        i += 1
    report = aravind_scan(corpus, colorings, seed)
    records = [report.as_dict()]
    ok = not report.counterexamples and report.checked >= graphs * colorings
    summary = {"runs": report.checked, "passed": report.checked - len(report.counterexamples),
               "failed": len(report.counterexamples), "pass": ok}
    return records, summary, {"graphs": graphs, "colorings": colorings, "max_n": max_n, "seed": seed}


@suite("dag")
def dag_suite(seeds: int = 10, k: int = 10, class_size: int = 60, r: int = 2, seed: int = 0):
    trees = []
    for h in range(1, 5):
        cat = oriented_trees(h)
        trees += cat.out_trees + cat.in_trees
    records = []
    for i in range(seeds):
        spec = _synth_spec(k, r, "br_free", seed + i, extra=0.002, sizes=[class_size] * k,
                           two_sided=True)
        d, alpha = build_host(spec)
        rd = d.reverse()
        round_trip = serialize_graph(rd.reverse()) == serialize_graph(d)
        flipped = alpha.reversed_order()
        flipped_ok = bool(check_outtree_coloring(rd, flipped))
        for T in trees:
            res = dag_tree_embedding(d, T, alpha)
            rec = _run_record(spec, T, res, kind=T.kind, round_trip=round_trip,
                              reversed_coloring=flipped_ok)
            if res and T.is_in_tree() and T.n > 1:
                mirror = good_tree_search(rd, rd, flipped, T.reverse())
                rec["mirror_exact"] = bool(mirror) and mirror.image == res.image
            records.append(rec)
    summary = _tally(records, lambda r: _passed(r) and r["round_trip"] and r["reversed_coloring"]
                     and r.get("mirror_exact", True))
    return records, summary, {"seeds": seeds, "k": k, "class_size": class_size, "r": r, "seed": seed}


@suite("parity")
def parity_suite(dags: int = 200, max_n: int = 300, seed: int = 0, tree_cap: int = 120):
    rng = random.Random(seed)
    arc_trees = oriented_trees(2).trees
    trees = [T for h in range(1, 5) for T in oriented_trees(h).trees]
    records = []
    for i in range(dags):
        n = rng.randint(1, max_n)
        spec = {"kind": "random_dag", "n": n, "p": round(min(1.0, rng.uniform(1, 8) / n), 6),
                "seed": rng.getrandbits(32)}
        d, gamma = build_host(spec)
        rec = {"instance": i, "host": spec, "colors": max(gamma.colors, default=0),
               "parity_ok": bool(check_parity_coloring(d, gamma))}
        searched = succeeded = bad = 0
        for T in trees:
            if T.n > 2 and n > tree_cap:
                continue
            res = parity_tree_search(d, gamma, T)
            searched += 1
            if res:
                succeeded += 1
                bad += not (res.revalidate() and res.verdict.ok(True))
        rec.update(searched=searched, succeeded=succeeded, bad=bad)
        arc_ok = True
        if d.arc_count:
            for T in arc_trees:
                for root in range(2):
                    res = bikernel_tree_embedding(d, T.rerooted(root))
                    arc_ok &= bool(res) and res.verdict.ok(True)
        rec["single_arc_ok"] = arc_ok
        records.append(rec)
    summary = _tally(records, lambda r: r["parity_ok"] and r["bad"] == 0 and r["single_arc_ok"])
    summary["searches"] = sum(r["searched"] for r in records)
    summary["search_successes"] = sum(r["succeeded"] for r in records)
    return records, summary, {"dags": dags, "max_n": max_n, "seed": seed, "tree_cap": tree_cap}


@suite("br")
def br_suite(seeds: int = 30, r: int = 2, max_s: int = 4, st_max: int = 6, seed: int = 0):
    records = []
    mismatch = []
    for h in range(1, st_max + 1):
        for T in oriented_trees(h).trees:
            if st_plan(T).st != st_number(T):
                mismatch.append(T.to_text())
    records.append({"st_oracle_mismatches": mismatch})
    for h in range(2, max_s + 1):
        for T in oriented_trees(h).trees:
            for i in range(seeds):
                spec = {"kind": "planted", "tree": T.to_text(), "r": r, "seed": seed + i}
                d, _ = build_host(spec)
                res = br_tree_embedding(d, T, r)
                trace = res.trace
                diag = [p.chi_ok for p in trace.peels if p.chi is not None]
                rec = _run_record(spec, T, res, chi_checked=len(diag), chi_ok=all(diag))
                records.append(rec)
    runs = records[1:]
    good = sum(1 for x in runs if _passed(x, need_rainbow=False) and x["chi_ok"])
    ok = good == len(runs) and not mismatch
    summary = {"runs": len(runs), "passed": good, "failed": len(runs) - good, "pass": ok,
               "st_mismatches": len(mismatch), "chi_checks": sum(x["chi_checked"] for x in runs)}
    return records, summary, {"seeds": seeds, "r": r, "max_s": max_s, "st_max": st_max, "seed": seed}


@suite("extraction")
def extraction_suite(extra_edges: int = 30, seed: int = 0):
    records = []
    for r, s in ((2, 3), (2, 4)):
        for extra in (0, extra_edges):
            spec = {"kind": "ary", "r": r, "s": s, "extra": extra, "seed": seed}
            g, A, c = rainbow_ary_host(r, s, extra, seed)
            ary = Embedding(A, g, tuple(range(A.n)), c)
            for h in range(1, s + 1):
                for H in undirected_trees(h):
                    for root in range(H.n):
                        Hr = H.rerooted(root)
                        res = extract_from_rainbow_ary_tree(g, ary, Hr, r, check_host=(h == 1))
                        sub, _ = g.induce(res.image)
                        inside, _ = contains_induced_copy(sub, Hr)
                        records.append(_run_record(spec, Hr, res, oracle=inside, n=g.n))
    summary = _tally(records, lambda x: _passed(x) and x["oracle"])
    return records, summary, {"extra_edges": extra_edges, "seed": seed}


@suite("generators")
def generator_suite(seed: int = 0):
    configs = [
        ("br_free", 2, 6, None, False),
        ("br_free", 2, 10, None, False),
        ("br_free", 3, 9, None, False),
        ("br_free", 2, 10, [60] * 10, True),
        ("girth", 5, 8, None, False),
        ("girth", 6, 6, default_class_sizes(6, growth=3), False),
        ("none", None, 8, None, False),
    ]
    records = []
    for kind, param, k, sizes, two_sided in configs:
        for i in range(5):
            spec = _synth_spec(k, param, kind, seed + i, sizes=sizes, two_sided=two_sided)
            if kind == "none":
                spec["constraint"] = ["none"]
            d, alpha = build_host(spec)
            inst_problems = []
            if not check_outtree_coloring(d, alpha):
                inst_problems.append("out-tree coloring")
            if not d.is_acyclic():
                inst_problems.append("acyclic")
            if kind == "br_free" and forbidden_witness(d, "br", param) is not None:
                inst_problems.append("B_r")
            if kind == "girth":
                gg = girth(d)
                if gg is not ACYCLIC and gg < param:
                    inst_problems.append("girth")
            if two_sided and not check_outtree_coloring(d.reverse(), alpha.reversed_order()):
                inst_problems.append("two-sided")
            records.append({"host": spec, "n": d.n, "arcs": d.arc_count, "problems": inst_problems})
    for i in range(20):
        g = random_triangle_free(8 + i, seed + i)
        records.append({"random_triangle_free": 8 + i, "problems": [] if is_triangle_free(g) else ["triangle"]})
    summary = _tally(records, lambda x: not x["problems"])
    return records, summary, {"seed": seed}


@suite("stuck")
def stuck_suite(seeds: int = 10, k: int = 8, g: int = 5, seed: int = 0):
    records = []
    for i in range(seeds):
        spec = _synth_spec(k, g, "girth", seed + i)
        d, alpha = build_host(spec)
        for s in range(5, 10):
            for T in (RootedOrientedTree.directed_path(s), RootedOrientedTree.out_star(s)):
                res = good_tree_search(d, d, alpha, T)
                if res or res.trace.size < g:
                    continue
                report = stuck_state_diagnostic(res.trace, d, g)
                records.append({"host": spec, "tree": T.to_text(), "size": report.size,
                                "x_size": report.x_size, "h_edges": report.h_edges,
                                "violations": report.violations})
    summary = _tally(records, lambda x: not x["violations"])
    return records, summary, {"seeds": seeds, "k": k, "g": g, "seed": seed}


ACCEPTANCE = [
    ("1 refinement", "refinement", {}),
    ("2 lemma r=2 s=3", "lemma-main", {"r": 2, "s": 3, "seeds": 50}),
    ("2 lemma r=2 s=4", "lemma-main", {"r": 2, "s": 4, "seeds": 50}),
    ("2 lemma r=3 s=3", "lemma-main", {"r": 3, "s": 3, "seeds": 25}),
    ("3 oracle agreement", "oracle-agreement", {}),
    ("4 C5 rainbow path", "c5", {}),
    ("5 Aravind scan", "aravind", {}),
    ("6 DAG embedding", "dag", {}),
    ("7 parity / bikernel", "parity", {}),
    ("8 B_r embedding", "br", {}),
    ("9 extraction", "extraction", {}),
    ("10 generator fidelity", "generators", {}),
]
