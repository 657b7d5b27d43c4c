"""Brute-force ground truth, kept independent of the constructive searches."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .graphs import (
    AnyGraph,
    Coloring,
    GuardError,
    OrientedGraph,
    chromatic_number,
    is_triangle_free,
    k_coloring,
    require_proper,
)
from .trees import RootedOrientedTree

PATH_GUARD_N = 40
PATH_GUARD_S = 10
COPY_GUARD_N = 14


def _check_path_guard(g: AnyGraph, s: Optional[int], guard_n: int, guard_s: int) -> None:
    if g.n > guard_n:
        raise GuardError(f"path enumeration guarded to {guard_n} vertices, got {g.n}")
    if s is not None and s > guard_s:
        raise GuardError(f"path enumeration guarded to s <= {guard_s}, got {s}")


def enumerate_induced_rainbow_paths(g: AnyGraph, c: Coloring, s: int, guard_n: int = PATH_GUARD_N,
                                    guard_s: int = PATH_GUARD_S) -> set[tuple[int, ...]]:
    """All induced s-vertex paths with distinct colors, smaller endpoint first."""
    g = g.underlying()
    require_proper(g, c)
    _check_path_guard(g, s, guard_n, guard_s)
    if s < 1:
        return set()
    adj = g.adj
    col = c.colors
    found: set[tuple[int, ...]] = set()
    path: list[int] = []
    on_path: set[int] = set()
    used: set[int] = set()

    def extend():
        if len(path) == s:
            if path[0] <= path[-1]:
                found.add(tuple(path))
            return
        last = path[-1]
        for x in adj[last]:
            if x in on_path or col[x] in used:
                continue
            # x may touch only the current endpoint
            if len(adj[x] & on_path) != 1:
                continue
            path.append(x)
            on_path.add(x)
            used.add(col[x])
            extend()
            path.pop()
            on_path.discard(x)
            used.discard(col[x])

    for v in range(g.n):
        path.append(v)
        on_path.add(v)
        used.add(col[v])
        extend()
        path.pop()
        on_path.clear()
        used.clear()
    return found


def mu(g: AnyGraph, c: Coloring, guard_n: int = PATH_GUARD_N) -> int:
    """Vertex count of a longest induced rainbow path."""
    g = g.underlying()
    require_proper(g, c)
    _check_path_guard(g, None, guard_n, PATH_GUARD_S)
    if g.n == 0:
        return 0
    adj = g.adj
    col = c.colors
    best = 1
    cap = c.num_colors

    def extend(last, on_path, used, length):
        nonlocal best
        if length > best:
            best = length
        if best == cap:
            return
        for x in adj[last]:
            if x in on_path or col[x] in used or len(adj[x] & on_path) != 1:
                continue
            extend(x, on_path | {x}, used | {col[x]}, length + 1)

    for v in range(g.n):
        extend(v, frozenset([v]), frozenset([col[v]]), 1)
        if best == cap:
            break
    return best


def contains_induced_copy(host: AnyGraph, T: RootedOrientedTree,
                          guard: int = COPY_GUARD_N) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Exhaustive search for an induced copy of T; directions must match on
    oriented hosts and are ignored on undirected ones."""
    if host.n > guard:
        raise GuardError(f"induced-copy search guarded to {guard} hosts vertices, got {host.n}")
    oriented = isinstance(host, OrientedGraph)
    order = T.dfs_order
    image: dict[int, int] = {}
    used: set[int] = set()

    def fits(w, x):
        p = T.parent[w]
        px = image[p]
        if oriented:
            if T.up[w] and not host.has_arc(x, px):
                return False
            if not T.up[w] and not host.has_arc(px, x):
                return False
        elif not host.has_edge(px, x):
            return False
        # no other adjacency to the mapped vertices
        return all(not host.has_edge(x, y) for z, y in image.items() if z != p)

    def solve(j):
        if j == len(order):
            return True
        w = order[j]
        for x in range(host.n):
            if x in used:
                continue
            if j > 0 and not fits(w, x):
                continue
            image[w] = x
            used.add(x)
            if solve(j + 1):
                return True
            del image[w]
            used.discard(x)
        return False

    if host.n == 0:
        return False, None
    if solve(0):
        return True, tuple(image[w] for w in range(T.n))
    return False, None


@dataclass
class AravindReport:
    checked: int = 0
    graphs: int = 0
    skipped: list[str] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "instances_checked": self.checked,
            "graphs": self.graphs,
            "skipped": self.skipped,
            "counterexamples": self.counterexamples,
        }


def aravind_scan(corpus: Iterable, colorings_per_graph: int, seed: int = 0) -> AravindReport:
    """For each triangle-free graph, sample proper chi-colorings and look for an
    induced rainbow path on chi vertices. Corpus items are graphs or (name, graph)."""
    report = AravindReport()
    rng = random.Random(seed)
    for idx, item in enumerate(corpus):
        name, g = item if isinstance(item, tuple) else (f"#{idx}", item)
        g = g.underlying()
        if not is_triangle_free(g):
            report.skipped.append(f"{name}: contains a triangle")
            continue
        chi, _ = chromatic_number(g)
        report.graphs += 1
        for _ in range(colorings_per_graph):
            c = k_coloring(g, chi, random.Random(rng.getrandbits(64)))
            report.checked += 1
            if chi == 0:
                continue
            if not enumerate_induced_rainbow_paths(g, c, chi):
                report.counterexamples.append(
                    {"graph": name, "n": g.n, "edges": g.edges(), "chi": chi, "coloring": list(c.colors)})
    return report


def st_number(T: RootedOrientedTree) -> int:
    """Leaf-stripping depth by plain recursion on ever smaller trees."""
    if T.n == 1:
        return 0
    best = None
    for leaves in (T.out_leaves(), T.in_leaves()):
        if not leaves:
            continue
        rest, _ = T.remove(leaves)
        depth = 1 + st_number(rest)
        if best is None or depth < best:
            best = depth
    return best
