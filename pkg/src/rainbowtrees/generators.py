"""Test-instance sources: named graphs, Mycielskians, random graphs and DAGs,
out-tree-colored synthetic digraphs, planted B_r instances and tree catalogs."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .coloring import check_outtree_coloring
from .embedding import st_plan
from .graphs import (
    Coloring,
    OrientedGraph,
    UndirectedGraph,
    forbidden_witness,
    girth,
    is_triangle_free,
)
from .trees import RootedOrientedTree, complete_ary_tree

TREE_CATALOG_GUARD = 7


class BudgetExhausted(RuntimeError):
    """Rejection sampling or synthesis ran out of retries."""


# named graphs

_BRINKMANN = {
    0: [2, 5, 7, 13], 1: [3, 6, 7, 8], 2: [4, 8, 9], 3: [5, 9, 10], 4: [6, 10, 11],
    5: [11, 12], 6: [12, 13], 7: [15, 20], 8: [14, 16], 9: [15, 17], 10: [16, 18],
    11: [17, 19], 12: [18, 20], 13: [14, 19], 14: [17, 18], 15: [18, 19], 16: [19, 20],
    17: [20],
}


def cycle(n: int) -> UndirectedGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return UndirectedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> UndirectedGraph:
    return UndirectedGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> UndirectedGraph:
    return UndirectedGraph.from_edges(n, itertools.combinations(range(n), 2))


def kneser(n: int, k: int) -> UndirectedGraph:
    if not 0 < k <= n:
        raise ValueError("kneser(n, k) needs 0 < k <= n")
    subsets = [frozenset(c) for c in itertools.combinations(range(n), k)]
    edges = [(i, j) for i, j in itertools.combinations(range(len(subsets)), 2)
             if subsets[i].isdisjoint(subsets[j])]
    return UndirectedGraph.from_edges(len(subsets), edges)


def grotzsch() -> UndirectedGraph:
    # outer 5-cycle 0..4, inner star 5..9 around hub 10
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, (i - 1) % 5) for i in range(5)]
    edges += [(5 + i, 10) for i in range(5)]
    return UndirectedGraph.from_edges(11, edges)


def named_graph(name: str, *params: int) -> UndirectedGraph:
    name = name.lower()
    if name == "petersen":
        return kneser(5, 2)
    if name == "grotzsch":
        return grotzsch()
    if name == "brinkmann":
        return UndirectedGraph.from_edges(21, [(u, v) for u, vs in _BRINKMANN.items() for v in vs])
    if name in ("cycle", "path", "complete"):
        (n,) = params
        return {"cycle": cycle, "path": path, "complete": complete}[name](n)
    if name == "kneser":
        n, k = params
        return kneser(n, k)
    raise ValueError(f"unknown graph {name!r}")


def mycielski(g: UndirectedGraph, levels: int = 1) -> UndirectedGraph:
    """Iterated Mycielskian: each level adds a shadow of every vertex and a hub."""
    if levels < 1:
        raise ValueError("levels must be at least 1")
    for _ in range(levels):
        n = g.n
        edges = list(g.edges())
        for u, v in g.edges():
            edges.append((u, n + v))
            edges.append((v, n + u))
        edges += [(n + v, 2 * n) for v in range(n)]
        g = UndirectedGraph.from_edges(2 * n + 1, edges)
    return g


# random graphs


def random_graph(n: int, p: float, seed: int, filter: str = "none", girth_bound: int = 5,
                 budget: int = 1000) -> UndirectedGraph:
    """G(n, p) with optional rejection filter 'triangle_free' or 'girth'."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    for _ in range(budget):
        edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
        g = UndirectedGraph.from_edges(n, edges)
        if filter == "none":
            return g
        if filter == "triangle_free" and is_triangle_free(g):
            return g
        if filter == "girth" and girth(g) >= girth_bound:
            return g
        if filter not in ("none", "triangle_free", "girth"):
            raise ValueError(f"unknown filter {filter!r}")
    raise BudgetExhausted(f"no {filter} sample in {budget} tries")


def random_triangle_free(n: int, seed: int, p: float = 1.0) -> UndirectedGraph:
    """Random triangle-free process: visit pairs in random order, keep an edge
    (with probability p) when it closes no triangle."""
    rng = random.Random(seed)
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    adj = [set() for _ in range(n)]
    for u, v in pairs:
        if adj[u] & adj[v] or rng.random() >= p:
            continue
        adj[u].add(v)
        adj[v].add(u)
    return UndirectedGraph(n, tuple(map(frozenset, adj)))


def random_dag(n: int, p: float, seed: int) -> OrientedGraph:
    """Random vertex order; each forward pair becomes an arc with probability p."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    arcs = [(perm[i], perm[j]) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
    return OrientedGraph.from_arcs(n, arcs)


def random_coloring(g: UndirectedGraph, seed: int, extra: int = 0) -> Coloring:
    """First-fit coloring in a random vertex order, with `extra` additional
    colors sprinkled in by recoloring random vertices to fresh colors."""
    rng = random.Random(seed)
    order = list(range(g.n))
    rng.shuffle(order)
    colors = [0] * g.n
    for v in order:
        taken = {colors[u] for u in g.adj[v]}
        c = 1
        while c in taken:
            c += 1
        colors[v] = c
    top = max(colors, default=0)
    for i in range(min(extra, g.n)):
        colors[rng.randrange(g.n)] = top + i + 1
    used = sorted(set(colors))
    remap = {c: i + 1 for i, c in enumerate(used)}
    return Coloring.of([remap[c] for c in colors])


# synthetic out-tree-colored digraphs


@dataclass(frozen=True)
class SynthInstance:
    digraph: OrientedGraph
    alpha: Coloring
    constraint: tuple
    seed: int

    def validate(self) -> list[str]:
        problems = []
        d = self.digraph
        if not check_outtree_coloring(d, self.alpha):
            problems.append("not an out-tree coloring")
        if not d.is_acyclic():
            problems.append("not acyclic")
        kind = self.constraint[0]
        if kind == "br_free" and forbidden_witness(d, "br", self.constraint[1]) is not None:
            problems.append("contains B_r")
        if kind == "girth" and girth(d) < self.constraint[1]:
            problems.append("girth too small")
        return problems


def default_class_sizes(k: int, top: int = 1, growth: float = 1.8, cap: int = 400) -> list[int]:
    """Class sizes for colors 1..k, growing geometrically toward low colors."""
    return [min(cap, max(1, math.ceil(top * growth ** (k - c)))) for c in range(1, k + 1)]


class _Builder:
    def __init__(self, n: int, constraint: tuple):
        self.n = n
        self.out = [set() for _ in range(n)]
        self.inn = [set() for _ in range(n)]
        self.kind = constraint[0]
        self.param = constraint[1] if len(constraint) > 1 else None

    def nbr(self, v):
        return self.out[v] | self.inn[v]

    def allowed(self, v: int, x: int) -> bool:
        if x in self.out[v] or v in self.out[x]:
            return False
        if self.kind == "br_free":
            return not self._br_created(v, x, self.param)
        if self.kind == "girth":
            return self._far(v, x, self.param - 1)
        return True

    def _br_created(self, v, x, r) -> bool:
        # witnesses (a, b) with r vertices in N+(a) & N(b) that use the new arc v->x
        out_v = self.out[v] | {x}
        for b in self.nbr(x):
            if b != v and len((out_v & self.nbr(b)) - {v, b}) >= r:
                return True
        nbr_v = self.nbr(v) | {x}
        for a in self.inn[x]:
            if a != v and len((self.out[a] & nbr_v) - {a, v}) >= r:
                return True
        nbr_x = self.nbr(x) | {v}
        for a in self.inn[v]:
            if a != x and len((self.out[a] & nbr_x) - {a, x}) >= r:
                return True
        return False

    def _far(self, v, x, depth) -> bool:
        """True when x is not within distance depth-1 of v (new edge closes no cycle shorter than depth+1)."""
        seen = {v}
        frontier = [v]
        for _ in range(depth - 1):
            nxt = []
            for u in frontier:
                for w in self.nbr(u):
                    if w == x:
                        return False
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return True

    def add(self, v, x):
        self.out[v].add(x)
        self.inn[x].add(v)

    def graph(self) -> OrientedGraph:
        return OrientedGraph(self.n, tuple(map(frozenset, self.out)), tuple(map(frozenset, self.inn)))


def synth_outtree_colored(k: int, class_sizes: Optional[Sequence[int]] = None,
                          constraint: tuple = ("none",), extra_arc_prob: float = 0.0,
                          seed: int = 0, retry_budget: int = 50,
                          two_sided: bool = False) -> SynthInstance:
    """Digraph with color classes C_1..C_k whose every vertex has an out-arc into
    every lower class, all arcs running high to low.

    constraint: ("none",), ("br_free", r) or ("girth", g), enforced arc by arc.
    two_sided additionally gives every vertex an in-arc from every higher class,
    so the reversed color order is an out-tree coloring of the reversed digraph.
    Raises BudgetExhausted rather than weakening k or the constraint.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    sizes = list(class_sizes) if class_sizes is not None else default_class_sizes(k)
    if len(sizes) != k or any(s < 1 for s in sizes):
        raise ValueError("class_sizes needs k positive entries")
    rng = random.Random(seed)
    classes = []
    start = 0
    for s in sizes:
        classes.append(list(range(start, start + s)))
        start += s
    n = start
    color = [0] * n
    for c, members in enumerate(classes, start=1):
        for v in members:
            color[v] = c
    for _ in range(retry_budget):
        b = _Builder(n, constraint)
        if _synth_attempt(b, classes, rng, two_sided) and _synth_extra(b, classes, rng, extra_arc_prob):
            inst = SynthInstance(b.graph(), Coloring.of(color), tuple(constraint), seed)
            return inst
    raise BudgetExhausted(
        f"could not realise k={k}, sizes={sizes}, constraint={constraint} in {retry_budget} attempts")


def _pick(b: _Builder, v: int, pool: list[int], rng: random.Random, tail: bool,
          prefer=None) -> bool:
    cand = pool[:]
    rng.shuffle(cand)
    if prefer is not None:
        cand.sort(key=lambda x: not prefer(x))
    for x in cand:
        if tail and b.allowed(v, x):
            b.add(v, x)
            return True
        if not tail and b.allowed(x, v):
            b.add(x, v)
            return True
    return False


def _synth_attempt(b: _Builder, classes, rng, two_sided) -> bool:
    k = len(classes)
    color_of = {v: c for c, members in enumerate(classes, start=1) for v in members}
    for c in range(2, k + 1):
        for v in classes[c - 1]:
            lower = list(range(1, c))
            rng.shuffle(lower)
            for i in lower:
                if any(color_of[x] == i for x in b.out[v]):
                    continue
                prefer = None
                if two_sided:
                    # spreading arcs from class c over class i leaves less to patch later
                    prefer = (lambda x, c=c: all(color_of[y] != c for y in b.inn[x]))
                if not _pick(b, v, classes[i - 1], rng, tail=True, prefer=prefer):
                    return False
    if two_sided:
        for c in range(1, k):
            for v in classes[c - 1]:
                higher = list(range(c + 1, k + 1))
                rng.shuffle(higher)
                for i in higher:
                    if any(color_of[x] == i for x in b.inn[v]):
                        continue
                    if not _pick(b, v, classes[i - 1], rng, tail=False):
                        return False
    return True


def _synth_extra(b: _Builder, classes, rng, p) -> bool:
    if p <= 0:
        return True
    k = len(classes)
    for c in range(2, k + 1):
        lower = [x for i in range(c - 1) for x in classes[i]]
        for v in classes[c - 1]:
            for x in lower:
                if rng.random() < p and b.allowed(v, x):
                    b.add(v, x)
    return True


def planted_br_instance(T: RootedOrientedTree, r: int, seed: int, noise: float = 0.3):
    """Digraph built bottom-up along the peel plan of T so that the peeling
    recursion keeps exactly one core and every core vertex has more than the
    threshold number of private leaf-side neighbours at every level.

    Noise arcs are added among the private vertices of one level as long as they
    stay below that level's threshold and the digraph stays B_r-free.
    """
    plan = st_plan(T)
    rng = random.Random(seed)
    sizes = []
    alive = T.n
    for side, leaves in plan.peel:
        sizes.append((side, (r - 1) * (alive - 2) + len(leaves)))
        alive -= len(leaves)
    # vertices of the deepest core first
    core = [0]
    n = 1
    arcs: list[tuple[int, int]] = []
    levels = []
    for side, theta in reversed(sizes):
        fresh_all = []
        for x in core:
            fresh = list(range(n, n + theta + 1))
            n += theta + 1
            for y in fresh:
                arcs.append((x, y) if side == "out" else (y, x))
            fresh_all.extend(fresh)
        levels.append((side, theta, fresh_all))
        core = core + fresh_all
    b = _Builder(n, ("br_free", r))
    for u, v in arcs:
        b.add(u, v)
    for side, theta, fresh in levels:
        if noise <= 0 or len(fresh) < 2:
            continue
        tries = int(noise * len(fresh))
        for _ in range(tries):
            u, v = rng.sample(fresh, 2)
            # both endpoints must stay removable at this level
            if len(b.out[u]) + 1 > theta or len(b.inn[v]) + 1 > theta:
                continue
            if b.allowed(u, v):
                b.add(u, v)
    perm = list(range(n))
    rng.shuffle(perm)
    return b.graph().relabel(perm)


def rainbow_ary_host(r: int, s: int, extra_edges: int = 0, seed: int = 0):
    """Complete (rs)-ary tree with s levels as a graph, plus up to `extra_edges`
    random chords that keep it K_{2,r}-free; coloring is rainbow (vertex i gets i+1).

    Returns (graph, ary_tree, coloring).
    """
    A = complete_ary_tree(r * s, s)
    rng = random.Random(seed)
    adj = [set() for _ in range(A.n)]
    for a, c in A.arcs:
        adj[a].add(c)
        adj[c].add(a)
    added = 0
    attempts = 0
    while added < extra_edges and attempts < 50 * max(1, extra_edges):
        attempts += 1
        u, v = rng.sample(range(A.n), 2)
        if v in adj[u]:
            continue
        adj[u].add(v)
        adj[v].add(u)
        if _k2r_through(adj, u, v, r):
            adj[u].discard(v)
            adj[v].discard(u)
            continue
        added += 1
    g = UndirectedGraph(A.n, tuple(map(frozenset, adj)))
    return g, A, Coloring.of([i + 1 for i in range(A.n)])


def _k2r_through(adj, u, v, r) -> bool:
    for a, b in ((u, v), (v, u)):
        for w in adj[b]:
            if w != a and len((adj[a] & adj[w]) - {a, w}) >= r:
                return True
    return False


# tree catalogs


def _pruefer_trees(n: int):
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(0, 1)]
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(i for i in range(n) if degree[i] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = [i for i in range(n) if degree[i] == 1]
        edges.append((u, v))
        yield edges


def undirected_trees(s: int) -> list[RootedOrientedTree]:
    """Free trees on s vertices up to isomorphism, as out-trees rooted at a center."""
    if not 1 <= s <= TREE_CATALOG_GUARD:
        raise ValueError(f"tree catalog guarded to 1 <= s <= {TREE_CATALOG_GUARD}")
    seen = {}
    for edges in _pruefer_trees(s):
        undirected = RootedOrientedTree.from_arcs(s, edges)
        key = min(_plain_code(undirected, v) for v in range(s))
        if key not in seen:
            center = _center(undirected)
            seen[key] = undirected.rerooted(center).as_out_tree()
    return [seen[k] for k in sorted(seen)]


def _plain_code(t: RootedOrientedTree, root: int) -> str:
    def code(v, par):
        return "(" + "".join(sorted(code(w, v) for w in t.neighbors(v) if w != par)) + ")"
    return code(root, -1)


def _center(t: RootedOrientedTree) -> int:
    degree = {v: len(t.neighbors(v)) for v in range(t.n)}
    alive = set(range(t.n))
    layer = [v for v in alive if degree[v] <= 1]
    while len(alive) > 2:
        nxt = []
        for v in layer:
            alive.discard(v)
            for w in t.neighbors(v):
                if w in alive:
                    degree[w] -= 1
                    if degree[w] == 1:
                        nxt.append(w)
        layer = nxt
    return min(alive)


@dataclass(frozen=True)
class TreeCatalog:
    trees: tuple[RootedOrientedTree, ...]

    @property
    def out_trees(self) -> list[RootedOrientedTree]:
        """Trees that are out-trees from some root, rooted there."""
        return [r for r in (_rooted_as(t, "out") for t in self.trees) if r is not None]

    @property
    def in_trees(self) -> list[RootedOrientedTree]:
        """Trees that are in-trees toward some root, rooted there."""
        return [r for r in (_rooted_as(t, "in") for t in self.trees) if r is not None]

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)


def oriented_trees(s: int) -> TreeCatalog:
    """Every oriented tree on s vertices up to isomorphism.

    Each representative is rooted at its source when it is an out-tree, at its
    sink when it is an in-tree, and otherwise at the root of its canonical code.
    """
    found = {}
    for base in undirected_trees(s):
        edges = [(p, v) for v, p in enumerate(base.parent) if p is not None]
        for flips in itertools.product((False, True), repeat=len(edges)):
            arcs = [(b, a) if f else (a, b) for (a, b), f in zip(edges, flips)]
            t = RootedOrientedTree.from_arcs(s, arcs)
            key = t.canonical()
            if key not in found:
                found[key] = _canonical_root(t, key)
    return TreeCatalog(tuple(found[k] for k in sorted(found)))


def _rooted_as(t: RootedOrientedTree, kind: str) -> Optional[RootedOrientedTree]:
    for v in range(t.n):
        r = t.rerooted(v)
        if (r.is_out_tree() if kind == "out" else r.is_in_tree()):
            return r
    return None


def _canonical_root(t: RootedOrientedTree, key: str) -> RootedOrientedTree:
    sources = [v for v in range(t.n) if t.in_degree(v) == 0]
    sinks = [v for v in range(t.n) if t.out_degree(v) == 0]
    if len(sources) == 1 and t.rerooted(sources[0]).is_out_tree():
        return t.rerooted(sources[0])
    if len(sinks) == 1 and t.rerooted(sinks[0]).is_in_tree():
        return t.rerooted(sinks[0])
    root = min(v for v in range(t.n) if t.rooted_code(v) == key)
    return t.rerooted(root)
