"""Constructive searches for induced copies of trees.

Every search returns either an `Embedding` (verified on construction) or a
`SearchFailure` carrying the state it got stuck in. Failures are values, not
exceptions; precondition violations raise.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .coloring import (
    check_outtree_coloring,
    check_parity_coloring,
    greedy_refinement,
    level_coloring,
    natural_orientation,
    parity_coloring,
)
from .graphs import (
    ACYCLIC,
    Coloring,
    Embedding,
    GuardError,
    OrientedGraph,
    UndirectedGraph,
    chromatic_number,
    forbidden_witness,
    girth,
    require_proper,
)
from .trees import RootedOrientedTree

HARNESS_GUARD = 8
DIAGNOSTIC_CHI_GUARD = 25


class HostContractError(ValueError):
    """The host violated a structural hypothesis the construction relies on."""


@dataclass
class SearchTrace:
    """Step log of a good-tree search.

    Positions index the pattern order `order` (w_1..w_s are positions 0..s-1).
    `skipped[j]` lists the (color, representative) pairs rejected before the
    vertex at position j was placed; `stuck` lists those rejected at the step
    that failed.
    """

    mode: str
    order: tuple[int, ...]
    parents: tuple[Optional[int], ...]
    top: int
    placed: list[int] = field(default_factory=list)
    colors: list[int] = field(default_factory=list)
    skipped: list[list[tuple[int, int]]] = field(default_factory=list)
    stuck: list[tuple[int, int]] = field(default_factory=list)
    success: bool = False
    coloring: Optional[Coloring] = None
    note: str = ""

    @property
    def size(self) -> int:
        return len(self.placed)


@dataclass
class SearchFailure:
    trace: object
    reason: str

    def __bool__(self) -> bool:
        return False


SearchResult = Union[Embedding, SearchFailure]


def _pattern_positions(T: RootedOrientedTree, order: Sequence[int]):
    pos = {w: j for j, w in enumerate(order)}
    parents = tuple(None if T.parent[w] is None else pos[T.parent[w]] for w in order)
    return parents


def _grow(trace: SearchTrace, T: RootedOrientedTree, first: int, level, F_nbr, candidates) -> bool:
    """Greedy good-tree extension shared by both searches.

    candidates(j, parent_vertex, below) yields (color, rep) with color < below,
    largest color first. The first rep whose F-neighbourhood misses every placed
    vertex other than the parent is taken.
    """
    trace.placed.append(first)
    trace.colors.append(level[first])
    trace.skipped.append([])
    for j in range(1, len(trace.order)):
        p = trace.parents[j]
        anchor = trace.placed[p]
        others = set(trace.placed)
        others.discard(anchor)
        rejected = []
        chosen = None
        for t, x in candidates(j, anchor, trace.colors[-1]):
            if F_nbr[x].isdisjoint(others):
                chosen = x
                break
            rejected.append((t, x))
        if chosen is None:
            trace.stuck = rejected
            return False
        trace.placed.append(chosen)
        trace.colors.append(level[chosen])
        trace.skipped.append(rejected)
    trace.success = True
    return True


def _image_from_trace(trace: SearchTrace, n: int) -> tuple[int, ...]:
    image = [0] * n
    for w, v in zip(trace.order, trace.placed):
        image[w] = v
    return tuple(image)


def good_tree_search(F: OrientedGraph, G: OrientedGraph, alpha: Coloring,
                     T: RootedOrientedTree) -> SearchResult:
    """Grow a good tree for the out-tree T in G, induced in the supergraph F.

    alpha must be an out-tree coloring of G. The root goes to the least-index
    vertex of top color; each next pattern vertex (in T's topological order) goes
    to the representative out-neighbour of its parent's image for the largest
    color below the last placed color whose representative has no F-neighbour
    among the placed vertices other than that parent.
    """
    if F.n != G.n:
        raise ValueError("F and G must share a vertex set")
    for u in range(G.n):
        if not G.out[u] <= F.out[u]:
            bad = min(G.out[u] - F.out[u])
            raise ValueError(f"arc {u}->{bad} of G is not an arc of F")
    verdict = check_outtree_coloring(G, alpha)
    if not verdict:
        raise ValueError(f"not an out-tree coloring: vertex {verdict.vertex} misses color {verdict.missing}")
    if not T.is_out_tree():
        raise ValueError("pattern must be an out-tree")
    if G.n == 0:
        raise ValueError("empty host")
    rank = alpha.ranks()
    k = alpha.num_colors
    # least-index representative per (vertex, color), frozen up front
    rep: list[dict[int, int]] = []
    for v in range(G.n):
        table: dict[int, int] = {}
        for u in sorted(G.out[v]):
            table.setdefault(rank[u], u)
        rep.append(table)

    def candidates(j, anchor, below):
        table = rep[anchor]
        for t in range(below - 1, 0, -1):
            yield t, table[t]

    order = T.topo_order
    trace = SearchTrace("out-tree", order, _pattern_positions(T, order), k, coloring=alpha)
    first = min(v for v in range(G.n) if rank[v] == k)
    if not _grow(trace, T, first, rank, F.nbr, candidates):
        return SearchFailure(trace, f"stuck after placing {trace.size} of {T.n} vertices")
    return Embedding(T, F, _image_from_trace(trace, T.n), alpha, trace=trace)


def decreasing_tree_search(g: UndirectedGraph, beta: Coloring, T: RootedOrientedTree) -> SearchResult:
    """Induced copy of the rooted tree T whose beta-colors fall from root to leaves.

    Refines beta, orients g naturally under the refinement, keeps the arcs along
    which beta also falls, and runs the good-tree search on that pair.
    """
    g = g.underlying()
    require_proper(g, beta)
    alpha = greedy_refinement(g, beta).alpha
    D = natural_orientation(g, alpha)
    arcs = [(u, v) for u, v in D.arcs() if beta.less(beta.colors[v], beta.colors[u])]
    Dp = OrientedGraph.from_arcs(g.n, arcs)
    found = good_tree_search(D, Dp, alpha, T.as_out_tree())
    if not found:
        return found
    return Embedding(T, g, found.image, beta, trace=found.trace)


@dataclass
class HarnessResult:
    paths: set
    runs: int
    failures: int
    orderings: str

    @property
    def count(self) -> int:
        return len(self.paths)


def canonical_path(seq: Sequence[int]) -> tuple[int, ...]:
    seq = tuple(seq)
    return seq if seq[0] <= seq[-1] else seq[::-1]


def rainbow_paths_harness(g: UndirectedGraph, beta: Coloring, s: int, orderings="all",
                          seed: int = 0, guard: int = HARNESS_GUARD) -> HarnessResult:
    """Run the decreasing-path search under many color orders and collect paths.

    orderings is "all" (every permutation, k <= guard) or an int m for m
    seeded random permutations.
    """
    colors = list(beta.order)
    if orderings == "all":
        if len(colors) > guard:
            raise GuardError(f"all orderings guarded to {guard} colors, got {len(colors)}")
        perms = itertools.permutations(sorted(colors))
        label = "all"
    else:
        rng = random.Random(seed)
        m = int(orderings)
        perms = []
        for _ in range(m):
            p = sorted(colors)
            rng.shuffle(p)
            perms.append(tuple(p))
        label = f"sample({m},{seed})"
    path = RootedOrientedTree.directed_path(s)
    found = set()
    runs = failures = 0
    for perm in perms:
        runs += 1
        res = decreasing_tree_search(g, beta.with_order(perm), path)
        if not res:
            failures += 1
            continue
        v = res.verdict
        if not (v.induced and v.rainbow):
            raise AssertionError("decreasing path failed revalidation")
        found.add(canonical_path(res.image))
    return HarnessResult(found, runs, failures, label)


def dag_tree_embedding(d: OrientedGraph, T: RootedOrientedTree,
                       coloring: Optional[Coloring] = None) -> SearchResult:
    """Induced out-tree or in-tree in an acyclic digraph.

    Out-trees run the good-tree search with F = G = d, using the supplied
    out-tree coloring or else the refinement of d's level coloring. In-trees are
    embedded as out-trees of the reversed digraph; a supplied coloring is then
    used with its order reversed when that is an out-tree coloring of the
    reversal, otherwise the reversal's own refined level coloring is used.
    """
    if not d.is_acyclic():
        raise ValueError("digraph must be acyclic")
    if T.is_out_tree():
        if coloring is not None:
            verdict = check_outtree_coloring(d, coloring)
            if not verdict:
                raise ValueError(
                    f"supplied coloring is not an out-tree coloring: vertex {verdict.vertex} "
                    f"misses color {verdict.missing}")
            alpha = coloring
        else:
            alpha = greedy_refinement(d.underlying(), level_coloring(d)).alpha
        return good_tree_search(d, d, alpha, T)
    if T.is_in_tree():
        rd = d.reverse()
        alpha = None
        if coloring is not None:
            flipped = coloring.reversed_order()
            if check_outtree_coloring(rd, flipped):
                alpha = flipped
        res = dag_tree_embedding(rd, T.reverse(), alpha)
        if not res:
            res.trace.note = "search ran on the reversed digraph"
            return res
        return Embedding(T, d, res.image, res.coloring, trace=res.trace)
    raise ValueError("pattern must be an out-tree or an in-tree")


def parity_tree_search(d: OrientedGraph, gamma: Coloring, T: RootedOrientedTree) -> SearchResult:
    """Good-tree search for an arbitrary oriented tree under a parity coloring.

    The pattern is visited in depth-first order from its root. An even color is
    reachable along an out-arc of the parent's image, an odd one along an
    in-arc; colors of the wrong parity for the pattern arc are skipped.
    """
    verdict = check_parity_coloring(d, gamma)
    if not verdict:
        raise ValueError(f"not a parity coloring: vertex {verdict.vertex} lacks "
                         f"{verdict.detail}-neighbour of color {verdict.missing}")
    if d.n == 0:
        raise ValueError("empty host")
    col = gamma.colors
    k = max(col)
    rep: list[dict[int, int]] = []
    for v in range(d.n):
        table: dict[int, int] = {}
        for u in sorted(d.out[v]):
            if col[u] % 2 == 0:
                table.setdefault(col[u], u)
        for u in sorted(d.inn[v]):
            if col[u] % 2 == 1:
                table.setdefault(col[u], u)
        rep.append(table)
    order = T.dfs_order

    def candidates(j, anchor, below):
        parity = 1 if T.up[order[j]] else 0
        table = rep[anchor]
        for t in range(below - 1, 0, -1):
            if t % 2 == parity:
                yield t, table[t]

    trace = SearchTrace("parity", order, _pattern_positions(T, order), k, coloring=gamma)
    first = min(v for v in range(d.n) if col[v] == k)
    if not _grow(trace, T, first, col, d.nbr, candidates):
        return SearchFailure(trace, f"stuck after placing {trace.size} of {T.n} vertices")
    return Embedding(T, d, _image_from_trace(trace, T.n), gamma, trace=trace)


def bikernel_tree_embedding(d: OrientedGraph, T: RootedOrientedTree) -> SearchResult:
    """Parity-color d and search for T; when the search from T's own root
    gets stuck, the pattern is re-rooted at each other vertex in turn."""
    gamma, _ = parity_coloring(d)
    first = parity_tree_search(d, gamma, T)
    if first:
        return first
    for root in range(T.n):
        if root == T.root:
            continue
        found = parity_tree_search(d, gamma, T.rerooted(root))
        if found:
            return Embedding(T, d, found.image, gamma, trace=found.trace)
    return first


# st-decomposition and the B_r-free recursion


@dataclass(frozen=True)
class StPlan:
    st: int
    peel: tuple[tuple[str, tuple[int, ...]], ...]

    def __post_init__(self):
        if self.st != len(self.peel):
            raise ValueError("st value must equal the number of peel steps")


def _sub_leaves(T: RootedOrientedTree, alive: frozenset) -> tuple[frozenset, frozenset]:
    outd = {v: 0 for v in alive}
    ind = {v: 0 for v in alive}
    for a, b in T.arcs:
        if a in alive and b in alive:
            outd[a] += 1
            ind[b] += 1
    if len(alive) == 1:
        return frozenset(), frozenset()
    out_leaves = frozenset(v for v in alive if ind[v] == 1 and outd[v] == 0)
    in_leaves = frozenset(v for v in alive if outd[v] == 1 and ind[v] == 0)
    return out_leaves, in_leaves


def st_plan(T: RootedOrientedTree) -> StPlan:
    """Alternating leaf-stripping depth with a minimising peel sequence.

    A side with no leaves is not a valid move. Ties go to the out-leaf side.
    """
    memo: dict[frozenset, tuple[int, tuple]] = {}

    def solve(alive: frozenset):
        if alive in memo:
            return memo[alive]
        if len(alive) == 1:
            memo[alive] = (0, ())
            return memo[alive]
        outs, ins = _sub_leaves(T, alive)
        best = None
        for side, leaves in (("out", outs), ("in", ins)):
            if not leaves:
                continue
            val, seq = solve(alive - leaves)
            if best is None or val + 1 < best[0]:
                best = (val + 1, ((side, tuple(sorted(leaves))),) + seq)
        memo[alive] = best
        return best

    val, seq = solve(frozenset(range(T.n)))
    return StPlan(val, seq)


def outtree_bound(r: int, s: int) -> int:
    """Colors that make the out-tree search succeed on B_r-free hosts."""
    return (r - 1) * (s - 1) * s // 2 + s


def girth_bound(s: int, g: int) -> float:
    if g < 5:
        raise ValueError("girth parameter must be at least 5")
    return s ** (1 + 4 / (g - 4))


def br_bound(s: int, st: int, r: int) -> int:
    """Chromatic threshold guaranteeing an induced copy in a B_r-free oriented graph."""
    return (r - 1) * (2 * s - st - 3) * st + 2 * s + 1


@dataclass
class PeelRecord:
    level: int
    side: str
    tree_size: int
    leaves: int
    threshold: int
    removed: int
    chi: Optional[int] = None
    chi_ok: Optional[bool] = None


@dataclass
class BrTrace:
    plan: StPlan
    peels: list[PeelRecord] = field(default_factory=list)
    stuck_level: Optional[int] = None
    partial: dict = field(default_factory=dict)


def br_tree_embedding(d: OrientedGraph, T: RootedOrientedTree, r: int,
                      chi_guard: int = DIAGNOSTIC_CHI_GUARD) -> SearchResult:
    """Embed any oriented tree by peeling low-degree vertices level by level.

    At a level that strips leaf set L from a tree on s' vertices, vertices whose
    out-degree (in-degree for in-leaves) is at most (r-1)(s'-2)+|L| are removed,
    the smaller tree is embedded in what remains, and each leaf is attached
    through the first suitable neighbour of its parent's image.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    plan = st_plan(T)
    trace = BrTrace(plan)
    alive = set(range(d.n))
    tree_alive = set(range(T.n))
    levels = []
    for lvl, (side, leaves) in enumerate(plan.peel):
        theta = (r - 1) * (len(tree_alive) - 2) + len(leaves)
        adj = d.out if side == "out" else d.inn
        removed = {x for x in alive if len(adj[x] & alive) <= theta}
        rec = PeelRecord(lvl, side, len(tree_alive), len(leaves), theta, len(removed))
        if 2 * theta > 2 and 0 < len(removed) <= chi_guard:
            sub, _ = d.induce(removed)
            rec.chi = chromatic_number(sub.underlying())[0]
            rec.chi_ok = rec.chi <= 2 * theta
        trace.peels.append(rec)
        levels.append((side, leaves, frozenset(alive)))
        alive -= removed
        tree_alive -= set(leaves)
    if not alive:
        trace.stuck_level = len(plan.peel)
        return SearchFailure(trace, "no vertex survives the peeling")
    (base,) = tree_alive
    image = {base: min(alive)}
    for lvl in range(len(levels) - 1, -1, -1):
        side, leaves, level_alive = levels[lvl]
        for leaf in leaves:
            (anchor,) = [u for u in T.neighbors(leaf) if u in image]
            u_img = image[anchor]
            used = set(image.values())
            pool = d.out[u_img] if side == "out" else d.inn[u_img]
            chosen = None
            for x in sorted(pool & level_alive):
                if x in used:
                    continue
                if d.nbr[x] & used == {u_img}:
                    chosen = x
                    break
            if chosen is None:
                trace.stuck_level = lvl
                trace.partial = dict(image)
                return SearchFailure(trace, f"no attachment for leaf {leaf} at level {lvl}")
            image[leaf] = chosen
    return Embedding(T, d, tuple(image[w] for w in range(T.n)), trace=trace)


# extraction from a rainbow complete ary tree


def extract_from_rainbow_ary_tree(g: UndirectedGraph, ary: Embedding, H: RootedOrientedTree,
                                  r: int, check_host: bool = True) -> Embedding:
    """Pick an induced rainbow copy of the tree H out of a rainbow copy of the
    complete (rs)-ary tree with s levels sitting in the K_{2,r}-free graph g.

    H is read as an undirected tree. Its vertices are added leaf by leaf; the
    j-th of h vertices lives in the part of the ary tree reachable through child
    indices below r*sigma within sigma levels, sigma = s - (h - j).
    """
    A = ary.tree
    coloring = ary.coloring
    if coloring is None:
        raise ValueError("ary tree copy needs a coloring")
    if ary.host is not g and ary.host != g:
        raise ValueError("ary tree copy lives in a different host")
    for a, b in A.arcs:
        if not g.has_edge(ary.image[a], ary.image[b]):
            raise ValueError(f"ary tree edge {a}-{b} is not an edge of the host")
    if not ary.verdict.rainbow:
        raise ValueError("ary tree copy is not rainbow")
    arity = len(A.children[A.root])
    depth = [0] * A.n
    widest = [-1] * A.n
    for v in A.topo_order[1:]:
        p = A.parent[v]
        depth[v] = depth[p] + 1
        widest[v] = max(widest[p], A.children[p].index(v))
    s = max(depth) + 1
    if arity != r * s or any(len(A.children[v]) not in (0, arity) for v in range(A.n)):
        raise ValueError(f"expected a complete {r}*{s}-ary tree")
    if H.n > s:
        raise ValueError(f"H has {H.n} vertices but the ary tree only supports {s}")
    if check_host and forbidden_witness(g, "k2r", r) is not None:
        raise HostContractError(f"host contains K_2,{r}")
    h = H.n
    order = H.topo_order
    place = {order[0]: A.root}
    for j in range(1, h):
        sigma = s - (h - 1 - j)
        w = order[j]
        anchor = place[H.parent[w]]
        used = set(place.values())
        rest = {ary.image[x] for x in used if x != anchor}
        nbrs = list(A.children[anchor])
        if A.parent[anchor] is not None:
            nbrs.append(A.parent[anchor])
        chosen = None
        for c in nbrs:
            if c in used or depth[c] >= sigma or widest[c] >= r * sigma:
                continue
            if g.adj[ary.image[c]].isdisjoint(rest):
                chosen = c
                break
        if chosen is None:
            raise HostContractError(
                f"no free child for tree vertex {w}: the host must contain K_2,{r}")
        place[w] = chosen
    image = tuple(ary.image[place[w]] for w in range(h))
    return Embedding(H, g, image, coloring)


# stuck-state reconstruction for the girth argument


@dataclass
class StuckReport:
    size: int
    top: int
    x_size: int
    h_edges: int
    h_girth: object
    edge_bound: float
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def stuck_state_diagnostic(trace: SearchTrace, F: OrientedGraph, g: int) -> StuckReport:
    """Rebuild the auxiliary graph of a failed out-tree search and check the
    counting facts that girth >= g forces on it."""
    if trace.success:
        raise ValueError("trace is not a failure")
    i = trace.size
    if i < g:
        raise ValueError(f"stuck size {i} is below the girth parameter {g}")
    placed = trace.placed
    violations = []
    x_size = sum(len(s) for s in trace.skipped[1:i]) + len(trace.stuck)
    if trace.top != i + x_size:
        violations.append(f"color count {trace.top} != placed {i} + skipped {x_size}")
    if i >= 2 and trace.skipped[1]:
        violations.append("second placement skipped colors")
    edges = {frozenset((j, trace.parents[j])) for j in range(1, i)}
    extra = []

    def blocker(x, upto, anchor_pos):
        for q in range(upto):
            if q != anchor_pos and placed[q] in F.nbr[x]:
                return q
        return None

    steps = [(j, trace.skipped[j]) for j in range(1, i)]
    steps.append((i, trace.stuck))
    for j, rejected in steps:
        p = trace.parents[j]
        for _, x in rejected:
            q = blocker(x, j, p)
            if q is None:
                violations.append(f"rejected vertex {x} at step {j} has no blocking neighbour")
                continue
            e = frozenset((p, q))
            if F.has_edge(placed[p], placed[q]):
                violations.append(f"auxiliary edge {placed[p]}-{placed[q]} is an edge of F")
            if e in edges or e in extra:
                violations.append(f"auxiliary edge {placed[p]}-{placed[q]} added twice")
            extra.append(e)
    all_edges = edges | set(extra)
    H = UndirectedGraph.from_edges(i, [tuple(e) for e in all_edges])
    hg = girth(H)
    if hg is not ACYCLIC and hg < math.ceil(g / 2):
        violations.append(f"auxiliary girth {hg} below {math.ceil(g / 2)}")
    bound = (i ** (1 + 4 / (g - 4)) + i) / 2
    if not len(all_edges) < bound:
        violations.append(f"auxiliary edge count {len(all_edges)} not below {bound:.3f}")
    return StuckReport(i, trace.top, x_size, len(all_edges), hg, bound, violations)
