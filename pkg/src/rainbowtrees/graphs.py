"""Graph and digraph representations, structural predicates and colorings.

Vertices are dense 0-based indices. Both graph types are immutable; every
function here is pure.
"""

from __future__ import annotations

import heapq
import os
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

DEFAULT_CHI_GUARD = int(os.environ.get("RAINBOWTREES_GUARD_N", "40"))


class CycleError(ValueError):
    """Raised when an acyclic digraph was required."""


class GuardError(ValueError):
    """Raised when an exhaustive routine is asked to run above its size guard."""


class _Acyclic:
    """Girth of a forest. Compares above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ACYCLIC"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("ACYCLIC")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True


ACYCLIC = _Acyclic()


@dataclass(frozen=True)
class UndirectedGraph:
    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        for v, nb in enumerate(self.adj):
            if v in nb:
                raise ValueError(f"self-loop at {v}")
            for u in nb:
                if not 0 <= u < self.n or v not in self.adj[u]:
                    raise ValueError(f"asymmetric or out-of-range adjacency {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "UndirectedGraph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for {n} vertices")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(a) for a in adj))

    @classmethod
    def empty(cls, n: int) -> "UndirectedGraph":
        return cls(n, tuple(frozenset() for _ in range(n)))

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def underlying(self) -> "UndirectedGraph":
        return self

    def induce(self, vertices: Iterable[int]) -> tuple["UndirectedGraph", list[int]]:
        """Induced subgraph on `vertices`; returns it with new-index -> old-index map."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u in keep for v in self.adj[u] if v in pos and u < v]
        return UndirectedGraph.from_edges(len(keep), edges), keep

    def relabel(self, perm: Sequence[int]) -> "UndirectedGraph":
        """Vertex v becomes perm[v]."""
        return UndirectedGraph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])


@dataclass(frozen=True)
class OrientedGraph:
    n: int
    out: tuple[frozenset[int], ...]
    inn: tuple[frozenset[int], ...]
    nbr: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.out) != self.n or len(self.inn) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        for v in range(self.n):
            if v in self.out[v]:
                raise ValueError(f"self-loop at {v}")
            if self.out[v] & self.inn[v]:
                raise ValueError(f"2-cycle through {v}")
            for u in self.out[v]:
                if v not in self.inn[u]:
                    raise ValueError("in/out adjacency inconsistent")
            for u in self.inn[v]:
                if v not in self.out[u]:
                    raise ValueError("in/out adjacency inconsistent")
        object.__setattr__(self, "nbr", tuple(o | i for o, i in zip(self.out, self.inn)))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "OrientedGraph":
        out: list[set[int]] = [set() for _ in range(n)]
        inn: list[set[int]] = [set() for _ in range(n)]
        for u, v in arcs:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc {u}->{v} out of range for {n} vertices")
            if u in out[v]:
                raise ValueError(f"2-cycle between {u} and {v}")
            out[u].add(v)
            inn[v].add(u)
        return cls(n, tuple(map(frozenset, out)), tuple(map(frozenset, inn)))

    def neighbors(self, v: int) -> frozenset[int]:
        return self.nbr[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbr[u]

    def has_arc(self, u: int, v: int) -> bool:
        return v in self.out[u]

    def out_degree(self, v: int) -> int:
        return len(self.out[v])

    def in_degree(self, v: int) -> int:
        return len(self.inn[v])

    def arcs(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self.n) for v in self.out[u])

    @property
    def arc_count(self) -> int:
        return sum(len(o) for o in self.out)

    def underlying(self) -> UndirectedGraph:
        return UndirectedGraph(self.n, self.nbr)

    def reverse(self) -> "OrientedGraph":
        return OrientedGraph(self.n, self.inn, self.out)

    def induce(self, vertices: Iterable[int]) -> tuple["OrientedGraph", list[int]]:
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        arcs = [(pos[u], pos[v]) for u in keep for v in self.out[u] if v in pos]
        return OrientedGraph.from_arcs(len(keep), arcs), keep

    def remove(self, vertices: Iterable[int]) -> tuple["OrientedGraph", list[int]]:
        drop = set(vertices)
        return self.induce(v for v in range(self.n) if v not in drop)

    def relabel(self, perm: Sequence[int]) -> "OrientedGraph":
        return OrientedGraph.from_arcs(self.n, [(perm[u], perm[v]) for u, v in self.arcs()])

    def topological_order(self) -> list[int]:
        """Least-index-first Kahn order; raises CycleError on a directed cycle."""
        indeg = [len(i) for i in self.inn]
        heap = [v for v in range(self.n) if indeg[v] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            v = heapq.heappop(heap)
            order.append(v)
            for w in self.out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, w)
        if len(order) != self.n:
            raise CycleError("digraph contains a directed cycle")
        return order

    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
        except CycleError:
            return False
        return True


AnyGraph = Union[UndirectedGraph, OrientedGraph]


def topological_order(d: OrientedGraph) -> list[int]:
    return d.topological_order()


@dataclass(frozen=True)
class Coloring:
    """Total vertex coloring plus a total order on the used colors.

    `order` lists the used colors from smallest to largest.
    """

    colors: tuple[int, ...]
    order: tuple[int, ...]
    rank: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        used = set(self.colors)
        if any(c < 1 for c in used):
            raise ValueError("colors must be positive integers")
        if len(self.order) != len(used) or set(self.order) != used:
            raise ValueError("order must list every used color exactly once")
        object.__setattr__(self, "rank", {c: i + 1 for i, c in enumerate(self.order)})

    @classmethod
    def of(cls, colors: Sequence[int], order: Optional[Sequence[int]] = None) -> "Coloring":
        colors = tuple(int(c) for c in colors)
        if order is None:
            order = sorted(set(colors))
        return cls(colors, tuple(order))

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    @property
    def num_colors(self) -> int:
        return len(self.order)

    def less(self, a: int, b: int) -> bool:
        return self.rank[a] < self.rank[b]

    def ranks(self) -> tuple[int, ...]:
        """Per-vertex rank 1..k of its color under the order."""
        return tuple(self.rank[c] for c in self.colors)

    def with_order(self, order: Sequence[int]) -> "Coloring":
        return Coloring(self.colors, tuple(order))

    def reversed_order(self) -> "Coloring":
        return Coloring(self.colors, tuple(reversed(self.order)))

    def class_of(self, color: int) -> list[int]:
        return [v for v, c in enumerate(self.colors) if c == color]


def _require_total(g: AnyGraph, c: Coloring) -> None:
    if len(c.colors) != g.n:
        raise ValueError(f"coloring covers {len(c.colors)} of {g.n} vertices")


def monochromatic_edge(g: AnyGraph, c: Coloring) -> Optional[tuple[int, int]]:
    _require_total(g, c)
    for u in range(g.n):
        for v in g.neighbors(u):
            if u < v and c.colors[u] == c.colors[v]:
                return u, v
    return None


def is_proper(g: AnyGraph, c: Coloring) -> bool:
    return monochromatic_edge(g, c) is None


def require_proper(g: AnyGraph, c: Coloring) -> None:
    bad = monochromatic_edge(g, c)
    if bad is not None:
        raise ValueError(f"coloring is not proper: edge {bad[0]}-{bad[1]} is monochromatic")


def girth(g: AnyGraph):
    """Length of a shortest cycle of the underlying graph, or ACYCLIC."""
    best = None
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] >= best:
                break
            for w in g.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return ACYCLIC if best is None else best


def has_girth_at_least(g: AnyGraph, bound: int) -> bool:
    return girth(g) >= bound


def is_triangle_free(g: AnyGraph) -> bool:
    for u in range(g.n):
        nb = g.neighbors(u)
        for v in nb:
            if v > u and not nb.isdisjoint(g.neighbors(v)):
                return False
    return True


@dataclass(frozen=True)
class Witness:
    pattern: str
    pair: tuple[int, int]
    common: tuple[int, ...]


def forbidden_witness(g: AnyGraph, pattern: str, r: int) -> Optional[Witness]:
    """First copy of K_{2,r} ('k2r') or of a B_r ('br') under vertex index order.

    K_{2,r}: unordered pair {a, b} with r common neighbours.
    B_r: ordered pair (a, b) with r vertices in N+(a) & N(b).
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    pattern = pattern.lower()
    if pattern == "k2r":
        nb = g.neighbors
        for a in range(g.n):
            for b in range(a + 1, g.n):
                common = (nb(a) & nb(b)) - {a, b}
                if len(common) >= r:
                    return Witness("k2r", (a, b), tuple(sorted(common)[:r]))
        return None
    if pattern == "br":
        if not isinstance(g, OrientedGraph):
            raise TypeError("B_r pattern requires an oriented graph")
        for a in range(g.n):
            if len(g.out[a]) < r:
                continue
            for b in range(g.n):
                if b == a:
                    continue
                common = (g.out[a] & g.nbr[b]) - {a, b}
                if len(common) >= r:
                    return Witness("br", (a, b), tuple(sorted(common)[:r]))
        return None
    raise ValueError(f"unknown pattern {pattern!r}")


# chromatic number


def greedy_coloring(g: AnyGraph, order: Optional[Sequence[int]] = None) -> Coloring:
    """First-fit coloring in the given vertex order (default: index order)."""
    order = range(g.n) if order is None else order
    colors = [0] * g.n
    for v in order:
        taken = {colors[u] for u in g.neighbors(v)}
        c = 1
        while c in taken:
            c += 1
        colors[v] = c
    if g.n and 0 in colors:
        raise ValueError("vertex order does not cover every vertex")
    return Coloring.of(colors)


def _greedy_clique(g: AnyGraph) -> list[int]:
    best: list[int] = []
    for start in range(g.n):
        clique = [start]
        cand = set(g.neighbors(start))
        while cand:
            v = max(cand, key=lambda x: (len(g.neighbors(x) & cand), -x))
            clique.append(v)
            cand &= g.neighbors(v)
        if len(clique) > len(best):
            best = clique
    return best


def _color_with(g: AnyGraph, k: int, rng: Optional[random.Random], precolored: Sequence[int] = ()):
    """DSATUR backtracking for a proper coloring with colors 1..k, or None."""
    n = g.n
    colors = [0] * n
    # per-vertex count of neighbours holding each color
    counts = [[0] * (k + 1) for _ in range(n)]
    sat = [0] * n
    nbrs = [tuple(g.neighbors(v)) for v in range(n)]
    tiebreak = list(range(n))
    if rng is not None:
        rng.shuffle(tiebreak)

    def assign(v, c):
        colors[v] = c
        for u in nbrs[v]:
            if counts[u][c] == 0:
                sat[u] += 1
            counts[u][c] += 1

    def unassign(v, c):
        colors[v] = 0
        for u in nbrs[v]:
            counts[u][c] -= 1
            if counts[u][c] == 0:
                sat[u] -= 1

    for i, v in enumerate(precolored):
        assign(v, i + 1)

    def pick():
        best, key = -1, None
        for v in range(n):
            if colors[v] == 0:
                kv = (sat[v], len(nbrs[v]), -tiebreak[v])
                if key is None or kv > key:
                    best, key = v, kv
        return best

    def solve(used: int) -> bool:
        v = pick()
        if v < 0:
            return True
        cand = [c for c in range(1, min(used + 1, k) + 1) if counts[v][c] == 0]
        if rng is not None:
            rng.shuffle(cand)
        for c in cand:
            assign(v, c)
            if solve(max(used, c)):
                return True
            unassign(v, c)
        return False

    if solve(len(precolored)):
        return colors
    return None


def k_coloring(g: AnyGraph, k: int, rng: Optional[random.Random] = None) -> Optional[Coloring]:
    """A proper coloring with at most k colors, or None. `rng` randomises branching."""
    if g.n == 0:
        return Coloring.of([])
    if k < 1:
        return None
    clique = [] if rng is not None else _greedy_clique(g)
    if len(clique) > k:
        return None
    colors = _color_with(g, k, rng, clique)
    return None if colors is None else Coloring.of(colors)


def chromatic_number(g: AnyGraph, mode: str = "exact", order: Optional[Sequence[int]] = None,
                     guard: Optional[int] = None) -> tuple[int, Coloring]:
    """Chromatic number with a witness coloring.

    mode='exact' runs branch and bound between a greedy clique lower bound and a
    DSATUR upper bound; mode='greedy' returns first-fit in `order`.
    """
    g = g.underlying()
    if mode == "greedy":
        c = greedy_coloring(g, order)
        return c.num_colors, c
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    guard = DEFAULT_CHI_GUARD if guard is None else guard
    if g.n > guard:
        raise GuardError(f"exact chromatic number guarded to {guard} vertices, got {g.n}")
    if g.n == 0:
        return 0, Coloring.of([])
    lower = max(1, len(_greedy_clique(g)))
    upper = dsatur_coloring(g)
    best = upper
    k = upper.num_colors - 1
    while k >= lower:
        c = k_coloring(g, k)
        if c is None:
            break
        best = c
        k = c.num_colors - 1
    return best.num_colors, best


def dsatur_coloring(g: AnyGraph) -> Coloring:
    colors = [0] * g.n
    sat: list[set[int]] = [set() for _ in range(g.n)]
    for _ in range(g.n):
        v = max((u for u in range(g.n) if colors[u] == 0),
                key=lambda u: (len(sat[u]), g.degree(u) if isinstance(g, UndirectedGraph) else len(g.nbr[u]), -u))
        c = 1
        while c in sat[v]:
            c += 1
        colors[v] = c
        for u in g.neighbors(v):
            sat[u].add(c)
    return Coloring.of(colors)


# embeddings


@dataclass(frozen=True)
class Verdict:
    induced: bool
    direction_exact: Optional[bool]
    rainbow: Optional[bool]
    decreasing: Optional[bool]

    def ok(self, need_rainbow: bool = True) -> bool:
        if not self.induced or self.direction_exact is False:
            return False
        return not (need_rainbow and self.rainbow is False)


def verify_embedding(host: AnyGraph, tree, image: Sequence[int],
                     coloring: Optional[Coloring] = None) -> Verdict:
    """Check an image of `tree` (a RootedOrientedTree) inside `host`.

    induced: host adjacencies among the image are exactly the tree edges.
    direction_exact: every tree arc maps onto a host arc (None for undirected hosts).
    rainbow / decreasing: only when a coloring is given; decreasing means colors
    strictly fall along every root-to-leaf path under the coloring's order.
    """
    if len(image) != tree.n:
        raise ValueError("image must cover every tree vertex")
    if len(set(image)) != len(image):
        raise ValueError("image is not injective")
    for x in image:
        if not 0 <= x < host.n:
            raise ValueError(f"image vertex {x} out of range")
    tree_edges = {frozenset(a) for a in tree.arcs}
    induced = True
    for i in range(tree.n):
        for j in range(i + 1, tree.n):
            if host.has_edge(image[i], image[j]) != (frozenset((i, j)) in tree_edges):
                induced = False
                break
        if not induced:
            break
    direction = None
    if isinstance(host, OrientedGraph):
        direction = all(host.has_arc(image[a], image[b]) for a, b in tree.arcs)
    rainbow = decreasing = None
    if coloring is not None:
        _require_total(host, coloring)
        cols = [coloring.colors[x] for x in image]
        rainbow = len(set(cols)) == len(cols)
        decreasing = all(
            coloring.less(cols[v], cols[p])
            for v, p in enumerate(tree.parent) if p is not None
        )
    return Verdict(induced, direction, rainbow, decreasing)


@dataclass(frozen=True)
class Embedding:
    """Injective map tree-vertex -> host-vertex together with its verdict."""

    tree: object
    host: AnyGraph
    image: tuple[int, ...]
    coloring: Optional[Coloring] = None
    verdict: Verdict = None
    trace: object = field(default=None, compare=False)

    def __post_init__(self):
        fresh = verify_embedding(self.host, self.tree, self.image, self.coloring)
        if self.verdict is None:
            object.__setattr__(self, "verdict", fresh)
        elif self.verdict != fresh:
            raise ValueError("stored verdict does not match recomputation")

    def revalidate(self) -> bool:
        return verify_embedding(self.host, self.tree, self.image, self.coloring) == self.verdict

    def as_dict(self) -> dict:
        v = self.verdict
        return {
            "image": list(self.image),
            "induced": v.induced,
            "direction_exact": v.direction_exact,
            "rainbow": v.rainbow,
            "decreasing": v.decreasing,
        }
