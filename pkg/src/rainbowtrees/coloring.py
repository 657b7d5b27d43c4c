"""Coloring constructions: greedy refinement, natural orientation, level
coloring, kernels and parity colorings, each with a definitional checker."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graphs import (
    Coloring,
    CycleError,
    GuardError,
    OrientedGraph,
    UndirectedGraph,
    require_proper,
)

KERNEL_GUARD = 30


@dataclass(frozen=True)
class RefinementResult:
    alpha: Coloring
    colors_before: int
    colors_after: int


@dataclass(frozen=True)
class PeelLayers:
    layers: tuple[tuple[int, ...], ...]
    kind: str  # "out-degree-peel" or "kernel-alternation"

    def coloring(self, n: int) -> Coloring:
        colors = [0] * n
        for i, layer in enumerate(self.layers, start=1):
            for v in layer:
                colors[v] = i
        return Coloring.of(colors)


@dataclass(frozen=True)
class Check:
    """Outcome of a definitional check; falsy when a violation was found."""

    ok: bool
    vertex: Optional[int] = None
    missing: Optional[int] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def greedy_refinement(g: UndirectedGraph, beta: Coloring) -> RefinementResult:
    """Recolor by first-fit, visiting beta's color classes in beta's order.

    Inside one class vertices are taken in ascending index order.
    """
    g = g.underlying()
    require_proper(g, beta)
    alpha = [0] * g.n
    for color in beta.order:
        for v in range(g.n):
            if beta.colors[v] == color and alpha[v] == 0:
                taken = {alpha[u] for u in g.adj[v]}
                c = 1
                while c in taken:
                    c += 1
                alpha[v] = c
    result = Coloring.of(alpha)
    return RefinementResult(result, beta.num_colors, result.num_colors)


def refinement_witnesses(g: UndirectedGraph, beta: Coloring, alpha: Coloring) -> Check:
    """Every v has neighbours u_1..u_{alpha(v)-1} with alpha(u_i)=i and beta(u_i) < beta(v)."""
    g = g.underlying()
    for v in range(g.n):
        below = {alpha.colors[u] for u in g.adj[v] if beta.less(beta.colors[u], beta.colors[v])}
        for i in range(1, alpha.colors[v]):
            if i not in below:
                return Check(False, v, i)
    return Check(True)


def natural_orientation(g: UndirectedGraph, c: Coloring) -> OrientedGraph:
    """Orient every edge from its higher-colored end to its lower-colored end."""
    g = g.underlying()
    require_proper(g, c)
    rank = c.ranks()
    arcs = [(u, v) if rank[u] > rank[v] else (v, u) for u, v in g.edges()]
    return OrientedGraph.from_arcs(g.n, arcs)


def check_outtree_coloring(d: OrientedGraph, c: Coloring) -> Check:
    """Every v sees, among its out-neighbours, every used color below its own."""
    require_proper(d, c)
    rank = c.ranks()
    for v in range(d.n):
        have = {rank[u] for u in d.out[v]}
        for i in range(1, rank[v]):
            if i not in have:
                return Check(False, v, c.order[i - 1])
    return Check(True)


def level_coloring(d: OrientedGraph) -> Coloring:
    """Repeatedly peel the sinks; a vertex's color is the round it was peeled in."""
    return Coloring.of(_sink_layers(d).coloring(d.n).colors)


def level_layers(d: OrientedGraph) -> PeelLayers:
    return _sink_layers(d)


def _sink_layers(d: OrientedGraph) -> PeelLayers:
    remaining_out = [len(o) for o in d.out]
    alive = d.n
    layer = [v for v in range(d.n) if remaining_out[v] == 0]
    layers = []
    while layer:
        layers.append(tuple(layer))
        alive -= len(layer)
        nxt = []
        for v in layer:
            for u in d.inn[v]:
                remaining_out[u] -= 1
                if remaining_out[u] == 0:
                    nxt.append(u)
        layer = sorted(nxt)
    if alive:
        raise CycleError("digraph contains a directed cycle")
    return PeelLayers(tuple(layers), "out-degree-peel")


def is_kernel(d: OrientedGraph, s, kind: str = "kernel") -> bool:
    s = set(s)
    for v in s:
        if d.nbr[v] & s:
            return False
    reach = d.out if kind == "kernel" else d.inn
    return all(reach[v] & s for v in range(d.n) if v not in s)


def kernel_set(d: OrientedGraph, kind: str = "kernel", method: str = "dag-greedy",
               guard: int = KERNEL_GUARD) -> Optional[frozenset[int]]:
    """Kernel (absorbing via out-arcs) or antikernel (via in-arcs) of d.

    dag-greedy needs an acyclic digraph and always succeeds; backtracking returns
    None when no such set exists.
    """
    if kind not in ("kernel", "antikernel"):
        raise ValueError(f"unknown kind {kind!r}")
    if kind == "antikernel":
        return kernel_set(d.reverse(), "kernel", method, guard)
    if method == "dag-greedy":
        order = d.topological_order()
        s: set[int] = set()
        for v in reversed(order):
            if not (d.out[v] & s):
                s.add(v)
        return frozenset(s)
    if method == "backtracking":
        if d.n > guard:
            raise GuardError(f"kernel backtracking guarded to {guard} vertices, got {d.n}")
        return _kernel_backtrack(d)
    raise ValueError(f"unknown method {method!r}")


def _kernel_backtrack(d: OrientedGraph) -> Optional[frozenset[int]]:
    n = d.n
    state = [None] * n  # True in S, False out of S

    def dominated_possible(v):
        # an excluded vertex still needs an out-neighbour that is or may become in S
        return any(state[u] is not False for u in d.out[v])

    def consistent(v):
        if state[v]:
            return not any(state[u] for u in d.nbr[v])
        if not dominated_possible(v):
            return False
        # excluding v may strand an excluded in-neighbour
        return all(dominated_possible(u) for u in d.inn[v] if state[u] is False)

    def solve(i):
        if i == n:
            return True
        for choice in (True, False):
            if choice and any(state[u] for u in d.nbr[i]):
                continue
            state[i] = choice
            if consistent(i) and solve(i + 1):
                return True
            state[i] = None
        return False

    if solve(0):
        return frozenset(v for v in range(n) if state[v])
    return None


def parity_coloring(d: OrientedGraph, guard: int = KERNEL_GUARD) -> tuple[Coloring, PeelLayers]:
    """Peel an antikernel, then a kernel, alternately; layer index is the color.

    Acyclic inputs use the linear-time DAG method. Cyclic inputs fall back to
    backtracking under `guard`; a residual without the needed set raises.
    """
    acyclic = d.is_acyclic()
    if not acyclic and d.n > guard:
        raise GuardError(f"cyclic input: kernel backtracking guarded to {guard} vertices")
    method = "dag-greedy" if acyclic else "backtracking"
    remaining = list(range(d.n))
    layers = []
    i = 1
    while remaining:
        sub, keep = d.induce(remaining)
        kind = "antikernel" if i % 2 else "kernel"
        s = kernel_set(sub, kind, method, guard)
        if s is None:
            raise ValueError(f"residual digraph at layer {i} has no {kind}")
        layer = tuple(sorted(keep[v] for v in s))
        layers.append(layer)
        drop = set(layer)
        remaining = [v for v in remaining if v not in drop]
        i += 1
    peel = PeelLayers(tuple(layers), "kernel-alternation")
    return peel.coloring(d.n), peel


def check_parity_coloring(d: OrientedGraph, c: Coloring) -> Check:
    """Out-neighbours cover every smaller even color, in-neighbours every smaller odd one."""
    require_proper(d, c)
    col = c.colors
    for u in range(d.n):
        outs = {col[w] for w in d.out[u]}
        ins = {col[w] for w in d.inn[u]}
        for i in range(1, col[u]):
            if i % 2 == 0 and i not in outs:
                return Check(False, u, i, "out")
            if i % 2 == 1 and i not in ins:
                return Check(False, u, i, "in")
    return Check(True)
