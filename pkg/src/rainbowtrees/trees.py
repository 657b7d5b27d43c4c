"""Rooted oriented trees used as embedding patterns."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class RootedOrientedTree:
    """An oriented tree on vertices 0..n-1 with a chosen root.

    `parent[v]` is the parent in the rooted underlying tree (None for the root);
    `up[v]` is True when the tree arc between v and its parent points v -> parent.
    """

    n: int
    arcs: tuple[tuple[int, int], ...]
    root: int = 0
    parent: tuple = field(init=False, compare=False)
    up: tuple = field(init=False, compare=False, repr=False)
    children: tuple = field(init=False, compare=False, repr=False)
    topo_order: tuple = field(init=False, compare=False, repr=False)
    dfs_order: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise ValueError("a tree needs at least one vertex")
        if not 0 <= self.root < n:
            raise ValueError(f"root {self.root} absent")
        if len(self.arcs) != n - 1:
            raise ValueError("not a tree: wrong number of arcs")
        adj: list[list[tuple[int, bool]]] = [[] for _ in range(n)]
        seen_edges = set()
        for a, b in self.arcs:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise ValueError(f"bad tree arc {a}->{b}")
            e = frozenset((a, b))
            if e in seen_edges:
                raise ValueError("not a tree: repeated edge")
            seen_edges.add(e)
            adj[a].append((b, False))  # b is reached from a along a->b
            adj[b].append((a, True))
        parent: list[Optional[int]] = [None] * n
        up = [False] * n
        seen = [False] * n
        seen[self.root] = True
        order = [self.root]
        queue = deque([self.root])
        while queue:
            v = queue.popleft()
            for w, reversed_arc in sorted(adj[v]):
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    # arc w->v when the stored arc runs from w to v
                    up[w] = reversed_arc
                    order.append(w)
                    queue.append(w)
        if not all(seen):
            raise ValueError("not a tree: arcs do not connect every vertex")
        children = [[] for _ in range(n)]
        for v in order[1:]:
            children[parent[v]].append(v)
        dfs = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            dfs.append(v)
            stack.extend(reversed(children[v]))
        object.__setattr__(self, "parent", tuple(parent))
        object.__setattr__(self, "up", tuple(up))
        object.__setattr__(self, "children", tuple(tuple(c) for c in children))
        object.__setattr__(self, "topo_order", tuple(order))
        object.__setattr__(self, "dfs_order", tuple(dfs))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]], root: int = 0) -> "RootedOrientedTree":
        return cls(n, tuple(sorted((int(a), int(b)) for a, b in arcs)), root)

    @classmethod
    def single(cls) -> "RootedOrientedTree":
        return cls(1, (), 0)

    @classmethod
    def directed_path(cls, s: int) -> "RootedOrientedTree":
        """0 -> 1 -> ... -> s-1, rooted at 0."""
        return cls.from_arcs(s, [(i, i + 1) for i in range(s - 1)])

    @classmethod
    def out_star(cls, s: int) -> "RootedOrientedTree":
        return cls.from_arcs(s, [(0, i) for i in range(1, s)])

    @classmethod
    def in_star(cls, s: int) -> "RootedOrientedTree":
        return cls.from_arcs(s, [(i, 0) for i in range(1, s)])

    @classmethod
    def from_parents(cls, parents: Sequence[Optional[int]], root: int = 0) -> "RootedOrientedTree":
        """Out-tree from a parent array."""
        return cls.from_arcs(len(parents), [(p, v) for v, p in enumerate(parents) if p is not None], root)

    def out_degree(self, v: int) -> int:
        return sum(1 for a, _ in self.arcs if a == v)

    def in_degree(self, v: int) -> int:
        return sum(1 for _, b in self.arcs if b == v)

    def neighbors(self, v: int) -> list[int]:
        nb = list(self.children[v])
        if self.parent[v] is not None:
            nb.append(self.parent[v])
        return sorted(nb)

    @property
    def kind(self) -> str:
        if self.is_out_tree():
            return "out-tree"
        if self.is_in_tree():
            return "in-tree"
        return "general"

    def is_out_tree(self) -> bool:
        return all(not self.up[v] for v in range(self.n) if v != self.root)

    def is_in_tree(self) -> bool:
        return all(self.up[v] for v in range(self.n) if v != self.root)

    def out_leaves(self) -> list[int]:
        """Vertices with in-degree 1 and out-degree 0."""
        if self.n == 1:
            return []
        return [v for v in range(self.n) if self.in_degree(v) == 1 and self.out_degree(v) == 0]

    def in_leaves(self) -> list[int]:
        if self.n == 1:
            return []
        return [v for v in range(self.n) if self.out_degree(v) == 1 and self.in_degree(v) == 0]

    def reverse(self) -> "RootedOrientedTree":
        return RootedOrientedTree.from_arcs(self.n, [(b, a) for a, b in self.arcs], self.root)

    def rerooted(self, root: int) -> "RootedOrientedTree":
        return RootedOrientedTree(self.n, self.arcs, root)

    def as_out_tree(self) -> "RootedOrientedTree":
        """Same underlying tree and root, every edge directed away from the root."""
        return RootedOrientedTree.from_arcs(
            self.n, [(p, v) for v, p in enumerate(self.parent) if p is not None], self.root)

    def remove(self, vertices: Iterable[int]) -> tuple["RootedOrientedTree", list[int]]:
        """Delete `vertices`; returns the remaining tree and its new -> old index map."""
        drop = set(vertices)
        keep = [v for v in range(self.n) if v not in drop]
        pos = {v: i for i, v in enumerate(keep)}
        arcs = [(pos[a], pos[b]) for a, b in self.arcs if a in pos and b in pos]
        root = pos[self.root] if self.root in pos else 0
        return RootedOrientedTree.from_arcs(len(keep), arcs, root), keep

    def rooted_code(self, root: Optional[int] = None) -> str:
        """AHU-style canonical string of the tree rooted at `root`, arc directions included."""
        root = self.root if root is None else root
        adj: list[list[tuple[int, str]]] = [[] for _ in range(self.n)]
        for a, b in self.arcs:
            adj[a].append((b, ">"))
            adj[b].append((a, "<"))

        def code(v, par):
            parts = sorted(tag + code(w, v) for w, tag in adj[v] if w != par)
            return "(" + "".join(parts) + ")"

        return code(root, -1)

    def canonical(self) -> str:
        """Isomorphism invariant of the unrooted oriented tree."""
        return min(self.rooted_code(v) for v in range(self.n))

    def to_text(self) -> str:
        lines = [f"tree {self.n} root {self.root}"]
        lines += [f"{a} {b}" for a, b in self.arcs]
        return "\n".join(lines) + "\n"


def complete_ary_tree(arity: int, levels: int) -> RootedOrientedTree:
    """Complete `arity`-ary out-tree with `levels` levels, vertices in BFS order."""
    parents: list[Optional[int]] = [None]
    frontier = [0]
    for _ in range(levels - 1):
        nxt = []
        for v in frontier:
            for _ in range(arity):
                parents.append(v)
                nxt.append(len(parents) - 1)
        frontier = nxt
    return RootedOrientedTree.from_parents(parents)
