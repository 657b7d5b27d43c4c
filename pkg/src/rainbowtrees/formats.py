"""Plain-text formats for graphs, colorings and trees.

    graph 5            digraph 3          tree 3 root 0
    0 1                0 1                0 1
    1 2                1 2                1 2

Colorings are `vertex color` lines, optionally preceded by `order c1 c2 ...`
giving the colors from smallest to largest. `#` starts a comment.
"""

from __future__ import annotations

from typing import Optional, Union

from .graphs import AnyGraph, Coloring, OrientedGraph, UndirectedGraph
from .trees import RootedOrientedTree


class FormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body.split()


def _ints(tokens, no, count=None):
    if count is not None and len(tokens) != count:
        raise FormatError(f"expected {count} integers, got {' '.join(tokens)!r}", no)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"not an integer in {' '.join(tokens)!r}", no) from None


def _header(lines, expected: tuple[str, ...]):
    try:
        no, tokens = next(lines)
    except StopIteration:
        raise FormatError("empty input") from None
    if tokens[0] not in expected:
        raise FormatError(f"header must start with one of {', '.join(expected)}", no)
    return no, tokens


def parse_graph(text: str) -> AnyGraph:
    lines = _lines(text)
    no, tokens = _header(lines, ("graph", "digraph"))
    kind = tokens[0]
    (n,) = _ints(tokens[1:], no, 1)
    if n < 0:
        raise FormatError("vertex count must be non-negative", no)
    seen: dict[frozenset, tuple[int, int]] = {}
    pairs = []
    for no, tokens in lines:
        u, v = _ints(tokens, no, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"vertex out of range 0..{n - 1}", no)
        if u == v:
            raise FormatError(f"self-loop at {u}", no)
        key = frozenset((u, v))
        if key in seen:
            if kind == "digraph" and seen[key] != (u, v):
                raise FormatError(f"2-cycle between {u} and {v}", no)
            raise FormatError(f"duplicate edge {u} {v}", no)
        seen[key] = (u, v)
        pairs.append((u, v))
    if kind == "graph":
        return UndirectedGraph.from_edges(n, pairs)
    return OrientedGraph.from_arcs(n, pairs)


def serialize_graph(g: AnyGraph) -> str:
    if isinstance(g, OrientedGraph):
        lines = [f"digraph {g.n}"] + [f"{u} {v}" for u, v in g.arcs()]
    else:
        lines = [f"graph {g.n}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_coloring(text: str, n: Optional[int] = None) -> Coloring:
    """Read `vertex color` lines; with n given, every vertex 0..n-1 must appear."""
    colors: dict[int, int] = {}
    order = None
    for no, tokens in _lines(text):
        if tokens[0] == "order":
            if order is not None:
                raise FormatError("second order line", no)
            order = _ints(tokens[1:], no)
            continue
        v, c = _ints(tokens, no, 2)
        if v < 0:
            raise FormatError(f"negative vertex {v}", no)
        if c < 1:
            raise FormatError(f"colors must be positive, got {c}", no)
        if v in colors:
            raise FormatError(f"vertex {v} colored twice", no)
        colors[v] = c
    size = n if n is not None else (max(colors) + 1 if colors else 0)
    missing = [v for v in range(size) if v not in colors]
    if missing:
        raise FormatError(f"missing vertex {missing[0]}")
    extra = [v for v in colors if v >= size]
    if extra:
        raise FormatError(f"vertex {extra[0]} outside 0..{size - 1}")
    try:
        return Coloring.of([colors[v] for v in range(size)], order)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_coloring(c: Coloring) -> str:
    lines = []
    if tuple(c.order) != tuple(sorted(c.order)):
        lines.append("order " + " ".join(map(str, c.order)))
    lines += [f"{v} {col}" for v, col in enumerate(c.colors)]
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> RootedOrientedTree:
    lines = _lines(text)
    no, tokens = _header(lines, ("tree",))
    if len(tokens) == 4 and tokens[2] == "root":
        n, root = _ints([tokens[1], tokens[3]], no, 2)
    elif len(tokens) == 2:
        (n,) = _ints(tokens[1:], no, 1)
        root = 0
    else:
        raise FormatError("expected 'tree n' or 'tree n root r'", no)
    if n < 1:
        raise FormatError("a tree needs at least one vertex", no)
    if not 0 <= root < n:
        raise FormatError(f"root {root} absent", no)
    arcs = []
    seen = set()
    for no, tokens in lines:
        a, b = _ints(tokens, no, 2)
        if not (0 <= a < n and 0 <= b < n):
            raise FormatError(f"vertex out of range 0..{n - 1}", no)
        if a == b:
            raise FormatError(f"self-loop at {a}", no)
        if frozenset((a, b)) in seen:
            raise FormatError(f"repeated edge {a} {b}", no)
        seen.add(frozenset((a, b)))
        arcs.append((a, b))
    try:
        return RootedOrientedTree.from_arcs(n, arcs, root)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_tree(T: RootedOrientedTree) -> str:
    return T.to_text()


def read_any(text: str) -> Union[AnyGraph, RootedOrientedTree]:
    for _, tokens in _lines(text):
        return parse_tree(text) if tokens[0] == "tree" else parse_graph(text)
    raise FormatError("empty input")
