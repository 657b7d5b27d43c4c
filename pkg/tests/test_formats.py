import pytest
from hypothesis import given

from conftest import dags, graphs
from rainbowtrees.formats import (
    FormatError,
    parse_coloring,
    parse_graph,
    parse_tree,
    read_any,
    serialize_coloring,
    serialize_graph,
    serialize_tree,
)
from rainbowtrees.generators import oriented_trees, random_coloring
from rainbowtrees.graphs import Coloring, OrientedGraph, UndirectedGraph
from rainbowtrees.trees import RootedOrientedTree


class TestGraphs:
    def test_digraph(self):
        d = parse_graph("digraph 2\n0 1\n")
        assert isinstance(d, OrientedGraph) and d.arcs() == [(0, 1)]

    def test_graph(self):
        g = parse_graph("graph 3\n0 1\n1 2\n")
        assert isinstance(g, UndirectedGraph) and g.edges() == [(0, 1), (1, 2)]

    def test_comments_and_blank_lines(self):
        g = parse_graph("# header comment\ngraph 2\n\n0 1  # the edge\n")
        assert g.edges() == [(0, 1)]

    @pytest.mark.parametrize("text,line,fragment", [
        ("digraph 2\n0 1\n1 0\n", 3, "2-cycle"),
        ("graph 2\n0 2\n", 2, "out of range"),
        ("graph 2\n1 1\n", 2, "self-loop"),
        ("graph 3\n0 1\n1 0\n", 3, "duplicate"),
        ("graph 3\n0 x\n", 2, "integer"),
        ("graph 3\n0 1 2\n", 2, "expected 2"),
        ("grph 3\n", 1, "header"),
    ])
    def test_errors_carry_line_numbers(self, text, line, fragment):
        with pytest.raises(FormatError, match=fragment) as info:
            parse_graph(text)
        assert info.value.line == line and str(info.value).startswith(f"line {line}:")

    def test_empty(self):
        with pytest.raises(FormatError):
            parse_graph("# nothing\n")

    @given(graphs())
    def test_round_trip(self, g):
        assert parse_graph(serialize_graph(g)) == g

    @given(dags())
    def test_round_trip_digraph(self, d):
        assert parse_graph(serialize_graph(d)) == d


class TestColorings:
    def test_example(self):
        c = parse_coloring("0 3\n1 1\n", 2)
        assert c.colors == (3, 1)

    def test_order_line(self):
        c = parse_coloring("order 2 1\n0 1\n1 2\n")
        assert c.order == (2, 1) and serialize_coloring(c) == "order 2 1\n0 1\n1 2\n"

    def test_default_order_is_numeric(self):
        assert serialize_coloring(Coloring.of([2, 1])) == "0 2\n1 1\n"

    @pytest.mark.parametrize("text,n,fragment", [
        ("0 1\n", 2, "missing vertex 1"),
        ("0 1\n0 2\n", None, "colored twice"),
        ("0 0\n", None, "positive"),
        ("0 1\n1 1\n3 1\n", 2, "outside"),
        ("order 1\n0 1\n1 2\n", None, "order"),
    ])
    def test_errors(self, text, n, fragment):
        with pytest.raises(FormatError, match=fragment):
            parse_coloring(text, n)

    @given(graphs(min_n=1))
    def test_round_trip(self, g):
        c = random_coloring(g, g.n, 1)
        c = c.with_order(list(reversed(c.order)))
        assert parse_coloring(serialize_coloring(c), g.n) == c


class TestTrees:
    def test_example(self):
        T = parse_tree("tree 3 root 0\n0 1\n1 2\n")
        assert T.root == 0 and T.is_out_tree() and T.arcs == ((0, 1), (1, 2))

    def test_not_a_tree(self):
        with pytest.raises(FormatError, match="tree"):
            parse_tree("tree 3 root 0\n0 1\n0 2\n2 1\n")

    def test_root_defaults_to_zero(self):
        assert parse_tree("tree 2\n1 0\n").root == 0

    @pytest.mark.parametrize("text,fragment", [
        ("tree 2 root 5\n0 1\n", "absent"),
        ("tree 3\n0 1\n1 0\n", "repeated"),
        ("tree 0\n", "at least one"),
        ("tree 2 base 0\n", "expected"),
    ])
    def test_errors(self, text, fragment):
        with pytest.raises(FormatError, match=fragment):
            parse_tree(text)

    @pytest.mark.parametrize("s", range(1, 6))
    def test_round_trip(self, s):
        for T in oriented_trees(s).trees:
            U = parse_tree(serialize_tree(T))
            assert U.arcs == T.arcs and U.root == T.root

    def test_read_any(self):
        assert isinstance(read_any("tree 1\n"), RootedOrientedTree)
        assert isinstance(read_any("digraph 1\n"), OrientedGraph)
        with pytest.raises(FormatError):
            read_any("")
