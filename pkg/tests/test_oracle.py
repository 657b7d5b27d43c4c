import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs, oriented, to_nx, tree_to_nx
from rainbowtrees.generators import complete, cycle, grotzsch, oriented_trees, path, random_coloring
from rainbowtrees.graphs import Coloring, GuardError, OrientedGraph, UndirectedGraph
from rainbowtrees.oracle import (
    aravind_scan,
    contains_induced_copy,
    enumerate_induced_rainbow_paths,
    mu,
    st_number,
)
from rainbowtrees.trees import RootedOrientedTree

C5_COLORS = Coloring.of([1, 2, 1, 2, 3])


def paths_by_networkx(g, c, s):
    """Induced rainbow paths on s vertices from vertex subsets, via networkx."""
    h = to_nx(g)
    out = set()
    for subset in itertools.combinations(range(g.n), s):
        if len({c.colors[v] for v in subset}) < s:
            continue
        sub = h.subgraph(subset)
        if s == 1:
            out.add(subset)
            continue
        if not (nx.is_tree(sub) and max(d for _, d in sub.degree()) <= 2):
            continue
        ends = sorted(v for v, d in sub.degree() if d == 1)
        seq = nx.shortest_path(sub, ends[0], ends[1])
        out.add(tuple(seq))
    return out


@st.composite
def colored(draw, max_n=9):
    g = draw(graphs(max_n=max_n, min_n=1))
    return g, random_coloring(g, draw(st.integers(0, 10 ** 6)), draw(st.integers(0, 2)))


class TestPaths:
    def test_triangle(self):
        assert enumerate_induced_rainbow_paths(cycle(3), Coloring.of([1, 2, 3]), 3) == set()

    def test_c5(self):
        assert enumerate_induced_rainbow_paths(cycle(5), C5_COLORS, 3) == {(0, 4, 3), (1, 0, 4), (2, 3, 4)}

    def test_s1(self):
        assert enumerate_induced_rainbow_paths(cycle(5), C5_COLORS, 1) == {(v,) for v in range(5)}

    def test_guards(self):
        with pytest.raises(GuardError):
            enumerate_induced_rainbow_paths(UndirectedGraph.empty(41), Coloring.of([1] * 41), 2)
        with pytest.raises(GuardError):
            enumerate_induced_rainbow_paths(path(12), Coloring.of(range(1, 13)), 11)

    def test_improper_coloring(self):
        with pytest.raises(ValueError):
            enumerate_induced_rainbow_paths(path(2), Coloring.of([1, 1]), 2)

    @given(colored(), st.integers(1, 5))
    def test_matches_subset_scan(self, data, s):
        g, c = data
        assert enumerate_induced_rainbow_paths(g, c, s) == paths_by_networkx(g, c, s)


class TestMu:
    def test_examples(self):
        assert mu(cycle(5), C5_COLORS) == 3
        assert mu(path(2), Coloring.of([1, 2])) == 2
        assert mu(UndirectedGraph.empty(3), Coloring.of([1, 1, 1])) == 1

    @given(colored(max_n=8))
    def test_matches_enumeration(self, data):
        g, c = data
        best = max(s for s in range(1, g.n + 1) if paths_by_networkx(g, c, s))
        assert mu(g, c) == best


class TestContains:
    def test_examples(self):
        assert not contains_induced_copy(cycle(3), RootedOrientedTree.directed_path(3))[0]
        d = OrientedGraph.from_arcs(3, [(0, 1), (1, 2)])
        found, image = contains_induced_copy(d, RootedOrientedTree.directed_path(3))
        assert found and image == (0, 1, 2)

    def test_direction_matters(self):
        d = OrientedGraph.from_arcs(3, [(1, 0), (1, 2)])
        assert not contains_induced_copy(d, RootedOrientedTree.directed_path(3))[0]
        assert contains_induced_copy(d, RootedOrientedTree.out_star(3))[0]

    def test_guard(self):
        with pytest.raises(GuardError):
            contains_induced_copy(complete(15), RootedOrientedTree.single())

    @given(oriented(max_n=7), st.sampled_from([T for s in range(1, 5) for T in oriented_trees(s).trees]))
    def test_matches_networkx_matcher(self, d, T):
        h = to_nx(d)
        pattern = tree_to_nx(T)
        expect = any(
            True for _ in nx.algorithms.isomorphism.DiGraphMatcher(h, pattern).subgraph_isomorphisms_iter())
        found, image = contains_induced_copy(d, T)
        assert found == expect
        if found:
            sub = nx.relabel_nodes(h.subgraph(image), {x: i for i, x in enumerate(image)})
            assert set(sub.edges()) == set(T.arcs)


class TestAravind:
    def test_c5(self):
        rep = aravind_scan([("c5", cycle(5))], 20)
        assert rep.graphs == 1 and rep.checked == 20 and not rep.counterexamples

    def test_grotzsch(self):
        rep = aravind_scan([("grotzsch", grotzsch())], 200, seed=1)
        assert rep.checked == 200 and not rep.counterexamples

    def test_triangles_skipped(self):
        rep = aravind_scan([complete(3)], 5)
        assert rep.graphs == 0 and rep.skipped


class TestStNumber:
    def test_examples(self):
        assert st_number(RootedOrientedTree.single()) == 0
        assert st_number(RootedOrientedTree.out_star(4)) == 1
        assert st_number(RootedOrientedTree.directed_path(3)) == 2
        assert st_number(RootedOrientedTree.directed_path(2)) == 1
