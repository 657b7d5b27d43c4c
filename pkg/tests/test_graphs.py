import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import dags, graphs, oriented, to_nx
from rainbowtrees.generators import complete, cycle, grotzsch, kneser, named_graph, path
from rainbowtrees.graphs import (
    ACYCLIC,
    Coloring,
    CycleError,
    Embedding,
    GuardError,
    OrientedGraph,
    UndirectedGraph,
    chromatic_number,
    dsatur_coloring,
    forbidden_witness,
    girth,
    greedy_coloring,
    is_proper,
    is_triangle_free,
    k_coloring,
    monochromatic_edge,
    require_proper,
    verify_embedding,
)
from rainbowtrees.trees import RootedOrientedTree


def brute_chi(g):
    if g.n == 0:
        return 0
    edges = g.edges()
    for k in range(1, g.n + 1):
        for colors in itertools.product(range(k), repeat=g.n):
            if all(colors[u] != colors[v] for u, v in edges):
                return k


def brute_k2r(g, r):
    h = to_nx(g.underlying())
    return any(len(set(nx.common_neighbors(h, a, b))) >= r
               for a, b in itertools.combinations(range(g.n), 2))


def brute_br(d, r):
    for a in range(d.n):
        for b in range(d.n):
            if a == b:
                continue
            both = [x for x in range(d.n) if x not in (a, b) and d.has_arc(a, x) and d.has_edge(b, x)]
            if len(both) >= r:
                return True
    return False


class TestConstruction:
    def test_two_cycle_rejected(self):
        with pytest.raises(ValueError, match="2-cycle"):
            OrientedGraph.from_arcs(2, [(0, 1), (1, 0)])

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError, match="self-loop"):
            UndirectedGraph.from_edges(2, [(1, 1)])
        with pytest.raises(ValueError, match="self-loop"):
            OrientedGraph.from_arcs(2, [(0, 0)])

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            UndirectedGraph.from_edges(2, [(0, 2)])

    def test_reverse_and_underlying(self):
        d = OrientedGraph.from_arcs(2, [(0, 1)])
        assert d.reverse().arcs() == [(1, 0)]
        assert d.underlying().edges() == [(0, 1)]

    def test_topological_order_forced(self):
        d = OrientedGraph.from_arcs(3, [(0, 1), (1, 2)])
        assert d.topological_order() == [0, 1, 2]

    def test_topological_order_cycle(self):
        d = OrientedGraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
        with pytest.raises(CycleError):
            d.topological_order()
        assert not d.is_acyclic()

    @given(dags())
    def test_topological_order_respects_arcs(self, d):
        pos = {v: i for i, v in enumerate(d.topological_order())}
        assert all(pos[u] < pos[v] for u, v in d.arcs())

    @given(oriented())
    def test_acyclicity_matches_networkx(self, d):
        assert d.is_acyclic() == nx.is_directed_acyclic_graph(to_nx(d))

    @given(graphs(), st.data())
    def test_induce_matches_networkx(self, g, data):
        keep = data.draw(st.sets(st.integers(0, max(g.n - 1, 0)), max_size=g.n)) if g.n else set()
        sub, index = g.induce(keep)
        expect = nx.convert_node_labels_to_integers(to_nx(g).subgraph(sorted(keep)), ordering="sorted")
        assert sub.edges() == sorted(tuple(sorted(e)) for e in expect.edges())
        assert index == sorted(keep)


class TestColoring:
    def test_order_must_cover_colors(self):
        with pytest.raises(ValueError):
            Coloring.of([1, 2], order=[1])
        with pytest.raises(ValueError):
            Coloring.of([0, 1])

    def test_ranks_follow_order(self):
        c = Coloring.of([5, 2, 9], order=[9, 5, 2])
        assert c.ranks() == (2, 3, 1)
        assert c.less(9, 2)
        assert c.reversed_order().ranks() == (2, 1, 3)

    def test_k2_proper(self):
        k2 = path(2)
        assert is_proper(k2, Coloring.of([1, 2]))
        assert not is_proper(k2, Coloring.of([1, 1]))
        assert monochromatic_edge(k2, Coloring.of([1, 1])) == (0, 1)

    def test_c5_proper(self):
        assert is_proper(cycle(5), Coloring.of([1, 2, 1, 2, 3]))

    def test_require_proper_raises(self):
        with pytest.raises(ValueError):
            require_proper(path(2), Coloring.of([3, 3]))

    def test_coloring_size_mismatch(self):
        with pytest.raises(ValueError):
            is_proper(path(3), Coloring.of([1, 2]))


class TestGirth:
    def test_c5(self):
        assert girth(cycle(5)) == 5

    def test_tree(self):
        assert girth(path(6)) is ACYCLIC
        assert ACYCLIC > 10 ** 9

    def test_petersen(self):
        assert girth(named_graph("petersen")) == 5

    @given(graphs(max_n=11))
    def test_matches_networkx(self, g):
        expect = nx.girth(to_nx(g))
        got = girth(g)
        assert (got is ACYCLIC) == (expect == float("inf"))
        if got is not ACYCLIC:
            assert got == expect

    @given(graphs(max_n=10))
    def test_triangle_free_matches_networkx(self, g):
        assert is_triangle_free(g) == (sum(nx.triangles(to_nx(g)).values()) == 0)


class TestForbidden:
    def test_c4_is_k22(self):
        w = forbidden_witness(cycle(4), "k2r", 2)
        assert w is not None and w.pair == (0, 2) and w.common == (1, 3)

    def test_petersen_k22_free(self):
        assert forbidden_witness(named_graph("petersen"), "k2r", 2) is None

    def test_single_arc_b2_free(self):
        assert forbidden_witness(OrientedGraph.from_arcs(2, [(0, 1)]), "br", 2) is None

    def test_b2_needs_digraph(self):
        with pytest.raises(TypeError):
            forbidden_witness(cycle(4), "br", 2)

    @given(graphs(max_n=9), st.integers(2, 3))
    def test_k2r_matches_pair_scan(self, g, r):
        assert (forbidden_witness(g, "k2r", r) is not None) == brute_k2r(g, r)

    @given(oriented(max_n=8), st.integers(2, 3))
    def test_br_matches_definition(self, d, r):
        w = forbidden_witness(d, "br", r)
        assert (w is not None) == brute_br(d, r)
        if w is not None:
            a, b = w.pair
            assert all(d.has_arc(a, x) and d.has_edge(b, x) for x in w.common)

    @given(dags(max_n=8))
    def test_b2_in_dags_is_any_c4(self, d):
        # in an acyclic digraph every 4-cycle orientation has a vertex with two out-arcs into it
        assert (forbidden_witness(d, "br", 2) is not None) == brute_k2r(d, 2)


class TestChromatic:
    def test_c5(self):
        assert chromatic_number(cycle(5))[0] == 3

    def test_grotzsch(self):
        k, c = chromatic_number(grotzsch())
        assert k == 4 and is_proper(grotzsch(), c)

    def test_edgeless(self):
        assert chromatic_number(UndirectedGraph.empty(4))[0] == 1

    def test_guard(self):
        with pytest.raises(GuardError):
            chromatic_number(complete(5), guard=4)

    def test_brinkmann(self):
        g = named_graph("brinkmann")
        assert g.n == 21 and g.edge_count == 42
        assert all(g.degree(v) == 4 for v in range(g.n))
        assert girth(g) == 5
        assert chromatic_number(g)[0] == 4

    def test_kneser_petersen(self):
        assert chromatic_number(kneser(5, 2))[0] == 3

    @given(graphs(max_n=7))
    def test_matches_brute_force(self, g):
        k, c = chromatic_number(g)
        assert k == brute_chi(g)
        assert is_proper(g, c) and c.num_colors == k

    @given(graphs(max_n=9), st.integers(0, 2 ** 32))
    def test_k_coloring_at_chi(self, g, seed):
        import random
        k = chromatic_number(g)[0]
        c = k_coloring(g, k, random.Random(seed))
        assert c is not None and is_proper(g, c)
        if k > 1:
            assert k_coloring(g, k - 1) is None

    @given(graphs(max_n=12))
    def test_heuristics_proper(self, g):
        assert is_proper(g, greedy_coloring(g))
        assert is_proper(g, dsatur_coloring(g))


class TestVerifyEmbedding:
    def test_triangle_has_no_induced_path(self):
        T = RootedOrientedTree.directed_path(3).as_out_tree()
        for image in itertools.permutations(range(3)):
            assert not verify_embedding(cycle(3), T, image).induced

    def test_p3(self):
        T = RootedOrientedTree.directed_path(3)
        assert verify_embedding(path(3), T, (0, 1, 2)).induced

    def test_directed_path_all_true(self):
        d = OrientedGraph.from_arcs(3, [(0, 1), (1, 2)])
        v = verify_embedding(d, RootedOrientedTree.directed_path(3), (0, 1, 2), Coloring.of([3, 2, 1]))
        assert v.induced and v.direction_exact and v.rainbow and v.decreasing

    def test_wrong_direction(self):
        d = OrientedGraph.from_arcs(3, [(1, 0), (1, 2)])
        v = verify_embedding(d, RootedOrientedTree.directed_path(3), (0, 1, 2))
        assert v.induced and v.direction_exact is False and not v.ok(False)

    def test_image_must_be_injective(self):
        with pytest.raises(ValueError):
            verify_embedding(path(3), RootedOrientedTree.directed_path(2), (1, 1))

    def test_embedding_rejects_forged_verdict(self):
        T = RootedOrientedTree.directed_path(2)
        good = Embedding(T, path(2), (0, 1))
        with pytest.raises(ValueError):
            Embedding(T, path(3), (0, 2), verdict=good.verdict)

    @given(graphs(max_n=8), st.data())
    def test_induced_matches_networkx(self, g, data):
        if g.n < 3:
            return
        image = data.draw(st.permutations(range(g.n)))[:3]
        T = RootedOrientedTree.directed_path(3)
        sub = to_nx(g).subgraph(image)
        expect = sub.number_of_edges() == 2 and sub.has_edge(image[0], image[1]) \
            and sub.has_edge(image[1], image[2])
        assert verify_embedding(g, T, image).induced == expect
