import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import dags, graphs, oriented
from rainbowtrees.coloring import parity_coloring
from rainbowtrees.embedding import (
    HostContractError,
    SearchTrace,
    bikernel_tree_embedding,
    br_bound,
    br_tree_embedding,
    canonical_path,
    dag_tree_embedding,
    decreasing_tree_search,
    extract_from_rainbow_ary_tree,
    good_tree_search,
    outtree_bound,
    parity_tree_search,
    rainbow_paths_harness,
    st_plan,
    stuck_state_diagnostic,
)
from rainbowtrees.generators import (
    complete,
    cycle,
    oriented_trees,
    path,
    planted_br_instance,
    rainbow_ary_host,
    random_coloring,
    synth_outtree_colored,
    undirected_trees,
)
from rainbowtrees.graphs import (
    Coloring,
    Embedding,
    GuardError,
    OrientedGraph,
    UndirectedGraph,
    verify_embedding,
)
from rainbowtrees.oracle import contains_induced_copy, enumerate_induced_rainbow_paths, st_number
from rainbowtrees.trees import RootedOrientedTree, complete_ary_tree

TRANSITIVE = OrientedGraph.from_arcs(3, [(0, 1), (0, 2), (1, 2)])
SMALL_TREES = [T for s in range(1, 5) for T in oriented_trees(s).trees]
SMALL_OUT = [T for s in range(1, 5) for T in oriented_trees(s).out_trees]
SMALL_IN = [T for s in range(1, 5) for T in oriented_trees(s).in_trees]


@st.composite
def colored_graphs(draw, max_n=10):
    g = draw(graphs(max_n=max_n, min_n=1))
    beta = random_coloring(g, draw(st.integers(0, 10 ** 6)), draw(st.integers(0, 2)))
    return g, beta.with_order(draw(st.permutations(list(beta.order))))


class TestGoodTreeSearch:
    def test_single_vertex_takes_least_top_vertex(self):
        alpha = Coloring.of([3, 2, 1])
        res = good_tree_search(TRANSITIVE, TRANSITIVE, alpha, RootedOrientedTree.single())
        assert res.image == (0,)

    def test_hand_trace(self):
        res = good_tree_search(TRANSITIVE, TRANSITIVE, Coloring.of([3, 2, 1]),
                               RootedOrientedTree.directed_path(2))
        assert res.image == (0, 1)
        assert res.trace.colors == [3, 2]

    def test_rejects_non_outtree_coloring(self):
        d = OrientedGraph.from_arcs(3, [(0, 1), (1, 2)])
        with pytest.raises(ValueError, match="out-tree coloring"):
            good_tree_search(d, d, Coloring.of([3, 2, 1]).with_order([1, 3, 2]),
                             RootedOrientedTree.single())

    def test_rejects_arc_missing_from_f(self):
        d = OrientedGraph.from_arcs(2, [(0, 1)])
        with pytest.raises(ValueError, match="not an arc of F"):
            good_tree_search(OrientedGraph.from_arcs(2, []), d, Coloring.of([2, 1]),
                             RootedOrientedTree.single())

    def test_rejects_general_pattern(self):
        T = RootedOrientedTree.from_arcs(3, [(0, 1), (2, 1)])
        with pytest.raises(ValueError, match="out-tree"):
            good_tree_search(TRANSITIVE, TRANSITIVE, Coloring.of([3, 2, 1]), T)

    @pytest.mark.parametrize("r,s", [(2, 3), (2, 4), (3, 3)])
    def test_guarantee_on_synthetic_hosts(self, r, s):
        k = outtree_bound(r, s)
        for seed in range(6):
            inst = synth_outtree_colored(k, None, ("br_free", r), 0.01, seed)
            for T in oriented_trees(s).out_trees:
                res = good_tree_search(inst.digraph, inst.digraph, inst.alpha, T)
                assert res, res.reason
                v = res.verdict
                assert v.induced and v.direction_exact and v.rainbow and v.decreasing

    def test_bound_values(self):
        assert [outtree_bound(2, 3), outtree_bound(2, 4), outtree_bound(3, 3)] == [6, 10, 9]

    def test_failure_carries_trace(self):
        d = OrientedGraph.from_arcs(3, [(0, 1), (0, 2), (1, 2)])
        res = good_tree_search(d, d, Coloring.of([3, 2, 1]), RootedOrientedTree.out_star(3))
        assert not res and res.trace.size == 2 and res.trace.stuck == [(1, 2)]


class TestDecreasing:
    def test_k2(self):
        res = decreasing_tree_search(path(2), Coloring.of([2, 1]), RootedOrientedTree.directed_path(2))
        assert res.image == (0, 1) and res.verdict.decreasing

    def test_c5_path(self):
        beta = Coloring.of([1, 2, 1, 2, 3])
        res = decreasing_tree_search(cycle(5), beta, RootedOrientedTree.directed_path(3))
        assert res.image == (4, 3, 2)
        assert [beta[v] for v in res.image] == [3, 2, 1]

    @given(colored_graphs(), st.sampled_from(SMALL_OUT))
    def test_success_is_real(self, data, T):
        g, beta = data
        res = decreasing_tree_search(g, beta, T)
        if not res:
            return
        assert res.verdict.induced and res.verdict.decreasing and res.revalidate()
        assert contains_induced_copy(g, T)[0]
        if len(T.out_leaves()) <= 1:
            # a directed path decreasing from its root is rainbow
            assert res.verdict.rainbow


class TestHarness:
    def test_c5_s2(self):
        res = rainbow_paths_harness(cycle(5), Coloring.of([1, 2, 1, 2, 3]), 2)
        assert res.runs == 6 and res.count >= 1

    def test_c5_s3_matches_oracle(self):
        beta = Coloring.of([1, 2, 1, 2, 3])
        res = rainbow_paths_harness(cycle(5), beta, 3)
        assert res.paths == enumerate_induced_rainbow_paths(cycle(5), beta, 3)

    def test_s1(self):
        beta = Coloring.of([1, 2, 1, 2, 3])
        res = rainbow_paths_harness(cycle(5), beta, 1)
        assert res.count >= 1 and all(len(p) == 1 for p in res.paths)
        assert rainbow_paths_harness(cycle(5), beta, 1, orderings=1).count == 1

    def test_guard(self):
        g = complete(9)
        with pytest.raises(GuardError):
            rainbow_paths_harness(g, Coloring.of(range(1, 10)), 2)

    def test_sampled_orderings_are_seeded(self):
        beta = Coloring.of([1, 2, 1, 2, 3])
        a = rainbow_paths_harness(cycle(5), beta, 2, orderings=4, seed=7)
        b = rainbow_paths_harness(cycle(5), beta, 2, orderings=4, seed=7)
        assert a.paths == b.paths and a.runs == 4

    def test_canonical_path(self):
        assert canonical_path([4, 1, 2]) == (2, 1, 4)
        assert canonical_path([1, 5]) == (1, 5)

    @given(colored_graphs(max_n=9), st.integers(2, 4))
    def test_paths_are_in_oracle(self, data, s):
        g, beta = data
        if beta.num_colors > 6:
            return
        res = rainbow_paths_harness(g, beta, s)
        assert res.paths <= enumerate_induced_rainbow_paths(g, beta, s)


class TestDag:
    def test_single_vertex(self):
        d = OrientedGraph.from_arcs(1, [])
        assert dag_tree_embedding(d, RootedOrientedTree.single()).image == (0,)

    def test_cyclic_rejected(self):
        d = OrientedGraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
        with pytest.raises(ValueError):
            dag_tree_embedding(d, RootedOrientedTree.single())

    def test_general_tree_rejected(self):
        with pytest.raises(ValueError):
            dag_tree_embedding(TRANSITIVE, RootedOrientedTree.from_arcs(3, [(0, 1), (2, 1)]))

    def test_bad_supplied_coloring(self):
        d = OrientedGraph.from_arcs(3, [(0, 1), (1, 2)])
        with pytest.raises(ValueError):
            dag_tree_embedding(d, RootedOrientedTree.directed_path(2), Coloring.of([3, 2, 1]).with_order([2, 1, 3]))

    def test_two_sided_corpus(self):
        inst = synth_outtree_colored(10, [60] * 10, ("br_free", 2), 0.002, 0, two_sided=True)
        d = inst.digraph
        for T in SMALL_OUT + SMALL_IN:
            res = dag_tree_embedding(d, T, inst.alpha)
            assert res and res.verdict.ok(True) and res.verdict.direction_exact
        assert d.reverse().reverse() == d

    def test_in_tree_image_serves_the_reverse(self):
        inst = synth_outtree_colored(10, [60] * 10, ("br_free", 2), 0.002, 1, two_sided=True)
        d = inst.digraph
        for T in SMALL_IN:
            res = dag_tree_embedding(d, T, inst.alpha)
            assert res.verdict.direction_exact
            assert verify_embedding(d.reverse(), T.reverse(), res.image).direction_exact

    @given(dags(max_n=10), st.sampled_from(SMALL_OUT + SMALL_IN))
    def test_success_is_real(self, d, T):
        if d.n == 0:
            return
        res = dag_tree_embedding(d, T)
        if res:
            assert res.verdict.induced and res.verdict.direction_exact
            assert contains_induced_copy(d, T)[0]


class TestParitySearch:
    def test_hand_trace(self):
        d = OrientedGraph.from_arcs(2, [(0, 1)])
        T = RootedOrientedTree.from_arcs(2, [(1, 0)], root=0)
        res = parity_tree_search(d, Coloring.of([1, 2]), T)
        assert res.image == (1, 0)

    def test_single_vertex(self):
        d = OrientedGraph.from_arcs(3, [(0, 1)])
        c, _ = parity_coloring(d)
        assert parity_tree_search(d, c, RootedOrientedTree.single())

    def test_rejects_bad_coloring(self):
        d = OrientedGraph.from_arcs(2, [(0, 1)])
        with pytest.raises(ValueError):
            parity_tree_search(d, Coloring.of([2, 1]), RootedOrientedTree.single())

    @given(dags(max_n=12), st.sampled_from(SMALL_TREES))
    def test_success_is_real(self, d, T):
        if d.n == 0:
            return
        c, _ = parity_coloring(d)
        res = parity_tree_search(d, c, T)
        if res:
            assert res.verdict.ok(True) and res.revalidate()
            assert contains_induced_copy(d, T)[0]

    @given(dags(max_n=12, min_n=2))
    def test_single_arc_always_embeds(self, d):
        if not d.arc_count:
            return
        for root in (0, 1):
            T = RootedOrientedTree.from_arcs(2, [(0, 1)], root)
            res = bikernel_tree_embedding(d, T)
            assert res and res.verdict.ok(True)


class TestStPlan:
    def test_examples(self):
        assert st_plan(RootedOrientedTree.single()).st == 0
        assert st_plan(RootedOrientedTree.out_star(5)).st == 1
        assert st_plan(RootedOrientedTree.directed_path(3)).st == 2

    def test_tie_goes_to_out_side(self):
        plan = st_plan(RootedOrientedTree.directed_path(2))
        assert plan.peel == (("out", (1,)),)

    @pytest.mark.parametrize("s", range(1, 7))
    def test_matches_recursive_oracle(self, s):
        for T in oriented_trees(s).trees:
            assert st_plan(T).st == st_number(T)

    @pytest.mark.parametrize("s", range(2, 7))
    def test_plan_steps_strip_whole_leaf_sets(self, s):
        for T in oriented_trees(s).trees:
            cur, keep = T, list(range(T.n))
            for side, leaves in st_plan(T).peel:
                want = cur.out_leaves() if side == "out" else cur.in_leaves()
                assert sorted(keep[v] for v in want) == sorted(leaves)
                pos = {v: i for i, v in enumerate(keep)}
                cur, idx = cur.remove(pos[v] for v in leaves)
                keep = [keep[i] for i in idx]
            assert cur.n == 1

    def test_bound(self):
        for r in (2, 3):
            for s in range(2, 8):
                assert br_bound(s, s - 1, r) == (r - 1) * (s - 1) * (s - 2) + 2 * s + 1


class TestBr:
    def test_single_arc(self):
        d = OrientedGraph.from_arcs(4, [(0, 1), (0, 2), (0, 3)])
        res = br_tree_embedding(d, RootedOrientedTree.directed_path(2), 2)
        assert res and res.image[0] == 0

    def test_tournament_contract(self):
        d = OrientedGraph.from_arcs(5, [(i, j) for i, j in itertools.combinations(range(5), 2)])
        res = br_tree_embedding(d, RootedOrientedTree.out_star(3), 2)
        if res:
            assert res.verdict.ok(False)
        else:
            assert res.trace.stuck_level is not None

    @pytest.mark.parametrize("s", [2, 3, 4])
    def test_planted(self, s):
        for T in oriented_trees(s).trees:
            for seed in range(4):
                d = planted_br_instance(T, 2, seed)
                res = br_tree_embedding(d, T, 2)
                assert res and res.verdict.ok(False)
                for p in res.trace.peels:
                    if p.chi is not None:
                        assert p.chi <= 2 * p.threshold

    def test_r_must_be_two_or_more(self):
        with pytest.raises(ValueError):
            br_tree_embedding(TRANSITIVE, RootedOrientedTree.single(), 1)

    @given(oriented(max_n=9), st.sampled_from(SMALL_TREES))
    def test_success_is_real(self, d, T):
        if d.n == 0:
            return
        res = br_tree_embedding(d, T, 2)
        if res:
            assert res.verdict.ok(False)
            assert contains_induced_copy(d, T)[0]


def _ary(r, s, extra=0, seed=0):
    g, A, c = rainbow_ary_host(r, s, extra, seed)
    return g, Embedding(A, g, tuple(range(A.n)), c)


class TestExtraction:
    def test_single_vertex_is_root(self):
        g, ary = _ary(2, 3)
        assert extract_from_rainbow_ary_tree(g, ary, RootedOrientedTree.single(), 2).image == (0,)

    @pytest.mark.parametrize("extra", [0, 25])
    def test_all_trees_43(self, extra):
        g, ary = _ary(2, 3, extra, seed=3)
        assert g.n == 43
        for h in range(1, 4):
            for H in undirected_trees(h):
                for root in range(H.n):
                    res = extract_from_rainbow_ary_tree(g, ary, H.rerooted(root), 2)
                    sub, _ = g.induce(res.image)
                    assert res.verdict.induced and res.verdict.rainbow
                    assert contains_induced_copy(sub, H)[0]

    def test_path_and_star(self):
        g, ary = _ary(2, 3)
        for H in (RootedOrientedTree.directed_path(3), RootedOrientedTree.out_star(3)):
            assert extract_from_rainbow_ary_tree(g, ary, H, 2).verdict.ok(True)

    def test_rejects_wrong_arity(self):
        A = complete_ary_tree(5, 3)
        g = UndirectedGraph.from_edges(A.n, A.arcs)
        ary = Embedding(A, g, tuple(range(A.n)), Coloring.of(range(1, A.n + 1)))
        with pytest.raises(ValueError):
            extract_from_rainbow_ary_tree(g, ary, RootedOrientedTree.single(), 2)

    def test_rejects_host_with_k22(self):
        g, ary = _ary(2, 3)
        # chords between two children of the root and a grandchild close a 4-cycle
        g2 = UndirectedGraph.from_edges(g.n, g.edges() + [(1, 2), (2, 7)])
        ary2 = Embedding(ary.tree, g2, ary.image, ary.coloring)
        with pytest.raises(HostContractError):
            extract_from_rainbow_ary_tree(g2, ary2, RootedOrientedTree.directed_path(2), 2)

    def test_too_many_vertices(self):
        g, ary = _ary(2, 3)
        with pytest.raises(ValueError):
            extract_from_rainbow_ary_tree(g, ary, RootedOrientedTree.directed_path(4), 2)


class TestStuck:
    def _stuck_traces(self, g=5, seeds=4):
        out = []
        for seed in range(seeds):
            inst = synth_outtree_colored(8, None, ("girth", g), 0.01, seed)
            d = inst.digraph
            for s in range(5, 10):
                for T in (RootedOrientedTree.directed_path(s), RootedOrientedTree.out_star(s)):
                    res = good_tree_search(d, d, inst.alpha, T)
                    if not res and res.trace.size >= g:
                        out.append((res.trace, d))
        return out

    def test_corpus_assertions_hold(self):
        traces = self._stuck_traces()
        assert traces
        for trace, d in traces:
            report = stuck_state_diagnostic(trace, d, 5)
            assert report.ok, report.violations
            assert report.top == report.size + report.x_size

    def test_fabricated_short_cycle(self):
        arcs = [(i, i + 1) for i in range(6)] + [(6, 7), (7, 4)]
        F = OrientedGraph.from_arcs(8, arcs)
        trace = SearchTrace("out-tree", tuple(range(8)), (None, 0, 1, 2, 3, 4, 5, 6), 8,
                            placed=list(range(7)), colors=list(range(8, 1, -1)),
                            skipped=[[] for _ in range(7)], stuck=[(1, 7)])
        report = stuck_state_diagnostic(trace, F, 7)
        assert not report.ok
        assert any("girth" in v for v in report.violations)

    def test_precondition(self):
        traces = self._stuck_traces(seeds=1)
        trace, d = traces[0]
        with pytest.raises(ValueError):
            stuck_state_diagnostic(trace, d, trace.size + 1)

    def test_success_trace_rejected(self):
        res = good_tree_search(TRANSITIVE, TRANSITIVE, Coloring.of([3, 2, 1]), RootedOrientedTree.single())
        with pytest.raises(ValueError):
            stuck_state_diagnostic(res.trace, TRANSITIVE, 5)
