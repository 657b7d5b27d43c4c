import itertools
import os

import networkx as nx
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rainbowtrees.graphs import OrientedGraph, UndirectedGraph

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", deadline=None, max_examples=200)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, max_n=10, min_n=0):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return UndirectedGraph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


@st.composite
def dags(draw, max_n=10, min_n=0):
    """Random DAG: a random vertex order, arcs only run forward in it."""
    n = draw(st.integers(min_n, max_n))
    perm = draw(st.permutations(range(n)))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return OrientedGraph.from_arcs(n, [(perm[i], perm[j]) for (i, j), k in zip(pairs, keep) if k])


@st.composite
def oriented(draw, max_n=9):
    """Any oriented graph, cycles allowed."""
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    choice = draw(st.lists(st.sampled_from((0, 1, 2)), min_size=len(pairs), max_size=len(pairs)))
    arcs = [(u, v) if c == 1 else (v, u) for (u, v), c in zip(pairs, choice) if c]
    return OrientedGraph.from_arcs(n, arcs)


def to_nx(g):
    if isinstance(g, OrientedGraph):
        h = nx.DiGraph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.arcs())
    else:
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges())
    return h


def tree_to_nx(T):
    h = nx.DiGraph()
    h.add_nodes_from(range(T.n))
    h.add_edges_from(T.arcs)
    return h


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
