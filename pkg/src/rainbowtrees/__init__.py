"""Induced rainbow paths and induced oriented trees in graphs of large chromatic number."""

from .coloring import (
    check_outtree_coloring,
    check_parity_coloring,
    greedy_refinement,
    kernel_set,
    level_coloring,
    natural_orientation,
    parity_coloring,
)
from .embedding import (
    SearchFailure,
    bikernel_tree_embedding,
    br_tree_embedding,
    dag_tree_embedding,
    decreasing_tree_search,
    extract_from_rainbow_ary_tree,
    good_tree_search,
    parity_tree_search,
    rainbow_paths_harness,
    st_plan,
    stuck_state_diagnostic,
)
from .graphs import (
    ACYCLIC,
    Coloring,
    Embedding,
    OrientedGraph,
    UndirectedGraph,
    chromatic_number,
    forbidden_witness,
    girth,
    is_proper,
    verify_embedding,
)
from .trees import RootedOrientedTree

__version__ = "0.1.0"

__all__ = [
    "ACYCLIC",
    "Coloring",
    "Embedding",
    "OrientedGraph",
    "RootedOrientedTree",
    "SearchFailure",
    "UndirectedGraph",
    "bikernel_tree_embedding",
    "br_tree_embedding",
    "check_outtree_coloring",
    "check_parity_coloring",
    "chromatic_number",
    "dag_tree_embedding",
    "decreasing_tree_search",
    "extract_from_rainbow_ary_tree",
    "forbidden_witness",
    "girth",
    "good_tree_search",
    "greedy_refinement",
    "is_proper",
    "kernel_set",
    "level_coloring",
    "natural_orientation",
    "parity_coloring",
    "parity_tree_search",
    "rainbow_paths_harness",
    "st_plan",
    "stuck_state_diagnostic",
    "verify_embedding",
]
