"""Exact experiments on edge-clique covers, edge-clique graphs and rankwidth."""

from .edge_clique import (
    EdgeCliqueResult,
    ResourceLimitError,
    edge_clique_graph,
    iterate_to,
    iterated_edge_clique,
    verify_clique_correspondence,
)
from .graph import (
    Graph,
    complement,
    complete_graph,
    cycle_graph,
    empty_graph,
    equivalent_vertices,
    isolated_vertices,
    make_cocktail_party,
    maximal_cliques,
    path_graph,
    random_graph,
    read_graph,
    write_graph,
)
from .rankwidth import (
    BranchDecomposition,
    CutRankOracle,
    complement_gap_check,
    cut_rank,
    exact_rankwidth,
    greedy_rankwidth_upper_bound,
    linear_rankwidth,
    verify_branch_decomposition,
)
from .solvers import (
    CliqueCover,
    SolveReport,
    chromatic_number,
    edge_clique_cover,
    gyarfas_lower_bound,
    max_independent_set,
    verify_cover,
    vertex_clique_cover,
)

__version__ = "0.1.0"
