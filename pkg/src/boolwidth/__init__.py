"""Boolean-width and rank-width: cut functions, decomposition trees and dynamic programs."""

from .cuts import boolean_cut, count_d_classes, cut_rank, cut_report, nss, union_closure_count
from .decomposition import (
    DecompositionTree,
    enumerate_trees,
    exact_min_width,
    f_width,
    greedy_decompose,
    hsu_structured_tree,
    random_tree,
    root_at,
)
from .equivalence import build_representatives, canonical_representative, d_signature
from .errors import ClassCapExceeded, GraphFormatError, RefusalError, TreeError
from .generators import (
    gen_complete,
    gen_complete_bipartite,
    gen_cycle,
    gen_grid,
    gen_hsu,
    gen_hsu_grid,
    gen_path,
    gen_random,
    gen_rk,
)
from .graph import Graph, VertexSet
from .partition_dp import DegreeMatrix, dq_catalog, solve_partition, solve_partition_opt
from .subset_dp import SetSpec, SubsetProblem, catalog, solve_subset

__version__ = "0.1.0"

__all__ = [
    "ClassCapExceeded",
    "DecompositionTree",
    "DegreeMatrix",
    "Graph",
    "GraphFormatError",
    "RefusalError",
    "SetSpec",
    "SubsetProblem",
    "TreeError",
    "VertexSet",
    "boolean_cut",
    "build_representatives",
    "canonical_representative",
    "catalog",
    "count_d_classes",
    "cut_rank",
    "cut_report",
    "d_signature",
    "dq_catalog",
    "enumerate_trees",
    "gen_complete",
    "gen_complete_bipartite",
    "gen_cycle",
    "gen_grid",
    "gen_hsu",
    "gen_hsu_grid",
    "gen_path",
    "gen_random",
    "gen_rk",
    "exact_min_width",
    "f_width",
    "greedy_decompose",
    "hsu_structured_tree",
    "nss",
    "random_tree",
    "root_at",
    "solve_partition",
    "solve_partition_opt",
    "solve_subset",
    "union_closure_count",
]
