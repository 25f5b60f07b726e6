"""k pairwise-dissimilar s->t paths with minimum collective length."""

from .exact import Query, ResultSet, SolverOptions, brute_force_oracle, solve_exact
from .graph import (
    Graph,
    GraphDomainError,
    GraphFormatError,
    Path,
    PathSet,
    Walk,
    concat,
    gen_grid,
    load_dimacs_co,
    load_dimacs_gr,
    load_edge_list,
    path_nodes,
    read_graph,
)
from .greedy import solve_greedy_ksp
from .kernels import BACKEND
from .shortest import KspIterator, SpTree, dijkstra, extract_path, ksp_next
from .similarity import dissimilar_to_set, make_weighted_jaccard, weighted_jaccard
from .ssvp import SsvpIterator, solve_ssvp_d_plus, solve_svp_d, ssvp_next
from .subsets import SubsetBudgetExceeded, SubsetEnumerator

from .bench import ALGORITHMS as SOLVERS

__all__ = [
    "BACKEND", "Graph", "GraphDomainError", "GraphFormatError", "KspIterator", "Path",
    "PathSet", "Query", "ResultSet", "SOLVERS", "SolverOptions", "SpTree", "SsvpIterator",
    "SubsetBudgetExceeded", "SubsetEnumerator", "Walk", "brute_force_oracle", "concat",
    "dijkstra", "dissimilar_to_set", "extract_path", "gen_grid", "ksp_next",
    "load_dimacs_co", "load_dimacs_gr", "load_edge_list", "make_weighted_jaccard",
    "path_nodes", "read_graph", "solve_exact", "solve_greedy_ksp", "solve_ssvp_d_plus",
    "solve_svp_d", "ssvp_next", "weighted_jaccard",
]
