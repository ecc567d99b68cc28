"""Negative cycle vectors of signed graphs, computed exactly."""

from ncv.config import Budgets, BudgetExceeded, DEFAULT_BUDGETS
from ncv.graph import Graph, build_named, parse_graph6, encode_graph6, parse_graph_spec
from ncv.cycles import CycleCatalog, enumerate_cycles
from ncv.signed import (
    Signing,
    ncv,
    switch,
    negate,
    is_balanced,
    switching_equivalent,
    switching_isomorphic,
    class_representatives,
)
from ncv.symmetry import (
    AutomorphismGroup,
    Matching,
    automorphisms,
    is_permutable,
    find_permutable_matchings,
)
from ncv.counting import (
    MatchingAnalysis,
    g_count,
    f_count,
    ncv_inclusion_exclusion,
    analyze_matching,
    p_poly,
)
from ncv.rank import (
    exact_rank,
    build_ncv_matrix,
    block_rank,
    lower_bound_main,
    nu_bound,
    dim_exhaustive,
)

__version__ = "0.1.0"
