"""Exact vertex reliability and edge-insertion recommendation for small graphs."""

from .graph import (
    EdgeInsertion,
    SimpleGraph,
    betweenness,
    betweenness_all,
    build_graph,
    canonical_key,
    diameter,
    distance,
    insert_edge,
    is_connected,
    non_adjacent_pairs,
    subset_connected,
    vertex_connectivity,
)
from .graphio import load_graph, read_edge_list, read_graph6, write_edge_list, write_graph6
from .spectral import (
    SpectralData,
    algebraic_connectivity,
    fiedler_basis,
    fiedler_distance,
    laplacian,
    spectral_data,
    symmetric_eigen,
)
from .reliability import (
    ReliabilityProfile,
    SubsetClassification,
    classify_subsets,
    count_connected,
    evaluate_polynomial,
    recount_for_insertion,
    reliability_profile,
    score_integral,
)
from .heuristics import (
    HeuristicResult,
    apply_heuristic,
    derive_post_hoc,
    heuristic_alpha,
    heuristic_beta,
    heuristic_delta,
    heuristic_gamma,
    heuristic_phi,
    heuristic_phi_cap,
    heuristic_random,
)
from .generators import DatasetSpec, build_dataset, gen_ba, gen_er, gen_ws
from .evaluation import (
    ExperimentReport,
    mrdi,
    rdi_heuristic,
    rdi_insertion,
    run_experiment,
    summarize,
    timing_benchmark,
    wilcoxon_one_sided,
)

__version__ = "0.1.0"
