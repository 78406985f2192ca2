"""Exact even-cycle constructions and certificates.

Builds Wenger incidence graphs and hypercube layer subgraphs, and turns
the counting arguments that control their 8-cycles into executable,
exact-arithmetic certificates.
"""

__version__ = "0.1.0"

from .bipartite import (
    BipartiteGraph,
    CycleSearch,
    enumerate_cycles_of_length,
    find_c4_small,
    find_cycle_of_length,
    girth,
    is_simple_cycle,
    random_edge_subgraph,
    read_graph,
    write_graph,
)
from .certificates import (
    C8Extraction,
    CertificateReport,
    c8free_upper_bound,
    cherry_count_degrees,
    cherry_count_planes,
    convexity_lower_bound,
    exact_max_c8free,
    extract_c8,
    greedy_c8free_subgraph,
    kst_cap_int,
    kst_cap_value,
    lift_c4_to_c8,
    verify_c8_free,
)
from .field import Field, moment_directions_independent, moment_row, solve2
from .hypercube import (
    BasisLayerParams,
    CubeGraph,
    LayerGraph,
    build_hypercube,
    build_layer,
    density_stats,
    exact_ex_qn_c8,
    is_basis,
    sample_basis_layer,
    union_layers_c10_probe,
)
from .wenger import EdgeMask, PlaneId, WengerGraph, build_wenger

__all__ = [
    "__version__",
    "BasisLayerParams",
    "BipartiteGraph",
    "C8Extraction",
    "CertificateReport",
    "CubeGraph",
    "CycleSearch",
    "EdgeMask",
    "Field",
    "LayerGraph",
    "PlaneId",
    "WengerGraph",
    "build_hypercube",
    "build_layer",
    "build_wenger",
    "c8free_upper_bound",
    "cherry_count_degrees",
    "cherry_count_planes",
    "convexity_lower_bound",
    "density_stats",
    "enumerate_cycles_of_length",
    "exact_ex_qn_c8",
    "exact_max_c8free",
    "extract_c8",
    "find_c4_small",
    "find_cycle_of_length",
    "girth",
    "greedy_c8free_subgraph",
    "is_basis",
    "is_simple_cycle",
    "kst_cap_int",
    "kst_cap_value",
    "lift_c4_to_c8",
    "moment_directions_independent",
    "moment_row",
    "random_edge_subgraph",
    "read_graph",
    "sample_basis_layer",
    "solve2",
    "union_layers_c10_probe",
    "verify_c8_free",
    "write_graph",
]
