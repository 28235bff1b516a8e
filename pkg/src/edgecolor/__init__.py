"""Delta edge coloring of dense graphs.

Multigraphs with stable edge identities, overfull analytics, Kempe-chain
machinery, the classical constructive toolkit (Hakimi, Dirac, König,
matchings, path covers), a guarded Delta-coloring engine for dense near
star-multigraphs of even order, the odd-order reduction pipeline, and
exact brute-force oracles for small instances.
"""

from .coloring import (
    EdgeColoring,
    KempeChain,
    ParityReport,
    ProperReport,
    kempe_chain,
    kempe_swap,
    parity_audit,
    verify_proper,
)
from .classic import (
    PathCover,
    dirac_hamiltonian,
    hakimi_realize,
    konig_color,
    path_cover_matching,
    path_cover_star,
    perfect_matching_bipartite_star,
    perfect_matching_dense,
)
from .engine import DcolorResult, EngineParams, classify_condition, dcolor, select_pairs
from .equalize import equalize_balanced_sides, equalize_classes, equalize_per_side
from .formats import emit_graph, parse_graph, read_graph, write_graph
from .multigraph import (
    DeficiencyReport,
    Multigraph,
    OverfullScanResult,
    StarProfile,
    build_multigraph,
    deficiency_report,
    detect_star_structure,
    is_overfull,
    overfull_subgraph_check_dense,
)
from .oracle import OracleResult, brute_chromatic_index, brute_overfull_scan
from .partition import Partition, SplitGraphs, adjust_for_center, balanced_partition, build_split
from .reduction import OddResult, color_odd_dense, compute_W, derive_eta
from .trace import PipelineTrace
from .vizing import misra_gries, near_star_color, star_multigraph_color

__all__ = [
    "DcolorResult",
    "DeficiencyReport",
    "EdgeColoring",
    "EngineParams",
    "KempeChain",
    "Multigraph",
    "OddResult",
    "OracleResult",
    "OverfullScanResult",
    "ParityReport",
    "Partition",
    "PathCover",
    "PipelineTrace",
    "ProperReport",
    "SplitGraphs",
    "StarProfile",
    "adjust_for_center",
    "balanced_partition",
    "brute_chromatic_index",
    "brute_overfull_scan",
    "build_multigraph",
    "build_split",
    "classify_condition",
    "color_odd_dense",
    "compute_W",
    "dcolor",
    "deficiency_report",
    "derive_eta",
    "detect_star_structure",
    "dirac_hamiltonian",
    "emit_graph",
    "equalize_balanced_sides",
    "equalize_classes",
    "equalize_per_side",
    "hakimi_realize",
    "is_overfull",
    "kempe_chain",
    "kempe_swap",
    "konig_color",
    "misra_gries",
    "near_star_color",
    "overfull_subgraph_check_dense",
    "parity_audit",
    "parse_graph",
    "path_cover_matching",
    "path_cover_star",
    "perfect_matching_bipartite_star",
    "perfect_matching_dense",
    "read_graph",
    "select_pairs",
    "star_multigraph_color",
    "verify_proper",
    "write_graph",
]
