"""Persistent homology barcodes over Z2 with in-place star-removal updates.

The library keeps the full R = D*V reduction of a filtration's boundary matrix
and can delete a simplex together with all its cofaces without recomputing the
decomposition, verified against a from-scratch oracle.
"""

from .complex import (
    CofaceIndex,
    Filtration,
    FiltrationError,
    Simplex,
    build_coface_index,
    facets,
    format_filtration,
    parse_filtration,
    sdim,
    simplex,
    star,
    validate_filtration,
)
from .generate import (
    GenSpec,
    PointCloud,
    erdos_renyi_filtration,
    generate,
    lower_star_filtration,
    random_point_cloud,
    random_tree,
    shuffled_filtration,
    split_seed,
    vietoris_rips,
)
from .matrix import (
    BoundaryMatrix,
    add_column,
    boundary_matrix,
    format_phat,
    matrix_product_check,
    parse_phat,
    pivot,
)
from .reduce import (
    Barcode,
    Decomposition,
    ReductionStats,
    barcode_csv,
    extract_barcode,
    finalize_flags,
    lower_left_rank,
    record_addition,
    sba_reduce,
    stats_csv,
)
from .update import (
    DecompositionError,
    RemovalEntry,
    RemovalReport,
    delete_row,
    esmur_fix,
    mur_remove,
    remove_positive_column,
    removal_report_csv,
    smur_fix,
    support_set,
)
from .verify import (
    FuzzSummary,
    ModeStats,
    OracleResult,
    bar_multiset,
    check_rank_criterion,
    check_removal,
    classify_maximal_delta,
    fuzz_removals,
    is_reduced,
    maximal_positions,
    oracle_barcode,
    oracle_reduction,
    residual_filtration,
    summary_csv,
    v_full_rank,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Simplex",
    "FiltrationError",
    "Filtration",
    "CofaceIndex",
    "simplex",
    "sdim",
    "facets",
    "validate_filtration",
    "build_coface_index",
    "star",
    "parse_filtration",
    "format_filtration",
    "BoundaryMatrix",
    "add_column",
    "pivot",
    "boundary_matrix",
    "matrix_product_check",
    "format_phat",
    "parse_phat",
    "Decomposition",
    "Barcode",
    "ReductionStats",
    "sba_reduce",
    "record_addition",
    "finalize_flags",
    "extract_barcode",
    "lower_left_rank",
    "barcode_csv",
    "stats_csv",
    "DecompositionError",
    "RemovalEntry",
    "RemovalReport",
    "support_set",
    "smur_fix",
    "esmur_fix",
    "remove_positive_column",
    "delete_row",
    "mur_remove",
    "removal_report_csv",
    "GenSpec",
    "PointCloud",
    "split_seed",
    "random_point_cloud",
    "vietoris_rips",
    "erdos_renyi_filtration",
    "shuffled_filtration",
    "lower_star_filtration",
    "random_tree",
    "generate",
    "OracleResult",
    "ModeStats",
    "FuzzSummary",
    "bar_multiset",
    "residual_filtration",
    "oracle_reduction",
    "oracle_barcode",
    "is_reduced",
    "v_full_rank",
    "check_removal",
    "check_rank_criterion",
    "maximal_positions",
    "classify_maximal_delta",
    "fuzz_removals",
    "summary_csv",
]
