"""Morse-Novikov bookkeeping for closed braids, Murasugi sums, and argument maps."""

from .braid import (
    Braidword,
    BraidInputError,
    NonStrictWordError,
    inhomogeneity,
    is_strict,
    minimize_inhomogeneity,
    mn_upper_bound,
    parse_braidword,
    rewrite_neighbors,
)
from .laurent import LaurentPoly
from .surface import (
    HandleDecomposition,
    SeifertMatrix,
    alexander_from_seifert,
    alexander_via_burau,
    boundary_components,
    seifert_from_braid,
    seifert_matrix_from_braid,
)
from .murasugi import (
    LeafAnnulus,
    LeafBraid,
    LeafDisk,
    Plumb,
    SeifertMatrixBundle,
    Twist,
    deplumb_braid_surface,
    doubled_knot,
    eval_expr,
    plumb_matrices,
    propagate_free,
    propagate_mn,
    twist_knot,
    twist_matrix,
)
from .argmap import (
    BivariateMero,
    CritPoint,
    RationalMap,
    SolverConfig,
    check_link_radius,
    crit_points_arg_rational,
    crit_points_milnor,
    dependence_residual,
    morse_index,
    morse_pairing_flags,
    plumbing_model_map,
    rational_map,
    scan_residual_grid,
    torus_link_map,
    unlink_quadratic_map,
)

__version__ = "0.1.0"

__all__ = [
    "Braidword",
    "BraidInputError",
    "NonStrictWordError",
    "inhomogeneity",
    "is_strict",
    "minimize_inhomogeneity",
    "mn_upper_bound",
    "parse_braidword",
    "rewrite_neighbors",
    "LaurentPoly",
    "HandleDecomposition",
    "SeifertMatrix",
    "alexander_from_seifert",
    "alexander_via_burau",
    "boundary_components",
    "seifert_from_braid",
    "seifert_matrix_from_braid",
    "LeafAnnulus",
    "LeafBraid",
    "LeafDisk",
    "Plumb",
    "SeifertMatrixBundle",
    "Twist",
    "deplumb_braid_surface",
    "doubled_knot",
    "eval_expr",
    "plumb_matrices",
    "propagate_free",
    "propagate_mn",
    "twist_knot",
    "twist_matrix",
    "BivariateMero",
    "CritPoint",
    "RationalMap",
    "SolverConfig",
    "check_link_radius",
    "crit_points_arg_rational",
    "crit_points_milnor",
    "dependence_residual",
    "morse_index",
    "morse_pairing_flags",
    "plumbing_model_map",
    "rational_map",
    "scan_residual_grid",
    "torus_link_map",
    "unlink_quadratic_map",
]
