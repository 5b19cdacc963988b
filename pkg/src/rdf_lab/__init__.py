"""Numerical laboratory for Rubio de Francia type band-pass operators on
Triebel-Lizorkin, Besov, BMO and Hoelder scales, on a periodic grid."""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    DegenerateWindow,
    GridMismatch,
    InvalidArgument,
    NumericalInconsistency,
    OutOfBandError,
    RdfLabError,
    UnsupportedDegree,
)
from .grid import (
    GridSpec,
    Signal,
    Spectrum,
    evaluate_spectrum,
    forward_transform,
    inverse_transform,
    lp_norm,
    make_grid,
    modulate,
    shift_bins,
)
from .maximal import DyadicIntervalSet, MaximalParams, best_poly_residual, csp_norm, sharp_maximal
from .norms import (
    BESOV,
    TRIEBEL_LIZORKIN,
    NormReport,
    SpaceParams,
    besov_norm,
    bmo_l2_norm,
    holder_seminorm,
    space_norm,
    tl_norm,
)
from .operators import (
    SignalCollection,
    band_project,
    lp_blocks,
    rdf_plain,
    rdf_rotated,
    rdf_square,
)
from .windows import (
    BumpWindow,
    DyadicUnity,
    FreqInterval,
    IntervalFamily,
    is_nondegenerate,
    kernel_l1_norm,
    make_base_window,
    make_dyadic_unity,
    phi_moment_zero,
    phi_primitive,
    scale_to_interval,
    vanishing_scan,
)

__all__ = [
    "BESOV",
    "BumpWindow",
    "ConfigError",
    "DegenerateWindow",
    "DyadicIntervalSet",
    "DyadicUnity",
    "FreqInterval",
    "GridMismatch",
    "GridSpec",
    "IntervalFamily",
    "InvalidArgument",
    "MaximalParams",
    "NormReport",
    "NumericalInconsistency",
    "OutOfBandError",
    "RdfLabError",
    "Signal",
    "SignalCollection",
    "SpaceParams",
    "Spectrum",
    "TRIEBEL_LIZORKIN",
    "UnsupportedDegree",
    "band_project",
    "best_poly_residual",
    "besov_norm",
    "bmo_l2_norm",
    "csp_norm",
    "evaluate_spectrum",
    "forward_transform",
    "holder_seminorm",
    "inverse_transform",
    "is_nondegenerate",
    "kernel_l1_norm",
    "lp_blocks",
    "lp_norm",
    "make_base_window",
    "make_dyadic_unity",
    "make_grid",
    "modulate",
    "phi_moment_zero",
    "phi_primitive",
    "rdf_plain",
    "rdf_rotated",
    "rdf_square",
    "scale_to_interval",
    "sharp_maximal",
    "shift_bins",
    "space_norm",
    "tl_norm",
    "vanishing_scan",
]
