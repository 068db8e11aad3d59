"""Spectrum localization for complex matrices.

Builds the order-k curves that bound the spectrum from the k largest
eigenvalues of the Hermitian part, intersects their rotations into envelope
regions, computes the numerical range and rank numerical ranges, and emits
figures and machine-readable region data.
"""

from .linalg import (
    DimensionError,
    HermitianEigenDecomposition,
    ParameterError,
    ShapeError,
    adjugate,
    as_matrix,
    determinant,
    eig_hermitian,
    hermitian_part,
    largest_singular_value_sq,
    lambda_extreme_hermitian,
    max_abs,
    skew_part,
)
from .frame import FrameCache, SpectralFrame, build_frame, build_frames, rotation_spectra, w_matrix
from .inequality import (
    CrossingCondition,
    IneqValue,
    crossing_condition,
    cubic_g1,
    explicit_g2,
    g_field,
    g_min_value,
    g_value,
    g1_constants,
    g2_constants,
    mk_matrix,
    union_poly_value,
)
from .trace import (
    CurveSet,
    Window,
    auto_window,
    clip_polyline,
    gamma_curve,
    gamma_min_curve,
    hyperbola_set,
    point_in_polygon,
    trace_implicit,
)
from .envelope import (
    RegionRaster,
    envelope_margins,
    envelope_member_mask,
    envelope_membership,
    envelope_raster,
    membership_tolerance,
    numerical_range_boundary,
    rank_numrange_raster,
    theta_grid,
)
from .gallery import (
    GALLERY,
    DiagonalCaseReport,
    MatrixSpec,
    build_matrix,
    diagonal_case_report,
    diagonal_gamma_prediction,
    epsilon_thresholds,
    gallery_entries,
    region_index,
    s_pm,
    simultaneous_merge_deltas,
    splitmix64_uniforms,
)
from .fileio import (
    MatrixFileError,
    curves_csv,
    parse_matrix_file,
    svg_document,
    write_curves_csv,
    write_json_report,
    write_pgm,
    write_svg,
)
from .cli import RunConfig, main, run

__version__ = "0.1.0"

__all__ = [
    "DimensionError",
    "ShapeError",
    "ParameterError",
    "MatrixFileError",
    "HermitianEigenDecomposition",
    "SpectralFrame",
    "FrameCache",
    "IneqValue",
    "CrossingCondition",
    "Window",
    "CurveSet",
    "RegionRaster",
    "MatrixSpec",
    "DiagonalCaseReport",
    "GALLERY",
    "as_matrix",
    "max_abs",
    "hermitian_part",
    "skew_part",
    "eig_hermitian",
    "adjugate",
    "determinant",
    "largest_singular_value_sq",
    "lambda_extreme_hermitian",
    "build_frame",
    "build_frames",
    "rotation_spectra",
    "w_matrix",
    "mk_matrix",
    "g_value",
    "g_min_value",
    "g_field",
    "cubic_g1",
    "explicit_g2",
    "g1_constants",
    "g2_constants",
    "union_poly_value",
    "crossing_condition",
    "auto_window",
    "trace_implicit",
    "gamma_curve",
    "gamma_min_curve",
    "hyperbola_set",
    "clip_polyline",
    "point_in_polygon",
    "theta_grid",
    "membership_tolerance",
    "envelope_membership",
    "envelope_member_mask",
    "envelope_margins",
    "envelope_raster",
    "numerical_range_boundary",
    "rank_numrange_raster",
    "build_matrix",
    "gallery_entries",
    "splitmix64_uniforms",
    "epsilon_thresholds",
    "s_pm",
    "region_index",
    "simultaneous_merge_deltas",
    "diagonal_gamma_prediction",
    "diagonal_case_report",
    "parse_matrix_file",
    "svg_document",
    "curves_csv",
    "write_svg",
    "write_curves_csv",
    "write_pgm",
    "write_json_report",
    "RunConfig",
    "run",
    "main",
]
