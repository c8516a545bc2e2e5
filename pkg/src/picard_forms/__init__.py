"""Exact computer algebra for regular 1-forms on projected surfaces.

Solve the Picard relation A f_x + B f_y + C f_z = N f under adjointness
constraints, measure closedness through the integrability defect, verify the
syzygy lemma for nodal plane curves and the Zeuthen-Segre count, and probe
characteristic-p failure of closedness.  All arithmetic is exact.
"""

from .adjoint import (
    AdjointSpace,
    GralResult,
    HomogeneousSolution,
    PicardSolution,
    PicardSolutionSpace,
    SeveriReport,
    adjoint_space,
    chart_identity_check,
    complete_triple,
    gral_solve,
    homogenize_solution,
    integrability_defect,
    is_solution,
    picard_residual,
    severi_structure_check,
    solve_picard,
)
from .errors import WorkbenchError
from .fields import Field
from .invariants import ScanConfig, analyze_surface, charp_scan, p_g, q_an, verify_witness
from .linalg import (
    CoeffMatrix,
    IdentityTerm,
    LinearIdentity,
    NullspaceBasis,
    UnknownBlock,
    coefficient_matrix,
    nullspace_basis,
)
from .plane_lemma import PlaneCurve, castelnuovo_check, load_plane_curve, syzygy_space
from .poly import (
    NEG_DEGREE,
    Polynomial,
    apply_substitution,
    dehomogenize,
    euler_residual,
    format_polynomial,
    homogenize,
    parse_polynomial,
    random_coordinate_change,
)
from .surface import (
    PencilData,
    SurfaceModel,
    jacobian_count,
    load_surface,
    pencil_data,
    randomized_variant,
    reduce_mod_p,
    zeuthen_segre_formula,
)

__version__ = "0.1.0"

__all__ = [
    "AdjointSpace",
    "CoeffMatrix",
    "Field",
    "GralResult",
    "HomogeneousSolution",
    "IdentityTerm",
    "LinearIdentity",
    "NEG_DEGREE",
    "NullspaceBasis",
    "PencilData",
    "PicardSolution",
    "PicardSolutionSpace",
    "PlaneCurve",
    "Polynomial",
    "ScanConfig",
    "SeveriReport",
    "SurfaceModel",
    "UnknownBlock",
    "WorkbenchError",
    "adjoint_space",
    "analyze_surface",
    "apply_substitution",
    "castelnuovo_check",
    "charp_scan",
    "chart_identity_check",
    "coefficient_matrix",
    "complete_triple",
    "dehomogenize",
    "euler_residual",
    "format_polynomial",
    "gral_solve",
    "homogenize",
    "homogenize_solution",
    "integrability_defect",
    "is_solution",
    "jacobian_count",
    "load_plane_curve",
    "load_surface",
    "nullspace_basis",
    "p_g",
    "parse_polynomial",
    "pencil_data",
    "picard_residual",
    "q_an",
    "random_coordinate_change",
    "randomized_variant",
    "reduce_mod_p",
    "severi_structure_check",
    "solve_picard",
    "syzygy_space",
    "verify_witness",
    "zeuthen_segre_formula",
]
