"""Exact isotropic-constant analysis of simplicial polytopes."""

from .errors import IsoptopeError
from .extremality import (
    FocResidual,
    HingeReport,
    HingeSpec,
    dvol_dt,
    facet_second_moment,
    foc_residuals,
    hinge_derivative,
    hinge_derivative_fd,
    hinge_polytope,
)
from .hull import facet_enumeration, vertex_enumeration
from .isotropy import (
    IsotropicReport,
    isotropic_constant,
    isotropic_constant_pow2d,
    isotropic_position,
    m2_identity_lhs,
    regular_simplex_isotropic,
)
from .optimize import AscentConfig, AscentTrace, ascend, report_extremality
from .polytope import (
    MomentData,
    PolytopeH,
    PolytopeV,
    Simplex,
    contains,
    envelopes,
    load_polytope_json,
    moments,
    polytope_to_obj,
    simplex_moments,
    to_halfspaces,
    triangulate,
    validate,
)
from .sample import (
    Estimate,
    RngSeed,
    m2_estimate,
    sample_facet_density,
    sample_uniform,
    shaken_map_sample,
)
from .symmetry import (
    CongruenceReport,
    ReflectionCheck,
    ShakeResult,
    all_reflection_checks,
    double_cone_check,
    isohedrality_check,
    reflection_check,
    shake,
)

__version__ = "0.1.0"

__all__ = [
    "AscentConfig",
    "AscentTrace",
    "CongruenceReport",
    "Estimate",
    "FocResidual",
    "HingeReport",
    "HingeSpec",
    "IsotropicReport",
    "IsoptopeError",
    "MomentData",
    "PolytopeH",
    "PolytopeV",
    "ReflectionCheck",
    "RngSeed",
    "ShakeResult",
    "Simplex",
    "all_reflection_checks",
    "ascend",
    "contains",
    "double_cone_check",
    "dvol_dt",
    "envelopes",
    "facet_enumeration",
    "facet_second_moment",
    "foc_residuals",
    "hinge_derivative",
    "hinge_derivative_fd",
    "hinge_polytope",
    "isohedrality_check",
    "isotropic_constant",
    "isotropic_constant_pow2d",
    "isotropic_position",
    "load_polytope_json",
    "m2_estimate",
    "m2_identity_lhs",
    "moments",
    "polytope_to_obj",
    "reflection_check",
    "regular_simplex_isotropic",
    "report_extremality",
    "sample_facet_density",
    "sample_uniform",
    "shake",
    "shaken_map_sample",
    "simplex_moments",
    "to_halfspaces",
    "triangulate",
    "validate",
    "vertex_enumeration",
]
