"""Critical points of the Green function on flat tori.

Theta and Weierstrass functions, the three-or-five criterion, a brute-force
counter, the anti-holomorphic map whose fixed points are the critical points,
and the tau-plane and Julia renderers.
"""
from .dynamics import (
    FixedPointInfo,
    OrbitSummary,
    RasterImage,
    basin_points,
    critical_orbits,
    fixed_points,
    g_map,
    render_julia,
)
from .elliptic import EllipticContext, build_context, legendre_residual, wp, zeta, zeta_and_wp
from .estimators import CriticalPointClassifier, JuliaRenderer, TorusGreenCriticalPoints
from .exceptions import (
    BoundaryWarning,
    DegenerateCriterion,
    DegenerateLattice,
    NoConvergence,
    OracleInconclusive,
    PoleInput,
    PrecisionLoss,
    RootNotBracketed,
    SingularNewton,
    TorusGreenError,
    TorusGreenWarning,
)
from .green import (
    CriterionReport,
    CriticalPoint,
    GreenCoefficients,
    coefficients,
    count_oracle,
    criterion,
    field_F,
    find_critical_points,
    green_value,
    multiplier_modulus,
)
from .io import parse_complex, format_complex, write_image
from .lattice import Lattice, from_tau, make_lattice, modular_apply, reduce_mod_lattice
from .ninth import NinthReport, solve_lambda
from .region import RegionScan, boundary_scan_halfline, render_region
from .theta import ThetaConstants, theta, theta_constants

__version__ = "0.1.0"

__all__ = [
    "FixedPointInfo",
    "OrbitSummary",
    "RasterImage",
    "basin_points",
    "critical_orbits",
    "fixed_points",
    "g_map",
    "render_julia",
    "EllipticContext",
    "build_context",
    "legendre_residual",
    "wp",
    "zeta",
    "zeta_and_wp",
    "CriticalPointClassifier",
    "JuliaRenderer",
    "TorusGreenCriticalPoints",
    "BoundaryWarning",
    "DegenerateCriterion",
    "DegenerateLattice",
    "NoConvergence",
    "OracleInconclusive",
    "PoleInput",
    "PrecisionLoss",
    "RootNotBracketed",
    "SingularNewton",
    "TorusGreenError",
    "TorusGreenWarning",
    "CriterionReport",
    "CriticalPoint",
    "GreenCoefficients",
    "coefficients",
    "count_oracle",
    "criterion",
    "field_F",
    "find_critical_points",
    "green_value",
    "multiplier_modulus",
    "parse_complex",
    "format_complex",
    "write_image",
    "Lattice",
    "from_tau",
    "make_lattice",
    "modular_apply",
    "reduce_mod_lattice",
    "NinthReport",
    "solve_lambda",
    "RegionScan",
    "boundary_scan_halfline",
    "render_region",
    "ThetaConstants",
    "theta",
    "theta_constants",
]
