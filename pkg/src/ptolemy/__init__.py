"""Boundary geometry of the rank-one symmetric spaces over R, C, H and O.

Division-algebra arithmetic, Heisenberg-type boundary groups with their gauge
metric, boundary isometries, cross-ratios, and the Ptolemaean inequality,
with seeded verification campaigns.
"""
from .algebra import Field, KScalar, basis, conj, inverse, modulus, mul, re_triple
from .campaign import SUITES, CampaignConfig, CampaignReport, run_suite, verify_campaign
from .crossratio import (
    CrossRatioTriple,
    Quadruple,
    cross_ratio,
    cross_ratio_from_lifts,
    fundamental_residuals,
    metric_ratio,
    oct_cross_pair,
    oct_inequality_residual,
    symmetry_residuals,
    triple,
)
from .errors import ConfigError, DomainError, NumericalDomainError
from .heisenberg import (
    INF_DIST,
    OctBoundaryPoint,
    dist,
    gauge,
    group_inv,
    group_mul,
    oct_dist,
    oct_group_mul,
    oct_inv,
)
from .hermitian import (
    BoundaryPoint,
    InteriorPoint,
    KVector,
    herm_form,
    hermitian_dot,
    hyperbolic_distance,
    lift,
)
from .inequality import PtolemyReport, RCircle, ptolemy_check, rcircle_point, separation
from .isometry import (
    Dilation,
    Inversion,
    Motion,
    Rotation,
    SpinAction,
    Translation,
    apply,
    normalize_pair,
    random_isometry,
    random_motion,
)

__version__ = "0.1.0"

__all__ = [
    "Field",
    "KScalar",
    "basis",
    "conj",
    "inverse",
    "modulus",
    "mul",
    "re_triple",
    "SUITES",
    "CampaignConfig",
    "CampaignReport",
    "run_suite",
    "verify_campaign",
    "CrossRatioTriple",
    "Quadruple",
    "cross_ratio",
    "cross_ratio_from_lifts",
    "fundamental_residuals",
    "metric_ratio",
    "oct_cross_pair",
    "oct_inequality_residual",
    "symmetry_residuals",
    "triple",
    "ConfigError",
    "DomainError",
    "NumericalDomainError",
    "INF_DIST",
    "OctBoundaryPoint",
    "dist",
    "gauge",
    "group_inv",
    "group_mul",
    "oct_dist",
    "oct_group_mul",
    "oct_inv",
    "BoundaryPoint",
    "InteriorPoint",
    "KVector",
    "herm_form",
    "hermitian_dot",
    "hyperbolic_distance",
    "lift",
    "PtolemyReport",
    "RCircle",
    "ptolemy_check",
    "rcircle_point",
    "separation",
    "Dilation",
    "Inversion",
    "Motion",
    "Rotation",
    "SpinAction",
    "Translation",
    "apply",
    "normalize_pair",
    "random_isometry",
    "random_motion",
]
