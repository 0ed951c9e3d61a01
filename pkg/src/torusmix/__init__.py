"""Exact arithmetic and mixing checks for endomorphisms of tori and their shift extensions."""

from .circle import (
    Arc,
    ArcProduct,
    RationalAngle,
    TorusPoint,
    angle_inv,
    angle_mul,
    angle_pow,
    angle_root,
    arc_contains,
    circle_dist,
    make_angle,
    parse_angle,
    torus_dist,
    torus_inv,
    torus_mul,
)
from .criterion import CriterionReport, TorusSystem, criterion_check
from .empirical import MixingReport, analytic_cover_N, empirical_mixing
from .endo import (
    CirclePower,
    EndoMap,
    ExponentMatrix,
    PermPower,
    Permutation,
    apply,
    as_matrix,
    compose,
    iterate,
    matrix_power,
    orbit_cycles,
)
from .errors import RejectedInput
from .mixing import (
    MixingVerdict,
    RootFamily,
    classify_map,
    classify_perm_power,
    detect_diagonal_degenerate,
    forward_collapse_check,
    orbit_gcds,
    psi_circle,
    psi_perm_power,
    root_family_points,
)
from .product import BaseGroup, FiniteSupportSeq, ShiftExtension, TorusGroup, torus_extension

__version__ = "0.1.0"

__all__ = [
    "analytic_cover_N",
    "angle_inv",
    "angle_mul",
    "angle_pow",
    "angle_root",
    "apply",
    "Arc",
    "arc_contains",
    "ArcProduct",
    "as_matrix",
    "BaseGroup",
    "circle_dist",
    "CirclePower",
    "classify_map",
    "classify_perm_power",
    "compose",
    "criterion_check",
    "CriterionReport",
    "detect_diagonal_degenerate",
    "empirical_mixing",
    "EndoMap",
    "ExponentMatrix",
    "FiniteSupportSeq",
    "forward_collapse_check",
    "iterate",
    "make_angle",
    "matrix_power",
    "MixingReport",
    "MixingVerdict",
    "orbit_cycles",
    "orbit_gcds",
    "parse_angle",
    "PermPower",
    "Permutation",
    "psi_circle",
    "psi_perm_power",
    "RationalAngle",
    "RejectedInput",
    "root_family_points",
    "RootFamily",
    "ShiftExtension",
    "torus_dist",
    "torus_extension",
    "torus_inv",
    "torus_mul",
    "TorusGroup",
    "TorusPoint",
    "TorusSystem",
]
