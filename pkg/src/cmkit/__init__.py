"""Exact Frobenius and motivic invariants of powers of ordinary CM elliptic curves."""

from .algebra import IntPoly, RatSeries, composed_product, root_multiplicity, series_log_zeta
from .curves import (
    CurveDescriptor,
    EllipticCurveData,
    abstract_curve,
    base_change,
    classify,
    closed_point_counts,
    curve_validate,
    descriptor,
    elliptic_curve,
    point_count,
    projective_line,
)
from .errors import CMKitError, NoMatch
from .gf import GFElement, PrimePowerField, gf_make
from .motive import (
    Kind,
    MotiveSummand,
    SummandMultiset,
    ZetaFunction,
    assemble_zeta,
    cm_tensor_decompose,
    kunneth,
    match_decompositions,
    summand_charpoly,
)
from .quadfield import QuadElement, QuadField, WeilNumber, padic_valuations, verify_lemma62, weil_enumerate
from .ranks import bb_rank, hom_rank, l_cohomological, l_euler_check, picard_number, tate_class_dim

__version__ = "0.1.0"

__all__ = [
    "IntPoly",
    "RatSeries",
    "composed_product",
    "root_multiplicity",
    "series_log_zeta",
    "CurveDescriptor",
    "EllipticCurveData",
    "abstract_curve",
    "base_change",
    "classify",
    "closed_point_counts",
    "curve_validate",
    "descriptor",
    "elliptic_curve",
    "point_count",
    "projective_line",
    "CMKitError",
    "NoMatch",
    "GFElement",
    "PrimePowerField",
    "gf_make",
    "Kind",
    "MotiveSummand",
    "SummandMultiset",
    "ZetaFunction",
    "assemble_zeta",
    "cm_tensor_decompose",
    "kunneth",
    "match_decompositions",
    "summand_charpoly",
    "QuadElement",
    "QuadField",
    "WeilNumber",
    "padic_valuations",
    "verify_lemma62",
    "weil_enumerate",
    "bb_rank",
    "hom_rank",
    "l_cohomological",
    "l_euler_check",
    "picard_number",
    "tate_class_dim",
]
