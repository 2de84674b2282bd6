"""Exact fixed-domain curve counts for point blow-ups of projective space.

Three independent engines compute the same counts: closed-form binomial sums,
symbolic integration over Jacobian x symmetric-product factors, and quantum
cohomology coefficient extraction; a cross-check harness asserts their
agreement on parameter grids.
"""

from .core import (
    CurveClass,
    MalformedClass,
    NotBalanced,
    Problem,
    RegimeReport,
    RegimeViolation,
    SaeStatus,
    regime_report,
    sae_status,
    validate,
)
from .closedform import tev_genus0, tev_l1, tev_p1, tev_r2_l2, vtev_l1, vtev_pr
from .exactmath import QPoly, binom_gen, multinom
from .grr import abcd_integral, tev_grr, tev_residue_l1
from .qh import (
    euler_class_closed,
    euler_class_from_definition,
    qh_coeff_lemma_check,
    vtev_qh,
)

__version__ = "0.1.0"

__all__ = [
    "CurveClass",
    "MalformedClass",
    "NotBalanced",
    "Problem",
    "QPoly",
    "RegimeReport",
    "RegimeViolation",
    "SaeStatus",
    "abcd_integral",
    "binom_gen",
    "euler_class_closed",
    "euler_class_from_definition",
    "multinom",
    "qh_coeff_lemma_check",
    "regime_report",
    "sae_status",
    "tev_genus0",
    "tev_grr",
    "tev_l1",
    "tev_p1",
    "tev_r2_l2",
    "tev_residue_l1",
    "validate",
    "vtev_l1",
    "vtev_pr",
    "vtev_qh",
]
