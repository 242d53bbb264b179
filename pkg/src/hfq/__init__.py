"""Exact arithmetic for Hankel-matrix kernels, additive character sums, and
short-interval representation variance over F_q[T]."""

__version__ = "0.1.0"

from .field import CycInt, FieldCtx, ctx_new
from .hankel import (
    CharPolys,
    HankelView,
    Profile,
    Seq,
    bijection_inverse,
    bijection_map,
    census_enumerate,
    census_formula,
    census_formula_total,
    char_polys,
    kernel_basis,
    odot,
    profile,
    rank,
    reduction_profile,
    reduction_strict_class,
    rhopi_form,
    seq_extend,
    toeplitz_mat,
)
from .polyring import NEG_INF, Poly, gcd, phi, rad, factor, xgcd
from .charsum import (
    QuadSumResult,
    magsq_via_profile,
    quad_sum_all,
    quad_sum_monic,
    variance_charsum,
)
from .variance import (
    ThmParams,
    VarianceReport,
    case_classify,
    f_bound,
    f_formula,
    interval_sum,
    kernel_sum_identity,
    m_factor,
    mean_formula,
    s_count,
    theorem_predict,
    variance_bruteforce,
    w_sum_identity,
)
from .analytic import PhiSumReport, convergence_report, phi_ratio_sum, phi_slope

__all__ = [
    "CycInt",
    "FieldCtx",
    "ctx_new",
    "CharPolys",
    "HankelView",
    "Profile",
    "Seq",
    "bijection_inverse",
    "bijection_map",
    "census_enumerate",
    "census_formula",
    "census_formula_total",
    "char_polys",
    "kernel_basis",
    "odot",
    "profile",
    "rank",
    "reduction_profile",
    "reduction_strict_class",
    "rhopi_form",
    "seq_extend",
    "toeplitz_mat",
    "NEG_INF",
    "Poly",
    "gcd",
    "phi",
    "rad",
    "factor",
    "xgcd",
    "QuadSumResult",
    "magsq_via_profile",
    "quad_sum_all",
    "quad_sum_monic",
    "variance_charsum",
    "ThmParams",
    "VarianceReport",
    "case_classify",
    "f_bound",
    "f_formula",
    "interval_sum",
    "kernel_sum_identity",
    "m_factor",
    "mean_formula",
    "s_count",
    "theorem_predict",
    "variance_bruteforce",
    "w_sum_identity",
    "PhiSumReport",
    "convergence_report",
    "phi_ratio_sum",
    "phi_slope",
]
