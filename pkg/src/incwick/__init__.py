"""Exact combinatorics of incomplete posets and Wick (Kailath-Segall) products."""

from .exact import Poly, Series, solve_state_gf
from .poset import FinitePoset, check_product_hypothesis
from .gamma import (
    Gamma,
    Mode,
    FREE,
    COMMUTATIVE,
    TRACIAL,
    indicator_mode,
    projection_mode,
    partitioned_E,
    pattern_E,
    contraction,
)
from .wick import (
    Report,
    WickSpace,
    verify_monomial,
    verify_inversion,
    verify_product,
    verify_weighted_iprm,
    verify_commutative_iprm_rewrite,
    verify_adjoint,
    verify_traciality,
    verify_positivity,
    state_phi,
    state_closed_sum,
    cumulant,
)
from .meixner import (
    motzkin_poly,
    coeff_C,
    kappa,
    omega,
    meixner_moment,
    inner_product,
    inversion_coeffs,
    compute_T,
    q_counterexample,
)
from . import families, counting

__all__ = [
    "Poly", "Series", "solve_state_gf",
    "FinitePoset", "check_product_hypothesis",
    "Gamma", "Mode", "FREE", "COMMUTATIVE", "TRACIAL",
    "indicator_mode", "projection_mode",
    "partitioned_E", "pattern_E", "contraction",
    "Report", "WickSpace",
    "verify_monomial", "verify_inversion", "verify_product",
    "verify_weighted_iprm", "verify_commutative_iprm_rewrite",
    "verify_adjoint", "verify_traciality", "verify_positivity",
    "state_phi", "state_closed_sum", "cumulant",
    "motzkin_poly", "coeff_C", "kappa", "omega",
    "meixner_moment", "inner_product", "inversion_coeffs",
    "compute_T", "q_counterexample",
    "families", "counting",
]
