"""Exact and certified computations around the quotients zeta(n+1)/zeta(n)."""

from .errfloat import ErrFloat
from .exact import bernoulli, binomial, diff_monomial, harmonic, sf, stirling, tangent_number
from .modular import (
    ModPoly,
    deriv_congruence_check,
    diff_xp_check,
    eisenstein_check,
    fac_p1_check,
    irreducible_mod_p,
    kummer_check,
    eisenstein_suite,
    witness_scan,
)
from .numerics import (
    ComplexArg,
    L_eval,
    h_neg,
    l_integral_oracle,
    l_value,
    lstar_eval,
    quotient_ratio,
    zeta_int,
    zeta_quotient,
)
from .poly import IntPoly, RatPoly
from .polycalc import (
    build_p,
    build_q,
    fh_poly,
    fs_poly,
    lambda_poly,
    poly_derivative,
    poly_eval,
    quotient_combination_poly,
)

__version__ = "0.1.0"

__all__ = [
    "ComplexArg",
    "ErrFloat",
    "IntPoly",
    "L_eval",
    "ModPoly",
    "RatPoly",
    "bernoulli",
    "binomial",
    "build_p",
    "build_q",
    "deriv_congruence_check",
    "diff_monomial",
    "diff_xp_check",
    "eisenstein_check",
    "eisenstein_suite",
    "fac_p1_check",
    "fh_poly",
    "fs_poly",
    "h_neg",
    "harmonic",
    "irreducible_mod_p",
    "kummer_check",
    "l_integral_oracle",
    "l_value",
    "lambda_poly",
    "lstar_eval",
    "poly_derivative",
    "poly_eval",
    "quotient_combination_poly",
    "quotient_ratio",
    "sf",
    "stirling",
    "tangent_number",
    "witness_scan",
    "zeta_int",
    "zeta_quotient",
]
