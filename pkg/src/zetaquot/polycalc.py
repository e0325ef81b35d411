"""Construction of the polynomial families p_n, q_n, lambda_{r,nu}, f_s, f_h.

``build_p`` uses the forward-difference form

    p_n(x) = sum_nu (-1)^nu 2^(n-nu) C(x+nu, nu) Delta^nu (x+1)^n

and ``build_p_lambda`` the independent lambda-polynomial form; the test
suite checks that both agree coefficient by coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from . import exact
from .poly import IntPoly, Poly, RatPoly, falling_factorial_poly

__all__ = [
    "lambda_poly",
    "build_p",
    "build_p_lambda",
    "build_q",
    "q_divisor",
    "poly_derivative",
    "poly_eval",
    "fs_poly",
    "fh_poly",
    "quotient_scale",
    "quotient_combination_poly",
]


@lru_cache(maxsize=None)
def _diff_at_one(m: int, nu: int) -> int:
    return exact.diff_monomial(m, nu, 1)


def _diff_shifted_power(n: int, nu: int) -> IntPoly:
    """Delta^nu (x+1)^n as a polynomial in x."""
    # (x+1+j)^n = sum_i C(n,i) x^i (1+j)^(n-i), so the x^i coefficient is
    # C(n,i) * Delta^nu y^(n-i) at y = 1.
    return IntPoly([comb(n, i) * _diff_at_one(n - i, nu) for i in range(n + 1)])


def lambda_poly(r: int, nu: int) -> IntPoly:
    """lambda_{r,nu} as an integer polynomial of degree r.

    Built from the S2 form  sum_k C(k,nu) S2(r,k) (x)_nu (x+1-nu)_(k-nu),
    which keeps every intermediate in Z[x].
    """
    if r < 1:
        raise ValueError(f"lambda_poly: r must be >= 1, got {r}")
    if nu < 0 or nu > r:
        raise ValueError(f"lambda_poly: need 0 <= nu <= r, got r={r}, nu={nu}")
    head = falling_factorial_poly(0, nu)
    acc = IntPoly()
    for k in range(nu, r + 1):
        c = comb(k, nu) * exact.stirling(2, r, k)
        if c:
            acc = acc + falling_factorial_poly(1 - nu, k - nu) * c
    return head * acc


@lru_cache(maxsize=None)
def build_p(n: int) -> IntPoly:
    """The monic degree-n polynomial p_n."""
    if n < 1:
        raise ValueError(f"build_p: n must be >= 1, got {n}")
    total = IntPoly()
    for nu in range(n + 1):
        # (x+nu)_nu * Delta^nu (x+1)^n, then one checked division by nu!
        prod = falling_factorial_poly(nu, nu) * _diff_shifted_power(n, nu)
        f = factorial(nu)
        coeffs = []
        for c in prod.coeffs:
            q, r = divmod(c, f)
            if r:
                raise ArithmeticError(f"build_p({n}): term nu={nu} not divisible by {nu}!")
            coeffs.append(q)
        sign = -1 if nu % 2 else 1
        total = total + IntPoly(coeffs) * (sign * 2 ** (n - nu))
    return total


def build_p_lambda(n: int) -> IntPoly:
    """p_n via sum_nu (-1)^nu 2^(n-nu) lambda_{n,nu}(x + nu)."""
    if n < 1:
        raise ValueError(f"build_p_lambda: n must be >= 1, got {n}")
    total = IntPoly()
    for nu in range(n + 1):
        sign = -1 if nu % 2 else 1
        total = total + lambda_poly(n, nu).shift(nu) * (sign * 2 ** (n - nu))
    return total


def q_divisor(n: int) -> IntPoly:
    """(x+1)^2 for odd n, x(x+1) for even n."""
    return IntPoly([1, 2, 1]) if n % 2 else IntPoly([0, 1, 1])


@lru_cache(maxsize=None)
def build_q(n: int) -> IntPoly:
    if n < 3:
        raise ValueError(f"build_q: n must be >= 3, got {n}")
    # a remainder here means build_p is wrong; exact_div raises
    return build_p(n).exact_div(q_divisor(n))


def poly_derivative(f: Poly, k: int = 1) -> Poly:
    if k < 1:
        raise ValueError(f"poly_derivative: k must be >= 1, got {k}")
    return f.derivative(k)


def poly_eval(f: Poly, x) -> Fraction:
    return Fraction(f(Fraction(x)))


def fs_poly(n: int) -> RatPoly:
    if n < 1:
        raise ValueError(f"fs_poly: n must be >= 1, got {n}")
    return RatPoly([0] + [exact.sf(n, v) for v in range(1, n + 1)])


def fh_poly(n: int) -> RatPoly:
    if n < 1:
        raise ValueError(f"fh_poly: n must be >= 1, got {n}")
    return RatPoly([0] + [exact.sf(n, v) * exact.harmonic(v) for v in range(1, n + 1)])


def quotient_scale(n: int) -> Fraction:
    """1 / (2^(n-1) (2^(n+1) - 1) B_n), the factor with zeta(n+1)/zeta(n) = c * L*(p_n)."""
    if n < 2 or n % 2:
        raise ValueError(f"quotient_scale: n must be even and >= 2, got {n}")
    return 1 / (2 ** (n - 1) * (2 ** (n + 1) - 1) * exact.bernoulli(n))


def quotient_combination_poly(terms: Sequence[tuple[Fraction | int, int]]) -> RatPoly:
    """Polynomial P with L*(P) = sum_j alpha_j zeta(n_j+1)/zeta(n_j).

    ``terms`` is a list of (alpha_j, n_j) with nonzero rational alpha_j and
    strictly increasing even n_j >= 2.
    """
    if not terms:
        raise ValueError("quotient_combination_poly: empty term list")
    prev = 0
    out = RatPoly()
    for alpha, n in terms:
        alpha = Fraction(alpha)
        if not alpha:
            raise ValueError("quotient_combination_poly: zero coefficient")
        if n < 2 or n % 2:
            raise ValueError(f"quotient_combination_poly: n_j must be even >= 2, got {n}")
        if n <= prev:
            raise ValueError("quotient_combination_poly: n_j must be strictly increasing")
        prev = n
        out = out + build_p(n).to_rat() * (alpha * quotient_scale(n))
    return out
