"""Certified evaluation of l_n, L(s), the functional L*, and zeta(m).

The coefficients l_n = (-1)^(n+1) Delta^n log x |_(x=1) are alternating
binomial sums with ~n bits of cancellation.  They are computed in exact
integer arithmetic on a fixed-point table of logarithms:

    L_j = round(log(j) * 2^W),   |L_j - log(j) 2^W| <= 1.

Every linear combination of the L_j is then exact, and its error is the
1-norm of the combination's coefficients (2^n - 1 for l_n).  The only
floating-point trust placed in mpmath is that ``log``, ``exp``, ``cos``,
``sin`` and ``pi`` are accurate to a few ulps at the requested precision;
the guard bits used below are far larger than that.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, factorial, log2

import mpmath
from scipy import integrate

from .errfloat import ErrFloat, to_fraction
from .poly import IntPoly, Poly, RatPoly
from . import exact, polycalc

__all__ = [
    "ComplexArg",
    "l_value",
    "l_values",
    "a_fixed",
    "l_integral_oracle",
    "L_eval",
    "lstar_eval",
    "zeta_int",
    "h_neg",
    "zeta_quotient",
    "quotient_ratio",
    "log_pi_half",
    "log2_value",
]

# log 2 = 0.693147..., used only in tail bounds
LOG2_UPPER = Fraction(6932, 10000)

# Euler-Maclaurin is used for zeta(m) when the plain series would need more terms
DIRECT_MAX_TERMS = 20000


@dataclass(frozen=True)
class ComplexArg:
    re: float
    im: float = 0.0

    @classmethod
    def coerce(cls, s) -> "ComplexArg":
        if isinstance(s, ComplexArg):
            return s
        z = complex(s)
        return cls(z.real, z.imag)


# -- fixed-point logarithms ----------------------------------------------------

_log_lock = threading.Lock()
_log_cache: dict[int, list[int]] = {}


def _fixed_logs(n: int, bits: int) -> list[int]:
    """[0, L_1, ..., L_n] with L_j = round(log(j) 2^bits), error <= 1 unit."""
    table = _log_cache.get(bits)
    if table is not None and len(table) > n:
        return table
    with _log_lock:
        table = list(_log_cache.get(bits, [0, 0]))
        with mpmath.workprec(bits + 32):
            scale = mpmath.ldexp(1, bits)
            for j in range(len(table), n + 1):
                table.append(int(mpmath.nint(mpmath.log(j) * scale)))
        _log_cache[bits] = table
    return table


def _l_fixed(n: int, bits: int) -> int:
    """l_n * 2^bits up to an error of 2^n - 1 units, by the binomial sum."""
    logs = _fixed_logs(n + 1, bits)
    acc = 0
    for v in range(1, n + 1):
        term = comb(n, v) * logs[v + 1]
        acc += term if v % 2 else -term
    return acc


def a_fixed(n_max: int, bits: int) -> list[int]:
    """[_, X_1, ..., X_{n_max}] with X_k ~ l_k 2^bits (error <= 2^k - 1 units).

    Uses the forward-difference table; integer arithmetic makes the result
    identical to the binomial sums of :func:`_l_fixed`.
    """
    logs = _fixed_logs(n_max + 1, bits)
    row = logs[1 : n_max + 2]
    out = [0]
    for k in range(1, n_max + 1):
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
        out.append(row[0] if k % 2 else -row[0])
    return out


# -- l_n ----------------------------------------------------------------------


def l_value(n: int, prec: int = 256) -> ErrFloat:
    """l_n with abs_err <= 2^-prec."""
    if n < 1:
        raise ValueError(f"l_value: n must be >= 1, got {n}")
    bits = prec + n + 32
    x = _l_fixed(n, bits)
    return ErrFloat.from_fraction(Fraction(x, 1 << bits), Fraction((1 << n) - 1, 1 << bits), prec + 16)


def l_values(n_max: int, prec: int = 256) -> list[ErrFloat]:
    """[l_1, ..., l_{n_max}], each with abs_err <= 2^-prec."""
    bits = prec + n_max + 32
    xs = a_fixed(n_max, bits)
    den = 1 << bits
    return [ErrFloat.from_fraction(Fraction(xs[k], den), Fraction((1 << k) - 1, den), prec + 16) for k in range(1, n_max + 1)]


def l_integral_oracle(n: int, tol: float = 1e-15) -> float:
    """l_n = (1/n) int_0^1 dt / prod_{k<=n} (1 + t/k), by adaptive quadrature.

    Not certified; only for cross-checks.
    """
    if n < 1:
        raise ValueError(f"l_integral_oracle: n must be >= 1, got {n}")

    def integrand(t):
        p = 1.0
        for k in range(1, n + 1):
            p *= 1.0 + t / k
        return 1.0 / p

    # relative tolerance near machine epsilon only triggers roundoff warnings
    val, _ = integrate.quad(integrand, 0.0, 1.0, epsabs=tol, epsrel=1e-13, limit=200)
    return val / n


# -- tail bounds --------------------------------------------------------------


def _tail_bound(n: int, d, scale: Fraction) -> Fraction:
    """Upper bound for sum_{k>n} scale * log2 * k^(d-1) * 2^-k.

    Needs n >= 4(d - 1) so consecutive terms shrink by at least 3/4.
    ``d`` may be a non-integer; then k^(d-1) is bounded with mpmath and
    doubled for safety.
    """
    k = n + 1
    if isinstance(d, int) or (isinstance(d, Fraction) and d.denominator == 1):
        power = Fraction(k) ** int(d - 1)
    else:
        with mpmath.workprec(64):
            power = to_fraction(mpmath.power(k, float(d) - 1)) * 2
    return 4 * LOG2_UPPER * scale * power / (1 << k)


def _truncation_index(d, scale: Fraction, prec: int) -> int:
    target = Fraction(1, 1 << (prec + 2))
    n = max(4 * (ceil(d) + 1), 1)
    if _tail_bound(n, d, scale) <= target:
        return n
    step = 16
    while _tail_bound(n + step, d, scale) > target:
        n += step
    while _tail_bound(n, d, scale) > target:
        n += 1
    return n


# -- L* -----------------------------------------------------------------------


def lstar_eval(f: Poly, prec: int = 256) -> ErrFloat:
    """L*(f) = sum_{n>=1} a_n f(n) with abs_err <= 2^-prec."""
    if isinstance(f, IntPoly):
        f = f.to_rat()
    elif not isinstance(f, RatPoly):
        raise TypeError(f"lstar_eval: polynomial expected, got {type(f).__name__}")
    if not f:
        return ErrFloat.from_fraction(0, 0, prec + 16)
    F, D = f.to_int_scaled()
    deg = f.degree
    n = _truncation_index(deg, f.norm1(), prec)
    tail = _tail_bound(n, deg, f.norm1())

    vals = [F(k) for k in range(n + 1)]
    mass = Fraction(sum(abs(v) for v in vals[1:]), D)
    bits = prec + 3 + max(0, ceil(log2(mass + 1)))
    xs = a_fixed(n, bits)

    # sum_k X_k F(k) 2^(n-k) / (D 2^(bits+n)), all exact
    num = sum(xs[k] * vals[k] << (n - k) for k in range(1, n + 1))
    err_units = sum(((1 << k) - 1) * abs(vals[k]) << (n - k) for k in range(1, n + 1))
    den = D << (bits + n)
    value = Fraction(num, den)
    result = ErrFloat.from_fraction(value, Fraction(err_units, den) + tail, _value_prec(value, prec))
    _check_budget(result, prec, "lstar_eval")
    return result


def _value_prec(q: Fraction, prec: int) -> int:
    """Mantissa bits so that rounding q costs at most 2^-(prec+15)."""
    mag = abs(q.numerator).bit_length() - q.denominator.bit_length() + 1
    return prec + 16 + max(0, mag)


def _check_budget(x: ErrFloat, prec: int, where: str) -> None:
    if x.err > mpmath.ldexp(1, -prec):
        raise ArithmeticError(f"{where}: error bound {x.err} exceeds 2^-{prec}")


# -- L(s) ----------------------------------------------------------------------


def _power_neg_s(k: int, s: ComplexArg, prec: int) -> tuple[ErrFloat, ErrFloat]:
    """k^-s as (re, im) with conservative bounds."""
    with mpmath.workprec(prec + 16):
        z = mpmath.power(k, -mpmath.mpc(s.re, s.im))
        mag = mpmath.power(k, -s.re)
        slog = abs(mpmath.mpc(s.re, s.im)) * mpmath.log(k) if k > 1 else mpmath.mpf(0)
        # relative error of exp(-s log k): argument error |s| log k 2^-p plus a few ulps
        bound = mag * (slog + 8) * mpmath.ldexp(1, 4 - prec - 16)
    return ErrFloat.from_mpf(z.real, bound, prec), ErrFloat.from_mpf(z.imag, bound, prec)


def L_eval(s, prec: int = 256) -> tuple[ErrFloat, ErrFloat]:
    """L(s) = sum a_n n^-s, returned as (re, im) each with abs_err <= 2^-prec."""
    s = ComplexArg.coerce(s)
    d = Fraction(-s.re)
    n = _truncation_index(d, Fraction(1), prec)
    tail = _tail_bound(n, d, Fraction(1))
    with mpmath.workprec(64):
        mass = sum(mpmath.power(k, -s.re) for k in range(1, n + 1)) * 2
    extra = max(0, ceil(float(mpmath.log(mass + 1, 2)))) + ceil(log2(n)) + 8
    for attempt in range(4):
        bits = prec + extra
        xs = a_fixed(n, bits)
        re = ErrFloat.from_fraction(0, tail, bits)
        im = ErrFloat.from_fraction(0, tail, bits)
        for k in range(1, n + 1):
            a = ErrFloat.from_fraction(Fraction(xs[k], 1 << (bits + k)), Fraction((1 << k) - 1, 1 << (bits + k)), bits)
            c, sn = _power_neg_s(k, s, bits)
            re = re + a * c
            im = im + a * sn
        limit = mpmath.ldexp(1, -prec)
        if re.err <= limit and im.err <= limit:
            return re, im
        extra += 16 * (attempt + 1)
    raise ArithmeticError(f"L_eval: could not reach 2^-{prec} at s={s}")


# -- constants ------------------------------------------------------------------


def _constant(fn, prec: int) -> ErrFloat:
    with mpmath.workprec(prec + 32):
        v = fn()
    return ErrFloat.from_mpf(v, abs(v) * mpmath.ldexp(1, -(prec + 28)), prec + 16)


def log_pi_half(prec: int = 256) -> ErrFloat:
    return _constant(lambda: mpmath.log(mpmath.pi / 2), prec)


def log2_value(prec: int = 256) -> ErrFloat:
    return _constant(lambda: mpmath.log(2), prec)


# -- zeta(m) --------------------------------------------------------------------


def _rising(m: int, j: int) -> int:
    out = 1
    for i in range(j):
        out *= m + i
    return out


def _zeta_direct(m: int, terms: int, prec: int) -> ErrFloat:
    bits = prec + 8 + terms.bit_length()
    one = 1 << bits
    # floor(2^bits / k^m) is off by less than one unit per term
    acc = sum(one // k**m for k in range(1, terms + 1))
    # sum_{k>K} k^-m lies in [(K+1)^(1-m), K^(1-m)] / (m-1)
    lo = Fraction(1, (m - 1) * (terms + 1) ** (m - 1))
    hi = Fraction(1, (m - 1) * terms ** (m - 1))
    mid, half = (lo + hi) / 2, (hi - lo) / 2
    return ErrFloat.from_fraction(Fraction(acc, one) + mid, Fraction(terms, one) + half, prec + 16)


def _zeta_euler_maclaurin(m: int, prec: int) -> ErrFloat:
    target = Fraction(1, 1 << (prec + 3))
    cut = prec // 4 + 16
    while True:
        head = sum((Fraction(1, k**m) for k in range(1, cut)), Fraction(0))
        body = Fraction(1, (m - 1) * cut ** (m - 1)) + Fraction(1, 2 * cut**m)
        for j in range(1, 4 * cut):
            b = exact.bernoulli(2 * j)
            body += b / factorial(2 * j) * _rising(m, 2 * j - 1) / Fraction(cut) ** (m + 2 * j - 1)
            # |R| <= 2 |B_{2j+2}| / (2j+2)! * |f^(2j+1)(K)|
            rem = 2 * abs(exact.bernoulli(2 * j + 2)) / factorial(2 * j + 2) * _rising(m, 2 * j + 1) / Fraction(cut) ** (m + 2 * j + 1)
            if rem <= target:
                return ErrFloat.from_fraction(head + body, rem, prec + 16)
        cut *= 2


def zeta_int(m: int, prec: int = 256, method: str = "auto") -> ErrFloat:
    """zeta(m) for integer m >= 2 with abs_err <= 2^-prec.

    ``method`` is ``"direct"`` (partial sum plus integral tail bracket),
    ``"euler-maclaurin"``, or ``"auto"`` (direct when it needs at most
    ``DIRECT_MAX_TERMS`` terms).
    """
    if m < 2:
        raise ValueError(f"zeta_int: m must be >= 2, got {m}")
    # the bracket half-width is about (m/2) K^-m-1 <= K^-m; ask for 2^-(prec+2)
    terms = ceil(2 ** ((prec + 2) / m)) + 1
    if method == "auto":
        method = "direct" if terms <= DIRECT_MAX_TERMS else "euler-maclaurin"
    if method == "direct":
        result = _zeta_direct(m, terms, prec)
    elif method == "euler-maclaurin":
        result = _zeta_euler_maclaurin(m, prec)
    else:
        raise ValueError(f"zeta_int: unknown method {method!r}")
    _check_budget(result, prec, "zeta_int")
    return result


# -- quantities built on L* ------------------------------------------------------


def h_neg(n: int, prec: int = 256) -> ErrFloat:
    """H(-n) = 2^-n L*(p_n)."""
    if n < 1:
        raise ValueError(f"h_neg: n must be >= 1, got {n}")
    return lstar_eval(polycalc.build_p(n), prec + n) * Fraction(1, 1 << n)


def _p_deriv0(n: int) -> int:
    return polycalc.build_p(n)[1]


def _require_even(n: int, where: str) -> None:
    if n < 2 or n % 2:
        raise ValueError(f"{where}: n must be even and >= 2, got {n}")


def zeta_quotient(n: int, prec: int = 256) -> ErrFloat:
    """zeta(n+1)/zeta(n) as (1 - 1/n)(1 - 1/(2^(n+1)-1)) L*(p_n) / p_n'(0)."""
    _require_even(n, "zeta_quotient")
    d0 = _p_deriv0(n)
    if d0 == 0:
        raise ZeroDivisionError(f"p_{n}'(0) = 0")
    factor = (1 - Fraction(1, n)) * (1 - Fraction(1, 2 ** (n + 1) - 1)) / d0
    extra = max(0, ceil(log2(abs(factor)))) + 2
    return lstar_eval(polycalc.build_p(n), prec + extra) * factor


def quotient_ratio(n: int, prec: int = 256) -> ErrFloat:
    """L*(p_n) / p_n'(0), which tends to 1 along even n."""
    _require_even(n, "quotient_ratio")
    d0 = _p_deriv0(n)
    if d0 == 0:
        raise ZeroDivisionError(f"p_{n}'(0) = 0")
    return lstar_eval(polycalc.build_p(n), prec + 2) * Fraction(1, d0)
