"""Invariant suites run by ``zetaquot verify``.

Each suite yields :class:`Check` records in a fixed order so reports are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from . import exact, modular, numerics, polycalc
from .errfloat import to_fraction

__all__ = ["Check", "exact_suite", "numeric_suite", "modular_suite", "SUITES", "KUMMER_TRIPLES"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def _first_failure(items, pred: Callable) -> str:
    for item in items:
        if not pred(item):
            return f"first failure at {item}"
    return ""


def _check(name: str, items, pred: Callable) -> Check:
    items = list(items)
    detail = _first_failure(items, pred)
    return Check(name, not detail, detail or f"{len(items)} cases")


def exact_suite(n_max: int = 60) -> Iterator[Check]:
    ns = range(1, n_max + 1)
    p = polycalc.build_p
    yield _check("p_n monic of degree n", ns, lambda n: p(n).is_monic() and p(n).degree == n)
    yield _check("p_n(-1) = 0", ns, lambda n: p(n)(-1) == 0)
    yield _check("p_n(0) = 0 for even n", [n for n in ns if n % 2 == 0], lambda n: p(n)(0) == 0)

    def parity_division(n):
        q, r = p(n).divmod_monic(polycalc.q_divisor(n))
        return not r and q.is_monic() and q.degree == n - 2

    yield _check("(x+1)^2 | p_n (odd n), x(x+1) | p_n (even n)", range(3, n_max + 1), parity_division)
    yield _check("p_n'(-1) = -p_{n-1}(0)", range(2, n_max + 1), lambda n: p(n).derivative()(-1) == -p(n - 1)(0))
    yield _check(
        "p_n'(0) = (n-1) p_{n-1}(0) for even n",
        range(2, n_max + 1, 2),
        lambda n: p(n)[1] == (n - 1) * p(n - 1)(0),
    )
    small = range(1, min(n_max, 40) + 1)

    def tangent(n):
        closed = Fraction(2 ** (n + 1) * (2 ** (n + 1) - 1)) * exact.bernoulli(n + 1) / (n + 1)
        return p(n)(0) == exact.tangent_number(n) == closed

    yield _check("p_n(0) = tanh^(n)(0) = 2^(n+1)(2^(n+1)-1)B_(n+1)/(n+1)", small, tangent)

    half = Fraction(-1, 2)

    def fh_identity(n):
        return polycalc.fh_poly(n)(half) == -Fraction(n - 1, 2) * polycalc.fs_poly(n - 1)(half)

    yield _check("f_h(n)(-1/2) = -(n-1)/2 f_s(n-1)(-1/2), even n", range(2, min(n_max, 40) + 1, 2), fh_identity)
    yield _check(
        "binomial and lambda constructions of p_n agree",
        range(1, min(n_max, 30) + 1),
        lambda n: polycalc.build_p_lambda(n) == p(n),
    )


def numeric_suite(n_max: int = 60, prec: int = 256) -> Iterator[Check]:
    ls = numerics.l_values(n_max, prec)

    def strictly_above(a, b):
        return a.lo > b.hi

    idx = range(n_max - 1)
    yield _check("l_n strictly decreasing (disjoint enclosures)", idx, lambda i: strictly_above(ls[i], ls[i + 1]))
    yield _check(
        "n l_n strictly decreasing (disjoint enclosures)",
        idx,
        lambda i: strictly_above(ls[i] * (i + 1), ls[i + 1] * (i + 2)),
    )
    log2 = numerics.log2_value(prec)

    def below_bound(i):
        bound = log2 * Fraction(1, i + 1)
        # equality at n = 1, strict separation afterwards
        return ls[i].overlaps(bound) if i == 0 else ls[i].hi < bound.lo

    yield _check("l_n <= log(2)/n", range(n_max), below_bound)
    yield Check("l_1 encloses log 2", ls[0].overlaps(log2) and ls[0].contains(log2.value))
    yield _check(
        "quadrature oracle agrees with l_n within 1e-15",
        range(1, min(n_max, 40) + 1),
        lambda n: abs(numerics.l_integral_oracle(n) - float(ls[n - 1].value)) <= 1e-15,
    )
    l0, _ = numerics.L_eval(0, prec)
    yield Check("L(0) = log(pi/2)", l0.overlaps(numerics.log_pi_half(prec)))

    def route(n):
        a = numerics.zeta_quotient(n, prec)
        b = numerics.zeta_int(n + 1, prec) / numerics.zeta_int(n, prec)
        gap = abs(to_fraction(a.value) - to_fraction(b.value))
        return a.overlaps(b) and gap <= Fraction(1, 10**25)

    yield _check("zeta(n+1)/zeta(n): quotient formula vs series oracle", range(2, 21, 2), route)
    yield _check(
        "|L*(p_n)/p_n'(0) - 1| <= 2/n",
        range(4, 41, 2),
        lambda n: abs(numerics.quotient_ratio(n, prec).hi - 1) <= Fraction(2, n)
        and abs(numerics.quotient_ratio(n, prec).lo - 1) <= Fraction(2, n),
    )


# (n, m, p): even n = m mod p-1, not divisible by p-1
KUMMER_TRIPLES = [
    (2, 6, 5),
    (2, 8, 7),
    (4, 10, 7),
    (2, 12, 11),
    (4, 14, 11),
    (6, 16, 11),
    (2, 14, 13),
    (10, 22, 13),
    (2, 18, 17),
    (8, 26, 19),
    (4, 26, 23),
    (12, 40, 29),
]


def modular_suite(p_max: int = 31) -> Iterator[Check]:
    odd = [q for q in modular.primes_upto(p_max) if q > 2]
    primes = modular.primes_upto(p_max)
    yield _check("(1+(x-1)_{p-1})^(k)(0) = -delta_{k,p-1} mod p", primes, modular.fac_p1_check)
    yield _check("Delta^k x^p / k! at 1 = d_{p,k} mod p", primes, modular.diff_xp_check)
    yield _check("p_{p+1}^(k)(0) = 0 mod p, 1 <= k <= p-1", odd, modular.deriv_congruence_check)
    yield _check("q_{p+1} Eisenstein at p with ord_p(beta_0) = 1", odd, lambda q: modular.eisenstein_suite(q).passed)

    def stirling_vanish(q):
        return all(
            exact.stirling(1, q, k) % q == 0 and exact.stirling(2, q, k) % q == 0 for k in range(2, q)
        )

    yield _check("S1(p,k) = S2(p,k) = 0 mod p for 1 < k < p", primes, stirling_vanish)
    triples = [t for t in KUMMER_TRIPLES if t[2] <= p_max]
    yield _check("Kummer congruences B_n/n = B_m/m mod p", triples, lambda t: modular.kummer_check(*t))
    yield _check(
        "q_n irreducible: mod-p witness for 4 <= n <= 10",
        range(4, 11),
        lambda n: modular.witness_scan(n, 500) is not None,
    )


SUITES = {
    "exact": exact_suite,
    "numeric": numeric_suite,
    "modular": modular_suite,
}
