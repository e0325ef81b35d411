"""Residue arithmetic: congruence checks, Eisenstein certificates for
q_{p+1}, and mod-p irreducibility witnesses for q_n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, isqrt
from typing import Optional

from . import exact
from .poly import IntPoly, falling_factorial_poly
from .polycalc import build_p, build_q

__all__ = [
    "is_prime",
    "primes_upto",
    "ModPoly",
    "ord_p",
    "residue",
    "eisenstein_check",
    "EisensteinReport",
    "eisenstein_suite",
    "deriv_congruence_check",
    "diff_xp_check",
    "fac_p1_check",
    "kummer_check",
    "irreducible_mod_p",
    "witness_scan",
    "certificate",
]


def is_prime(n: int) -> bool:
    """Deterministic trial division; fine for the small moduli used here."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if is_prime(q)]


def _require_prime(p: int, where: str, odd: bool = False) -> None:
    if not is_prime(p) or (odd and p == 2):
        raise ValueError(f"{where}: {p} is not {'an odd' if odd else 'a'} prime")


def ord_p(x, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if not x:
        raise ValueError("ord_p of zero")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def residue(x, p: int) -> int:
    """Image of a p-integral rational in Z/p."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not p-integral for p={p}")
    return x.numerator * pow(x.denominator, -1, p) % p


class ModPoly:
    """Polynomial over the field with p elements; coefficients ascending in [0, p)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs, p: int, check: bool = True):
        if check:
            _require_prime(p, "ModPoly")
        self.p = p
        c = [x % p for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = c

    @classmethod
    def reduce(cls, f: IntPoly, p: int) -> "ModPoly":
        return cls(f.coeffs, p)

    def _new(self, coeffs) -> "ModPoly":
        return ModPoly(coeffs, self.p, check=False)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, ModPoly) and self.p == other.p and self.coeffs == other.coeffs

    def __repr__(self):
        return f"ModPoly({self.coeffs}, p={self.p})"

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return self._new([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __sub__(self, other):
        return self + other._new([-c for c in other.coeffs])

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._new([])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self._new(out)

    def divmod(self, other):
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        p = self.p
        rem = list(self.coeffs)
        d = other.degree
        inv = pow(other.coeffs[-1], -1, p)
        if len(rem) - 1 < d:
            return self._new([]), self._new(rem)
        quo = [0] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i] * inv % p
            if not c:
                continue
            quo[i - d] = c
            for j, y in enumerate(other.coeffs):
                rem[i - d + j] = (rem[i - d + j] - c * y) % p
        return self._new(quo), self._new(rem[:d])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if not self.coeffs:
            return self
        inv = pow(self.coeffs[-1], -1, self.p)
        return self._new([c * inv for c in self.coeffs])

    def derivative(self):
        return self._new([i * c for i, c in enumerate(self.coeffs)][1:])

    def gcd(self, other):
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def powmod(self, e: int, modulus: "ModPoly") -> "ModPoly":
        result = self._new([1]) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result


def eisenstein_check(f: IntPoly, p: int) -> bool:
    """Eisenstein criterion at p (general leading coefficient allowed)."""
    _require_prime(p, "eisenstein_check")
    c = f.coeffs
    if len(c) < 2:
        return False
    if c[-1] % p == 0:
        return False
    if any(x % p for x in c[:-1]):
        return False
    return c[0] % (p * p) != 0


@dataclass
class EisensteinReport:
    p: int
    n: int
    q_coeffs: list[int]
    eisenstein: bool
    beta0: int
    beta0_formula: Fraction
    ord_p_beta0: Optional[int]
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def eisenstein_suite(p: int) -> EisensteinReport:
    """Check that q_{p+1} is Eisenstein at p with ord_p of its constant term equal to 1."""
    _require_prime(p, "eisenstein_suite", odd=True)
    n = p + 1
    q = build_q(n)
    beta0 = q[0]
    formula = Fraction(n - 1) * 2**n * (2**n - 1) * exact.bernoulli(n) / n
    failures = []
    eis = eisenstein_check(q, p)
    if not eis:
        bad = [i for i, c in enumerate(q.coeffs[:-1]) if c % p]
        failures.append(f"q_{n} not Eisenstein at {p}: coefficients {bad} not divisible, beta0={beta0}")
    if formula != beta0:
        failures.append(f"beta0={beta0} differs from (n-1)2^n(2^n-1)B_n/n = {formula}")
    v = ord_p(beta0, p) if beta0 else None
    if v != 1:
        failures.append(f"ord_{p}(beta0) = {v}, expected 1 (beta0={beta0})")
    return EisensteinReport(p, n, list(q.coeffs), eis, beta0, formula, v, failures)


def deriv_congruence_check(p: int) -> bool:
    """p divides p_{p+1}^{(k)}(0) for 1 <= k <= p - 1."""
    _require_prime(p, "deriv_congruence_check", odd=True)
    n = p + 1
    f = build_p(n)
    return all(f.derivative(k)(0) % p == 0 for k in range(1, n - 1))


def diff_xp_check(p: int) -> bool:
    """(1/k!) Delta^k x^p at 1 is 1 mod p for k in {0, 1, p} and 0 otherwise."""
    _require_prime(p, "diff_xp_check")
    for k in range(p + 1):
        q, r = divmod(exact.diff_monomial(p, k, 1), factorial(k))
        if r:
            return False
        expected = 1 if k in (0, 1, p) else 0
        if q % p != expected % p:
            return False
    return True


def fac_p1_check(p: int) -> bool:
    """(1 + (x-1)_{p-1})^{(k)} at 0 is -delta_{k,p-1} mod p for 0 <= k <= p - 1."""
    _require_prime(p, "fac_p1_check")
    g = falling_factorial_poly(-1, p - 1) + IntPoly([1])
    for k in range(p):
        val = g.derivative(k)(0) if k else g(0)
        expected = -1 if k == p - 1 else 0
        if (val - expected) % p:
            return False
    return True


def kummer_check(n: int, m: int, p: int) -> bool:
    """B_n/n == B_m/m (mod p) for even n == m (mod p-1), not 0 mod p-1."""
    _require_prime(p, "kummer_check", odd=True)
    for v in (n, m):
        if v < 2 or v % 2:
            raise ValueError(f"kummer_check: {v} is not a positive even integer")
    if (n - m) % (p - 1):
        raise ValueError(f"kummer_check: {n} and {m} are not congruent mod {p - 1}")
    if n % (p - 1) == 0:
        raise ValueError(f"kummer_check: {n} is divisible by {p - 1}")
    a = exact.bernoulli(n) / n
    b = exact.bernoulli(m) / m
    for x in (a, b):
        if x.denominator % p == 0:
            raise ValueError(f"kummer_check: {p} divides the denominator of {x}")
    return residue(a, p) == residue(b, p)


def irreducible_mod_p(f: ModPoly) -> bool:
    """Rabin's test over the field with p elements."""
    if not f.is_monic():
        raise ValueError("irreducible_mod_p: polynomial must be monic")
    d = f.degree
    if d < 1:
        raise ValueError("irreducible_mod_p: degree must be >= 1")
    if d == 1:
        return True
    if f.gcd(f.derivative()).degree > 0:
        return False
    x = f._new([0, 1])
    if x.powmod(f.p**d, f) != x % f:
        return False
    for r in _prime_divisors(d):
        h = x.powmod(f.p ** (d // r), f) - x
        if f.gcd(h).degree > 0:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    return [q for q in primes_upto(n) if n % q == 0]


def witness_scan(n: int, prime_bound: int) -> Optional[int]:
    """Least prime p <= prime_bound with q_n irreducible mod p, or None.

    A witness proves q_n irreducible over the integers (q_n is monic);
    ``None`` only means no witness was found below the bound.
    """
    if n < 4:
        raise ValueError(f"witness_scan: n must be >= 4, got {n}")
    q = build_q(n)
    for p in primes_upto(prime_bound):
        if irreducible_mod_p(ModPoly.reduce(q, p)):
            return p
    return None


def certificate(n: int, claim: str, prime: Optional[int], passed: bool) -> dict:
    """Certificate record; the two claim kinds are separate proofs and never merged."""
    if claim not in ("eisenstein", "modp-irreducible"):
        raise ValueError(f"unknown claim {claim!r}")
    return {"n": n, "claim": claim, "prime": prime, "pass": passed}
