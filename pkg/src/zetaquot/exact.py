"""Exact integer/rational combinatorics: binomials, Stirling numbers,
harmonic, Bernoulli and tangent numbers.

Rationals are :class:`fractions.Fraction`, which is always kept in lowest
terms with a positive denominator.  Tables grow on demand and are shared by
all callers through a module-level :class:`CombiTables` instance.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial

__all__ = [
    "CombiTables",
    "TABLES",
    "binomial",
    "stirling",
    "sf",
    "diff_monomial",
    "harmonic",
    "bernoulli",
    "tangent_number",
    "format_rational",
]


class CombiTables:
    """Memoized exact tables.

    Each table is a list of rows that is only ever extended.  Extension
    happens under a lock and the new rows are published with a single list
    assignment, so readers never see a partially built row.
    """

    def __init__(self):
        self._lock = threading.RLock()
        self._s1: list[list[int]] = [[1]]
        self._s2: list[list[int]] = [[1]]
        self._harmonic: list[Fraction] = [Fraction(0)]
        self._bernoulli: list[Fraction] = [Fraction(1)]
        self._entringer: list[list[int]] = [[1]]

    # -- Stirling numbers -------------------------------------------------

    def _grow_s1(self, n: int) -> None:
        with self._lock:
            rows = list(self._s1)
            while len(rows) <= n:
                m = len(rows) - 1
                prev = rows[m]
                # (x)_{m+1} = (x)_m * (x - m)
                row = [0] * (m + 2)
                for k, c in enumerate(prev):
                    row[k + 1] += c
                    row[k] -= m * c
                rows.append(row)
            self._s1 = rows

    def _grow_s2(self, n: int) -> None:
        with self._lock:
            rows = list(self._s2)
            while len(rows) <= n:
                m = len(rows) - 1
                prev = rows[m]
                row = [0] * (m + 2)
                for k in range(1, m + 2):
                    above = prev[k] if k <= m else 0
                    row[k] = k * above + prev[k - 1]
                rows.append(row)
            self._s2 = rows

    def s1(self, n: int, k: int) -> int:
        if len(self._s1) <= n:
            self._grow_s1(n)
        return self._s1[n][k]

    def s2(self, n: int, k: int) -> int:
        if len(self._s2) <= n:
            self._grow_s2(n)
        return self._s2[n][k]

    # -- harmonic / Bernoulli ----------------------------------------------

    def harmonic(self, n: int) -> Fraction:
        if len(self._harmonic) <= n:
            with self._lock:
                vals = list(self._harmonic)
                while len(vals) <= n:
                    vals.append(vals[-1] + Fraction(1, len(vals)))
                self._harmonic = vals
        return self._harmonic[n]

    def bernoulli(self, n: int) -> Fraction:
        if len(self._bernoulli) <= n:
            with self._lock:
                vals = list(self._bernoulli)
                while len(vals) <= n:
                    m = len(vals)
                    if m >= 3 and m % 2 == 1:
                        vals.append(Fraction(0))
                        continue
                    # sum_{k=0}^{m} C(m+1, k) B_k = 0
                    acc = sum((comb(m + 1, k) * b for k, b in enumerate(vals) if b), Fraction(0))
                    vals.append(-acc / (m + 1))
                self._bernoulli = vals
        return self._bernoulli[n]

    # -- zigzag numbers via the Seidel-Entringer triangle ------------------

    def zigzag(self, n: int) -> int:
        """Number of alternating permutations of n elements (A000111)."""
        if len(self._entringer) <= n:
            with self._lock:
                rows = list(self._entringer)
                while len(rows) <= n:
                    prev = rows[-1]
                    m = len(rows)
                    row = [0] * (m + 1)
                    for k in range(1, m + 1):
                        row[k] = row[k - 1] + prev[m - k]
                    rows.append(row)
                self._entringer = rows
        return self._entringer[n][n]


TABLES = CombiTables()


def binomial(n: int, k: int) -> int:
    if n < 0:
        raise ValueError(f"binomial: n must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def _check_range(name: str, n: int, k: int) -> None:
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"{name}: need 0 <= k <= n, got n={n}, k={k}")


def stirling(kind: int, n: int, k: int) -> int:
    """Stirling number of the first (signed) or second kind.

    Kind 1 is the coefficient of x^k in the falling factorial (x)_n, so
    ``stirling(1, 4, 2) == 11`` and ``stirling(1, 4, 1) == -6``.
    """
    _check_range("stirling", n, k)
    if kind == 1:
        return TABLES.s1(n, k)
    if kind == 2:
        return TABLES.s2(n, k)
    raise ValueError(f"stirling: kind must be 1 or 2, got {kind}")


def sf(n: int, k: int) -> int:
    """k! * S2(n, k), i.e. the k-th forward difference of x^n at x = 0."""
    _check_range("sf", n, k)
    return factorial(k) * TABLES.s2(n, k)


def _sf_ext(n: int, k: int) -> int:
    # sf extended by zero above the diagonal
    return sf(n, k) if 0 <= k <= n else 0


def diff_monomial(n: int, k: int, base: int = 1) -> int:
    """Forward difference Delta^k x^n evaluated at x = base (base 0 or 1).

    Computed from the defining alternating sum, not from Stirling tables.
    """
    if n < 0 or k < 0:
        raise ValueError(f"diff_monomial: need n, k >= 0, got n={n}, k={k}")
    if base not in (0, 1):
        raise ValueError(f"diff_monomial: base must be 0 or 1, got {base}")
    return sum((-1) ** (k - v) * comb(k, v) * (base + v) ** n for v in range(k + 1))


def harmonic(n: int) -> Fraction:
    if n < 1:
        raise ValueError(f"harmonic: n must be >= 1, got {n}")
    return TABLES.harmonic(n)


def bernoulli(n: int) -> Fraction:
    """Exact B_n with the convention B_1 = -1/2."""
    if n < 0:
        raise ValueError(f"bernoulli: n must be >= 0, got {n}")
    return TABLES.bernoulli(n)


def tangent_number(n: int) -> int:
    """The n-th derivative of tanh at 0.

    Uses the zigzag (Entringer) triangle, so it does not depend on the
    Bernoulli numbers or on any polynomial construction.
    """
    if n < 0:
        raise ValueError(f"tangent_number: n must be >= 0, got {n}")
    if n % 2 == 0:
        return 0
    sign = -1 if (n // 2) % 2 else 1
    return sign * TABLES.zigzag(n)


def format_rational(q: Fraction | int) -> str:
    """Serialize as a decimal integer or ``"num/den"``."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
