"""Dense univariate polynomials over the integers and the rationals.

Coefficients are stored in ascending degree order with trailing zeros
removed; the zero polynomial has an empty coefficient tuple.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, lcm
from typing import Iterable, Sequence, Union

from .exact import format_rational

Number = Union[int, Fraction]

_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _trim(coeffs: Sequence) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Common machinery; use :class:`IntPoly` or :class:`RatPoly`."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        self.coeffs = _trim([self._coerce(c) for c in coeffs])

    @staticmethod
    def _coerce(c):
        raise NotImplementedError

    # -- basic structure --------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return render(self)

    # -- arithmetic ---------------------------------------------------------

    def _result_type(self, other):
        if isinstance(self, RatPoly) or isinstance(other, RatPoly):
            return RatPoly
        if isinstance(other, Fraction) and other.denominator != 1:
            return RatPoly
        return type(self)

    def _as_poly(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return RatPoly([other]) if isinstance(other, Fraction) else IntPoly([other])
        return None

    def __add__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return self._result_type(o)(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._result_type(other)([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._result_type(other)()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return self._result_type(other)(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = type(self)([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod_monic(self, divisor: "Poly"):
        """Quotient and remainder for division by a monic polynomial."""
        if not divisor.is_monic():
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        d = divisor.degree
        if len(rem) - 1 < d:
            return type(self)(), type(self)(rem)
        quo = [0] * (len(rem) - d)
        dc = divisor.coeffs
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if not c:
                continue
            quo[i - d] = c
            for j in range(d + 1):
                rem[i - d + j] -= c * dc[j]
        return type(self)(quo), type(self)(rem[:d])

    def exact_div(self, divisor: "Poly"):
        """Divide by a monic polynomial, raising if the remainder is nonzero."""
        q, r = self.divmod_monic(divisor)
        if r:
            raise ArithmeticError(f"nonzero remainder {r!r} dividing {self!r} by {divisor!r}")
        return q

    # -- calculus and evaluation --------------------------------------------

    def derivative(self, k: int = 1):
        if k < 0:
            raise ValueError("derivative order must be >= 0")
        c = self.coeffs
        out = []
        for i in range(k, len(c)):
            # i * (i-1) * ... * (i-k+1)
            out.append(c[i] * (factorial(i) // factorial(i - k)))
        return type(self)(out)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, a: Number):
        """Return f(x + a) (Taylor shift)."""
        c = list(self.coeffs)
        n = len(c)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                c[j] += a * c[j + 1]
        return self._result_type(a)(c)

    def norm1(self):
        return sum(abs(c) for c in self.coeffs)

    def to_json(self, kind: str = "custom", n: int | None = None) -> dict:
        return {"kind": kind, "n": n if n is not None else self.degree, "coeffs": [format_rational(c) for c in self.coeffs]}


class IntPoly(Poly):
    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError(f"non-integer coefficient {c}")
            return c.numerator
        if isinstance(c, bool) or not isinstance(c, int):
            raise TypeError(f"integer coefficient expected, got {type(c).__name__}")
        return c

    def to_rat(self) -> "RatPoly":
        return RatPoly(self.coeffs)


class RatPoly(Poly):
    __slots__ = ()

    @staticmethod
    def _coerce(c):
        return Fraction(c)

    def common_denominator(self) -> int:
        return lcm(1, *(c.denominator for c in self.coeffs))

    def to_int_scaled(self) -> tuple[IntPoly, int]:
        """Return (F, D) with D * self == F and F integral."""
        d = self.common_denominator()
        return IntPoly([c * d for c in self.coeffs]), d


def poly_from_json(record: dict) -> Poly:
    coeffs = [Fraction(s) for s in record["coeffs"]]
    if all(c.denominator == 1 for c in coeffs):
        return IntPoly([c.numerator for c in coeffs])
    return RatPoly(coeffs)


def falling_factorial_poly(a: int, k: int) -> IntPoly:
    """(x + a)_k = (x + a)(x + a - 1)...(x + a - k + 1) as a polynomial in x."""
    out = IntPoly([1])
    for j in range(k):
        out = out * IntPoly([a - j, 1])
    return out


def _fmt_coeff(c) -> str:
    return format_rational(c)


def render(f: Poly, var: str = "x") -> str:
    """Descending-power rendering, e.g. ``x⁴ − 2x³ − 9x² − 6x``."""
    terms = []
    for i in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[i]
        if not c:
            continue
        neg = c < 0
        mag = -c if neg else c
        if i == 0:
            body = _fmt_coeff(mag)
        else:
            mono = var if i == 1 else var + str(i).translate(_SUPERSCRIPT)
            if mag == 1:
                body = mono
            elif isinstance(mag, Fraction) and mag.denominator != 1:
                body = f"({_fmt_coeff(mag)}){mono}"
            else:
                body = f"{_fmt_coeff(mag)}{mono}"
        if not terms:
            terms.append(("−" if neg else "") + body)
        else:
            terms.append(("− " if neg else "+ ") + body)
    return " ".join(terms) if terms else "0"
