"""Midpoint-radius arbitrary-precision reals.

An :class:`ErrFloat` is a binary float ``value`` together with a bound
``err`` on the distance to the true quantity it represents.  Arithmetic
widens the bound by the propagated input errors plus one rounding error of
the result; error bounds themselves are computed at 64 bits rounding
upward, so they only ever over-approximate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, log10

import mpmath
from mpmath import libmp

__all__ = ["ErrFloat", "to_fraction"]

_EP = 64
_ZERO = libmp.fzero
_mk = mpmath.mp.make_mpf


def to_fraction(x) -> Fraction:
    """Exact rational value of an mpf (or int / Fraction / float)."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    sign, man, exp, _ = x._mpf_
    if not man:
        if x._mpf_ != _ZERO:
            raise ValueError(f"non-finite value {x}")
        return Fraction(0)
    v = Fraction(int(man) << exp) if exp >= 0 else Fraction(int(man), 1 << -exp)
    return -v if sign else v


def _add_up(*ts):
    acc = _ZERO
    for t in ts:
        acc = libmp.mpf_add(acc, t, _EP, "u")
    return acc


def _mul_up(a, b):
    return libmp.mpf_mul(a, b, _EP, "u")


def _abs_up(t):
    return libmp.mpf_abs(t, _EP, "u")


def _round_err(v, prec: int):
    # |rounded - exact| <= |rounded| * 2^(1-prec) for round-to-nearest
    return libmp.mpf_shift(_abs_up(v), 1 - prec)


def _frac_up(q: Fraction):
    return libmp.from_rational(q.numerator, q.denominator, _EP, "u")


@dataclass(frozen=True)
class ErrFloat:
    value: mpmath.mpf
    err: mpmath.mpf
    prec: int

    def __post_init__(self):
        if not mpmath.isfinite(self.err) or self.err < 0:
            raise ValueError(f"error bound must be finite and >= 0, got {self.err}")
        if not mpmath.isfinite(self.value):
            raise ValueError(f"value must be finite, got {self.value}")

    # -- construction -------------------------------------------------------

    @classmethod
    def from_fraction(cls, q, err=0, prec: int = 256) -> "ErrFloat":
        """Round the exact rational ``q`` to ``prec`` bits; ``err`` is its prior error."""
        q = Fraction(q)
        v = libmp.from_rational(q.numerator, q.denominator, prec, "n")
        e = _add_up(_frac_up(abs(Fraction(err))), _round_err(v, prec))
        return cls(_mk(v), _mk(e), prec)

    @classmethod
    def from_mpf(cls, x, err, prec: int) -> "ErrFloat":
        """Wrap a float computed elsewhere with a caller-supplied error bound."""
        x = x._mpf_ if isinstance(x, mpmath.mpf) else mpmath.mpf(x)._mpf_
        err = err._mpf_ if isinstance(err, mpmath.mpf) else _frac_up(Fraction(err))
        v = libmp.mpf_pos(x, prec, "n")
        e = _add_up(_abs_up(err), _round_err(v, prec))
        return cls(_mk(v), _mk(e), prec)

    # -- inspection -------------------------------------------------------

    @property
    def lo(self) -> Fraction:
        return to_fraction(self.value) - to_fraction(self.err)

    @property
    def hi(self) -> Fraction:
        return to_fraction(self.value) + to_fraction(self.err)

    def contains(self, x) -> bool:
        return abs(to_fraction(x) - to_fraction(self.value)) <= to_fraction(self.err)

    def overlaps(self, other: "ErrFloat") -> bool:
        gap = abs(to_fraction(self.value) - to_fraction(other.value))
        return gap <= to_fraction(self.err) + to_fraction(other.err)

    def __float__(self) -> float:
        return float(self.value)

    def __repr__(self) -> str:
        return f"ErrFloat({mpmath.nstr(self.value, 20)} ± {mpmath.nstr(self.err, 3)}, prec={self.prec})"

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "ErrFloat":
        if isinstance(other, ErrFloat):
            return other
        if isinstance(other, (int, Fraction)):
            return ErrFloat.from_fraction(other, 0, self.prec)
        return NotImplemented

    def __neg__(self) -> "ErrFloat":
        return ErrFloat(_mk(libmp.mpf_neg(self.value._mpf_)), self.err, self.prec)

    def __add__(self, other) -> "ErrFloat":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = max(self.prec, other.prec)
        v = libmp.mpf_add(self.value._mpf_, other.value._mpf_, p, "n")
        e = _add_up(self.err._mpf_, other.err._mpf_, _round_err(v, p))
        return ErrFloat(_mk(v), _mk(e), p)

    __radd__ = __add__

    def __sub__(self, other) -> "ErrFloat":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "ErrFloat":
        return (-self) + other

    def __mul__(self, other) -> "ErrFloat":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = max(self.prec, other.prec)
        a, b = self.value._mpf_, other.value._mpf_
        ea, eb = self.err._mpf_, other.err._mpf_
        v = libmp.mpf_mul(a, b, p, "n")
        e = _add_up(
            _mul_up(_abs_up(a), eb),
            _mul_up(_abs_up(b), ea),
            _mul_up(ea, eb),
            _round_err(v, p),
        )
        return ErrFloat(_mk(v), _mk(e), p)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ErrFloat":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = max(self.prec, other.prec)
        a, b = self.value._mpf_, other.value._mpf_
        ea, eb = self.err._mpf_, other.err._mpf_
        # |b| - eb, rounded down
        margin = libmp.mpf_sub(libmp.mpf_abs(b), eb, _EP, "d")
        if libmp.mpf_le(margin, _ZERO):
            raise ZeroDivisionError("divisor enclosure contains zero")
        v = libmp.mpf_div(a, b, p, "n")
        # |a/b| <= |v| (1 + 2^(1-p)), then (ea + |a/b| eb) / (|b| - eb)
        qa = _add_up(_abs_up(v), _round_err(v, p))
        num = _add_up(ea, _mul_up(qa, eb))
        e = _add_up(libmp.mpf_div(num, margin, _EP, "u"), _round_err(v, p))
        return ErrFloat(_mk(v), _mk(e), p)

    def __rtruediv__(self, other) -> "ErrFloat":
        return self._coerce(other) / self

    # -- serialization ----------------------------------------------------

    def to_json(self, prec_bits: int | None = None) -> dict:
        """Numeric record; the printed bound also covers decimal conversion."""
        digits = ceil(self.prec * log10(2)) + 3
        text = libmp.to_str(self.value._mpf_, digits)
        shown = Fraction(text)
        total = to_fraction(self.err) + abs(shown - to_fraction(self.value))
        bound = libmp.from_rational(total.numerator, total.denominator, 24, "u")
        # 6 significant digits after a relative bump keeps the string an upper bound
        bound = libmp.mpf_mul(bound, libmp.from_rational(100001, 100000, _EP, "u"), _EP, "u")
        return {
            "value": text,
            "abs_err_le": mpmath.nstr(_mk(bound), 6),
            "prec_bits": self.prec if prec_bits is None else prec_bits,
        }
