from fractions import Fraction
from functools import lru_cache

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaquot.errfloat import ErrFloat, to_fraction
from zetaquot.numerics import (
    ComplexArg,
    L_eval,
    _l_fixed,
    a_fixed,
    h_neg,
    l_integral_oracle,
    l_value,
    l_values,
    log2_value,
    log_pi_half,
    lstar_eval,
    quotient_ratio,
    zeta_int,
    zeta_quotient,
)
from zetaquot.poly import IntPoly, RatPoly
from zetaquot.polycalc import build_p, quotient_combination_poly

DPS = 120
ORACLE_TERMS = 600
# a_k = l_k / 2^k loses about k bits to cancellation in l_k and regains them in 2^-k
LOG_DPS = DPS + 200


@lru_cache(maxsize=None)
def mp_logs():
    with mpmath.workdps(LOG_DPS):
        return [mpmath.log(j) for j in range(1, ORACLE_TERMS + 2)]


@lru_cache(maxsize=None)
def mp_a(k):
    logs = mp_logs()
    with mpmath.workdps(LOG_DPS):
        l = mpmath.fsum((-1) ** (v + 1) * mpmath.binomial(k, v) * logs[v] for v in range(k + 1))
        return l / mpmath.mpf(2) ** k


def mp_l(n):
    with mpmath.workdps(LOG_DPS):
        return mp_a(n) * mpmath.mpf(2) ** n


def mp_L(s, terms=ORACLE_TERMS):
    with mpmath.workdps(DPS + 20):
        return mpmath.fsum(mp_a(k) * mpmath.power(k, -s) for k in range(1, terms))


def mp_H_neg(n):
    # H(s) = 2^(2-s) zeta(s) log 2 + 2 (1 - 2^(1-s)) zeta'(s)
    with mpmath.workdps(DPS):
        s = -n
        return 2 ** (2 - s) * mpmath.zeta(s) * mpmath.log(2) + 2 * (1 - mpmath.mpf(2) ** (1 - s)) * mpmath.zeta(s, derivative=1)


def within(x: ErrFloat, target, slack=Fraction(0)):
    with mpmath.workdps(DPS + 40):
        t = to_fraction(mpmath.mpf(target))
    return abs(t - to_fraction(x.value)) <= to_fraction(x.err) + slack + Fraction(1, 10**DPS)


class TestL:
    def test_examples(self):
        with mpmath.workdps(DPS):
            assert within(l_value(1, 128), mpmath.log(2))
            assert within(l_value(2, 128), mpmath.log(mpmath.mpf(4) / 3))
            assert within(l_value(3, 128), mpmath.log(mpmath.mpf(32) / 27))

    @pytest.mark.parametrize("prec", [64, 128, 256, 400])
    def test_error_budget(self, prec):
        for n in (1, 7, 30, 60):
            x = l_value(n, prec)
            assert x.err <= mpmath.ldexp(1, -prec)
            assert within(x, mp_l(n))

    def test_batch_matches_single(self):
        batch = l_values(40, 256)
        for n in (1, 2, 17, 40):
            assert batch[n - 1].overlaps(l_value(n, 256))

    def test_fixed_point_routes_identical(self):
        bits = 300
        a = a_fixed(50, bits)
        assert a[1:] == [_l_fixed(n, bits) for n in range(1, 51)]

    def test_domain(self):
        with pytest.raises(ValueError):
            l_value(0)

    def test_quadrature_oracle(self):
        assert abs(l_integral_oracle(1) - 0.6931472) < 1e-7
        assert abs(l_integral_oracle(2) - 0.2876821) < 1e-7
        for n in (1, 5, 20, 40):
            assert abs(l_integral_oracle(n) - float(l_value(n, 128).value)) <= 1e-15

    def test_sequence_laws(self):
        ls = l_values(60, 256)
        log2 = log2_value(256)
        for i in range(59):
            assert ls[i].lo > ls[i + 1].hi
            assert (ls[i] * (i + 1)).lo > (ls[i + 1] * (i + 2)).hi
        for i in range(1, 60):
            assert ls[i].hi < (log2 * Fraction(1, i + 1)).lo
        assert ls[59].lo > 0


class TestLEval:
    def test_special_value(self):
        for prec in (64, 128, 256):
            re, im = L_eval(0, prec)
            assert re.overlaps(log_pi_half(prec))
            assert im.contains(0)

    def test_examples(self):
        assert within(L_eval(-1, 128)[0], mp_L(-1))
        assert abs(float(L_eval(-1, 128)[0].value) - 0.6092747) < 1e-7
        assert within(L_eval(10, 128)[0], mp_L(10))
        assert abs(float(L_eval(10, 128)[0].value) - 0.3466442) < 1e-7

    def test_complex_argument(self):
        s = ComplexArg(0.5, 14.0)
        re, im = L_eval(s, 128)
        with mpmath.workdps(DPS):
            ref = mp_L(mpmath.mpc(0.5, 14.0))
        assert within(re, ref.real) and within(im, ref.imag)
        assert re.err <= mpmath.ldexp(1, -128) and im.err <= mpmath.ldexp(1, -128)

    def test_coerce(self):
        assert ComplexArg.coerce(2) == ComplexArg(2.0, 0.0)
        assert ComplexArg.coerce(1 + 2j) == ComplexArg(1.0, 2.0)


class TestLstar:
    def test_examples(self):
        one = lstar_eval(IntPoly([1]), 128)
        assert one.overlaps(log_pi_half(128))
        x = lstar_eval(IntPoly([0, 1]), 128)
        assert x.overlaps(L_eval(-1, 128)[0])
        with mpmath.workdps(DPS):
            ref = Fraction(7, 3) * to_fraction(mpmath.zeta(3) / mpmath.zeta(2))
        p2 = lstar_eval(build_p(2), 256)
        assert abs(to_fraction(p2.value) - ref) < Fraction(1, 10**70)

    @pytest.mark.parametrize("n", [1, 4, 9, 20, 40])
    def test_against_mpmath_sum(self, n):
        f = build_p(n)
        got = lstar_eval(f, 128)
        with mpmath.workdps(DPS + 40):
            ref = mpmath.fsum(mp_a(k) * f(k) for k in range(1, ORACLE_TERMS))
        assert within(got, ref)

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), max_size=5), st.sampled_from([64, 96]))
    def test_tail_soundness(self, coeffs, prec):
        f = RatPoly(coeffs)
        coarse = lstar_eval(f, prec)
        fine = lstar_eval(f, prec + 64)
        assert coarse.contains(fine.value)
        assert coarse.overlaps(fine)

    def test_linear(self):
        f, g = build_p(4), build_p(6)
        combo = lstar_eval(f * 3 + g, 200)
        assert combo.overlaps(lstar_eval(f, 200) * 3 + lstar_eval(g, 200))

    def test_zero_polynomial(self):
        assert lstar_eval(IntPoly(), 64).contains(0)


class TestZeta:
    def test_closed_forms(self):
        with mpmath.workdps(DPS):
            assert within(zeta_int(2, 256), mpmath.pi**2 / 6)
            assert within(zeta_int(4, 256), mpmath.pi**4 / 90)
            assert within(zeta_int(3, 256), mpmath.zeta(3))

    @pytest.mark.parametrize("m", [2, 3, 5, 8, 13, 21, 40])
    def test_against_mpmath(self, m):
        z = zeta_int(m, 256)
        assert z.err <= mpmath.ldexp(1, -256)
        with mpmath.workdps(DPS):
            assert within(z, mpmath.zeta(m))

    @pytest.mark.parametrize("m,prec", [(2, 30), (3, 60), (5, 80), (21, 256)])
    def test_methods_agree(self, m, prec):
        a = zeta_int(m, prec, method="direct")
        b = zeta_int(m, prec, method="euler-maclaurin")
        assert a.overlaps(b)

    def test_domain(self):
        with pytest.raises(ValueError):
            zeta_int(1)
        with pytest.raises(ValueError):
            zeta_int(3, 64, method="bogus")


class TestQuotient:
    def test_examples(self):
        q2 = zeta_quotient(2, 256)
        q4 = zeta_quotient(4, 256)
        with mpmath.workdps(DPS):
            assert within(q2, mpmath.zeta(3) / mpmath.zeta(2))
            assert within(q4, mpmath.zeta(5) / mpmath.zeta(4))
        assert q2.overlaps(lstar_eval(build_p(2), 256) * Fraction(3, 7))

    def test_route_equality(self):
        for n in range(2, 21, 2):
            a = zeta_quotient(n, 256)
            b = zeta_int(n + 1, 256) / zeta_int(n, 256)
            assert a.overlaps(b)
            assert abs(to_fraction(a.value) - to_fraction(b.value)) <= Fraction(1, 10**25)

    def test_ratio(self):
        r2 = quotient_ratio(2, 128)
        assert r2.overlaps(lstar_eval(build_p(2), 128))
        for n in range(4, 41, 2):
            r = quotient_ratio(n, 128)
            assert abs(r.lo - 1) <= Fraction(2, n) and abs(r.hi - 1) <= Fraction(2, n)

    def test_ratio_tends_to_one(self):
        gaps = [abs(to_fraction(quotient_ratio(n, 128).value) - 1) for n in range(10, 61, 10)]
        assert gaps == sorted(gaps, reverse=True)

    @pytest.mark.parametrize("n", [0, 3, -2])
    def test_domain(self, n):
        with pytest.raises(ValueError):
            zeta_quotient(n)
        with pytest.raises(ValueError):
            quotient_ratio(n)

    def test_combination(self):
        f = quotient_combination_poly([(1, 2), (-2, 4)])
        got = lstar_eval(f, 256)
        with mpmath.workdps(DPS):
            ref = mpmath.zeta(3) / mpmath.zeta(2) - 2 * mpmath.zeta(5) / mpmath.zeta(4)
        assert within(got, ref)


class TestH:
    @pytest.mark.parametrize("n", [1, 2, 3, 6, 11])
    def test_against_zeta_derivative(self, n):
        assert within(h_neg(n, 128), mp_H_neg(n))

    def test_examples(self):
        assert abs(float(h_neg(1, 128).value) - 0.5304287) < 1e-7
        assert h_neg(2, 128).overlaps(lstar_eval(build_p(2), 130) * Fraction(1, 4))

    def test_domain(self):
        with pytest.raises(ValueError):
            h_neg(0)
