import threading
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaquot import exact
from zetaquot.exact import (
    CombiTables,
    bernoulli,
    binomial,
    diff_monomial,
    format_rational,
    harmonic,
    sf,
    stirling,
    tangent_number,
)


def pascal_row(n):
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row


def brute_diff(n, k, base):
    return sum((-1) ** (k - i) * binomial(k, i) * (base + i) ** n for i in range(k + 1))


class TestBinomial:
    def test_examples(self):
        assert binomial(5, 2) == 10
        assert binomial(7, 0) == 1
        assert binomial(60, 30) == 118264581564861424

    def test_matches_pascal(self):
        for n in range(0, 61):
            assert [binomial(n, k) for k in range(n + 1)] == pascal_row(n)

    def test_out_of_range_k(self):
        assert binomial(5, -1) == 0
        assert binomial(5, 6) == 0

    def test_negative_n(self):
        with pytest.raises(ValueError):
            binomial(-1, 0)


class TestStirling:
    def test_examples(self):
        assert stirling(2, 4, 2) == 7
        assert stirling(1, 4, 2) == 11
        for n in range(0, 10):
            assert stirling(1, n, n) == 1
            assert stirling(2, n, n) == 1

    def test_against_sympy(self):
        for n in range(0, 25):
            for k in range(0, n + 1):
                assert stirling(2, n, k) == sympy.functions.combinatorial.numbers.stirling(n, k, kind=2)
                assert stirling(1, n, k) == sympy.functions.combinatorial.numbers.stirling(n, k, kind=1, signed=True)

    def test_first_kind_expands_falling_factorial(self):
        x = sympy.Symbol("x")
        for n in range(1, 12):
            poly = sympy.Poly(sympy.ff(x, n), x)
            assert [stirling(1, n, k) for k in range(n + 1)] == [poly.coeff_monomial(x**k) for k in range(n + 1)]

    @pytest.mark.parametrize("args", [(3, 2, 1), (1, 2, 3), (2, -1, 0), (2, 3, -1)])
    def test_domain_errors(self, args):
        with pytest.raises(ValueError):
            stirling(*args)


class TestSf:
    def test_examples(self):
        assert sf(4, 2) == 14
        assert sf(3, 2) == 6
        for n in range(1, 10):
            assert sf(n, 0) == 0
        assert sf(0, 0) == 1

    def test_recurrence(self):
        for n in range(0, 40):
            for k in range(1, n + 2):
                left = sf(n + 1, k)
                right = k * ((sf(n, k) if k <= n else 0) + sf(n, k - 1))
                assert left == right

    def test_equals_difference_at_zero(self):
        for n in range(1, 20):
            for k in range(n + 1):
                assert sf(n, k) == brute_diff(n, k, 0)

    def test_binomial_basis_expansion(self):
        for n in range(0, 41):
            for x in range(0, n + 1):
                assert x**n == sum(sf(n, k) * binomial(x, k) for k in range(n + 1))

    def test_domain_error(self):
        with pytest.raises(ValueError):
            sf(2, 3)


class TestDiffMonomial:
    def test_examples(self):
        assert diff_monomial(3, 2, 1) == 12
        assert diff_monomial(3, 3, 0) == 6
        for n in range(1, 8):
            assert diff_monomial(n, 0, 1) == 1

    def test_identity(self):
        for n in range(1, 31):
            for k in range(1, 31):
                value = diff_monomial(n, k, 1)
                upper = sf(n, k + 1) if k + 1 <= n else 0
                lower = sf(n, k) if k <= n else 0
                assert value == lower + upper
                assert (k + 1) * value == diff_monomial(n + 1, k + 1, 0)

    @given(st.integers(0, 25), st.integers(0, 25), st.sampled_from([0, 1]))
    def test_matches_brute_force(self, n, k, base):
        assert diff_monomial(n, k, base) == brute_diff(n, k, base)


class TestHarmonic:
    def test_examples(self):
        assert harmonic(1) == 1
        assert harmonic(2) == Fraction(3, 2)
        assert harmonic(4) == Fraction(25, 12)

    def test_against_sympy(self):
        for n in range(1, 60):
            assert harmonic(n) == Fraction(str(sympy.harmonic(n)))

    def test_domain(self):
        with pytest.raises(ValueError):
            harmonic(0)


class TestBernoulli:
    def test_examples(self):
        assert bernoulli(2) == Fraction(1, 6)
        assert bernoulli(4) == Fraction(-1, 30)
        assert bernoulli(12) == Fraction(-691, 2730)
        assert bernoulli(0) == 1
        assert bernoulli(1) == Fraction(-1, 2)

    def test_odd_vanish(self):
        assert all(bernoulli(n) == 0 for n in range(3, 80, 2))

    def test_against_sympy(self):
        # sympy's B_1 convention differs; compare from n = 2 on
        for n in range(2, 80):
            assert bernoulli(n) == Fraction(str(sympy.bernoulli(n)))


class TestTangent:
    def test_examples(self):
        assert tangent_number(5) == 16
        assert tangent_number(7) == -272
        assert tangent_number(2) == 0

    def test_against_series(self):
        x = sympy.Symbol("x")
        series = sympy.series(sympy.tanh(x), x, 0, 22).removeO()
        for n in range(22):
            assert tangent_number(n) == series.coeff(x, n) * sympy.factorial(n)

    def test_bernoulli_formula(self):
        for n in range(1, 41):
            closed = Fraction(2 ** (n + 1) * (2 ** (n + 1) - 1)) * bernoulli(n + 1) / (n + 1)
            assert tangent_number(n) == closed

    def test_sign_pattern(self):
        for n in range(1, 40, 2):
            assert tangent_number(n) * (-1) ** ((n - 1) // 2) > 0
        for n in range(0, 40, 2):
            assert tangent_number(n) == 0


def test_format_rational():
    assert format_rational(Fraction(-691, 2730)) == "-691/2730"
    assert format_rational(7) == "7"
    assert format_rational(Fraction(4, 2)) == "2"


@settings(max_examples=100)
@given(st.integers(1, 40).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))))
def test_stirling_recurrences(nk):
    n, k = nk
    above = k <= n - 1
    assert stirling(2, n, k) == (k * stirling(2, n - 1, k) if above else 0) + stirling(2, n - 1, k - 1)
    assert stirling(1, n, k) == (-(n - 1) * stirling(1, n - 1, k) if above else 0) + stirling(1, n - 1, k - 1)


def test_concurrent_fill_is_consistent():
    tables = CombiTables()
    results = {}
    barrier = threading.Barrier(8)

    def work(i):
        barrier.wait()
        n = 30 + 5 * i
        results[i] = (
            [tables.s2(n, k) for k in range(n + 1)],
            [tables.s1(n, k) for k in range(n + 1)],
            tables.bernoulli(n),
            tables.harmonic(n),
            tables.zigzag(n),
        )

    threads = [threading.Thread(target=work, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for i, (s2, s1, b, h, z) in results.items():
        n = 30 + 5 * i
        assert s2 == [exact.stirling(2, n, k) for k in range(n + 1)]
        assert s1 == [exact.stirling(1, n, k) for k in range(n + 1)]
        assert b == bernoulli(n)
        assert h == harmonic(n)
        assert z == exact.TABLES.zigzag(n)
