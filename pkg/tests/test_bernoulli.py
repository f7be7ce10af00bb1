"""Bernoulli numbers/polynomials, Fermat quotients, and the constant X."""

from fractions import Fraction

import pytest

from supercong.bernoulli import (
    BernoulliTable,
    _exact_bernoulli,
    bernoulli,
    bernoulli_poly,
    fermat_quotient,
    x_constant,
)
from supercong.errors import BadParameter
from supercong.padic import PAdic, congruent_mod

# first Bernoulli numbers by the defining recurrence (frozen exact values)
_EXACT = {
    0: Fraction(1),
    1: Fraction(-1, 2),
    2: Fraction(1, 6),
    4: Fraction(-1, 30),
    6: Fraction(1, 42),
    8: Fraction(-1, 30),
    10: Fraction(5, 66),
    12: Fraction(-691, 2730),
}


def _embed(q, p, digits=8):
    q = Fraction(q)
    if q == 0:
        return PAdic.zero(p)
    return PAdic.from_rational(q, p=p, digits=digits)


class TestExactRecurrence:
    def test_small_values(self):
        for n, want in _EXACT.items():
            assert _exact_bernoulli(n) == want

    def test_odd_values_vanish(self):
        for n in (3, 5, 7, 9, 11):
            assert _exact_bernoulli(n) == 0


class TestTable:
    @pytest.mark.parametrize("p", [7, 11, 101])
    def test_matches_exact_small_n(self, p):
        tab = BernoulliTable(p, 6, 2 * p - 4)
        for n, want in _EXACT.items():
            if n > 0 and n % (p - 1) == 0:
                continue
            got = tab.get(n)
            assert congruent_mod(got, _embed(want, p), 6)

    def test_large_index_beyond_witness_limit(self):
        # B_50 = 495057205241079648212477525/66 reduced mod p (table path, no witness)
        p = 101
        got = BernoulliTable(p, 6, 100).get(50)
        want = _embed(Fraction(495057205241079648212477525, 66), p)
        assert congruent_mod(got, want, 6)

    def test_odd_index_is_exact_zero(self):
        tab = BernoulliTable(7, 6, 10)
        assert tab.get(3).zero_flag
        assert congruent_mod(tab.get(1), _embed(Fraction(-1, 2), 7), 6)

    def test_non_integral_index_rejected(self):
        tab = BernoulliTable(7, 6, 10)
        with pytest.raises(BadParameter):
            tab.get(6)  # (p-1) | 6

    def test_bernoulli_wrapper_guards(self):
        with pytest.raises(BadParameter):
            bernoulli(-1, 7, 6)
        with pytest.raises(BadParameter):
            bernoulli(12, 7, 6)  # (p-1) | 12
        assert bernoulli(5, 7, 6).zero_flag


class TestBernoulliPoly:
    def test_half_value(self):
        # B_n(1/2) = (2^(1-n) - 1) B_n
        for p in (7, 11):
            for n in (2, 4, 6, 8):
                # every B_k with k <= n appears; all must be p-integral
                if any(k % (p - 1) == 0 for k in range(2, n + 1, 2)):
                    continue
                got = bernoulli_poly(n, Fraction(1, 2), p, 6)
                want = _embed((Fraction(2) ** (1 - n) - 1) * _EXACT[n], p)
                assert congruent_mod(got, want, 6)

    def test_shift_one(self):
        # B_n(1) = B_n + [n == 1]
        got = bernoulli_poly(3, Fraction(1), 7, 6)
        assert got.zero_flag or congruent_mod(got, PAdic.zero(7), 6)

    def test_sum_of_powers(self):
        # sum_{j<n} j^m = (B_{m+1}(n) - B_{m+1}) / (m+1)
        p = 11
        for m, n in ((2, 9), (3, 7), (4, 5)):
            power_sum = sum(j**m for j in range(n))
            lhs = _embed(power_sum, p)
            rhs = (
                bernoulli_poly(m + 1, Fraction(n), p, 6)
                - bernoulli(m + 1, p, 6)
            ).scale(Fraction(1, m + 1))
            assert congruent_mod(lhs, rhs, 5)


class TestFermatQuotient:
    @pytest.mark.parametrize("p", [7, 11, 13, 101])
    @pytest.mark.parametrize("a", [2, 3, 5])
    def test_definition(self, p, a):
        got = fermat_quotient(a, p, 6)
        want = _embed(Fraction(a ** (p - 1) - 1, p), p)
        assert congruent_mod(got, want, 6)

    def test_requires_unit(self):
        with pytest.raises(BadParameter):
            fermat_quotient(14, 7, 6)


class TestXConstant:
    def test_spot_value_p7(self):
        # X = B_4/4 - B_10/(4*7-8) = -1/120 - 1/264 = -2/165; -2/165 = 38 mod 49
        want = Fraction(-1, 30) / 4 - Fraction(5, 66) / 20
        assert want == Fraction(-2, 165)
        assert (-2 * pow(165, -1, 49)) % 49 == 38
        for method in ("bernoulli", "harmonic"):
            x = x_constant(7, 6, method)
            assert x.lift(2) % 49 == 38

    @pytest.mark.parametrize("p", [11, 13, 97, 101])
    def test_methods_agree(self, p):
        xb = x_constant(p, 6, "bernoulli")
        xh = x_constant(p, 6, "harmonic")
        assert xh.aprec == 2  # harmonic route is pinned mod p^2
        assert congruent_mod(xb, xh, 2)

    def test_guards(self):
        with pytest.raises(BadParameter):
            x_constant(5, 6)
        with pytest.raises(BadParameter):
            x_constant(7, 6, "nope")
