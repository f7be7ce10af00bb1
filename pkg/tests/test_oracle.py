"""Exact-rational oracle self-consistency."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supercong import oracle


class TestBasics:
    def test_harmonic_values(self):
        assert oracle.harmonic_exact(1) == 1
        assert oracle.harmonic_exact(4) == Fraction(25, 12)
        assert oracle.harmonic_exact(6) == Fraction(49, 20)

    def test_mhs_depth1_equals_power_sum(self):
        for n in (1, 5, 10):
            assert oracle.mhs_exact((2,), n) == sum(
                Fraction(1, k * k) for k in range(1, n + 1)
            )

    def test_mhs_alternating(self):
        assert oracle.mhs_exact((-1,), 3) == Fraction(-1) + Fraction(1, 2) - Fraction(1, 3)

    def test_mhs_strict_ordering(self):
        # depth > n gives the empty sum
        assert oracle.mhs_exact((1, 1, 1), 2) == 0

    def test_mhs_range_cap(self):
        with pytest.raises(ValueError):
            oracle.mhs_exact((1,), 201)

    def test_odd_harmonic(self):
        assert oracle.odd_harmonic_exact(1, 3) == 1 + Fraction(1, 3) + Fraction(1, 5)
        assert oracle.odd_harmonic_exact(2, 2) == 1 + Fraction(1, 9)

    def test_binom(self):
        assert oracle.binom_exact(Fraction(5), 2) == 10
        assert oracle.binom_exact(Fraction(-1, 2), 2) == Fraction(3, 8)
        assert oracle.binom_exact(Fraction(3), 5) == 0

    def test_s_sum_first_term(self):
        # S_1(a) = binom(a,1) binom(-1-a,1) = -a(1+a)
        for a in (Fraction(2), Fraction(-1, 2), Fraction(1, 3)):
            assert oracle.s_sum_exact(a, 1) == -a * (1 + a)


class TestShuffles:
    @settings(max_examples=40, deadline=None)
    @given(n=st.integers(min_value=1, max_value=40))
    def test_shuffle11(self, n):
        assert oracle.structural_identity("shuffle11", n).equal

    @settings(max_examples=40, deadline=None)
    @given(n=st.integers(min_value=1, max_value=40))
    def test_shuffle22(self, n):
        assert oracle.structural_identity("shuffle22", n).equal

    @settings(max_examples=30, deadline=None)
    @given(
        n=st.integers(min_value=1, max_value=25),
        a=st.fractions(min_value=-5, max_value=5, max_denominator=9).filter(
            lambda q: q != 0
        ),
    )
    def test_telescope(self, n, a):
        assert oracle.structural_identity("telescope", n, a).equal


class TestSigma:
    @settings(max_examples=40, deadline=None)
    @given(n=st.integers(min_value=1, max_value=40))
    def test_plain(self, n):
        assert oracle.sigma_identity("plain", n).equal

    @settings(max_examples=40, deadline=None)
    @given(n=st.integers(min_value=1, max_value=40))
    def test_weighted(self, n):
        assert oracle.sigma_identity("weighted", n).equal

    def test_unknown_names_rejected(self):
        with pytest.raises(ValueError):
            oracle.sigma_identity("nope", 3)
        with pytest.raises(ValueError):
            oracle.structural_identity("nope", 3)
        with pytest.raises(ValueError):
            oracle.structural_identity("telescope", 3)  # missing a
