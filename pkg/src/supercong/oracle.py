"""Exact rational ground truth: brute-force MHS, binomial sums, identities.

Everything here is computed with arbitrary-precision rationals and no
modular reduction; these are the independent oracles the fast modular
paths are tested against.  gmpy2.mpq is used internally when available
(identical semantics, much faster); public results are plain Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

__all__ = [
    "IdentityReport",
    "mhs_exact",
    "harmonic_exact",
    "odd_harmonic_exact",
    "binom_exact",
    "s_sum_exact",
    "sigma_identity",
    "structural_identity",
]


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    n: int
    lhs: Fraction
    rhs: Fraction
    equal: bool

    @property
    def difference(self) -> Fraction:
        return self.lhs - self.rhs


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def mhs_exact(sig: tuple[int, ...], n: int) -> Fraction:
    """H(a_1,...,a_m; n) by the naive O(n^m) nested loop."""
    if n > 200:
        raise ValueError("brute-force mhs capped at n <= 200")
    depth = len(sig)
    total = _Q(0)
    for ks in combinations(range(1, n + 1), depth):
        term = _Q(1)
        for a, k in zip(sig, ks):
            term *= _Q((-1) ** k if a < 0 else 1, k ** abs(a))
        total += term
    return _frac(total)


def harmonic_exact(n: int) -> Fraction:
    return _frac(sum((_Q(1, k) for k in range(1, n + 1)), _Q(0)))


def odd_harmonic_exact(r: int, k: int) -> Fraction:
    return _frac(sum((_Q(1, (2 * j - 1) ** r) for j in range(1, k + 1)), _Q(0)))


def binom_exact(a: Fraction, k: int) -> Fraction:
    """binom(a, k) for rational a, by the falling product."""
    out = _Q(1)
    a = _Q(a.numerator, a.denominator) if isinstance(a, Fraction) else _Q(a)
    for j in range(k):
        out *= (a - j) / _Q(j + 1)
    return _frac(out)


def s_sum_exact(a: Fraction, n: int) -> Fraction:
    """S_n(a) = sum_{k<=n} binom(a,k) binom(-1-a,k) / k, exactly."""
    aq = _Q(Fraction(a).numerator, Fraction(a).denominator)
    b1 = _Q(1)
    b2 = _Q(1)
    total = _Q(0)
    for k in range(1, n + 1):
        b1 *= (aq - (k - 1)) / _Q(k)
        b2 *= (-aq - k) / _Q(k)
        total += b1 * b2 / _Q(k)
    return _frac(total)


def sigma_identity(which: str, n: int) -> IdentityReport:
    """The two hypergeometric identities behind the half-range reductions.

    "plain":    sum_k binom(n,k)(-4)^k / (k^2 binom(2k,k))
                  = -2 sum_k (1/k) sum_{j<=k} 1/(2j-1)
    "weighted": same LHS with an extra inner odd-harmonic factor,
                  = -2 sum_k (1/k) sum_{j<=k} 1/(2j-1)^2
    """
    if which not in ("plain", "weighted"):
        raise ValueError(f"unknown sigma identity {which!r}")
    lhs = _Q(0)
    odd1 = _Q(0)
    odd2 = _Q(0)
    rhs = _Q(0)
    for k in range(1, n + 1):
        odd1 += _Q(1, 2 * k - 1)
        odd2 += _Q(1, (2 * k - 1) ** 2)
        base = _Q(comb(n, k) * (-4) ** k, k * k * comb(2 * k, k))
        if which == "plain":
            lhs += base
            rhs += _Q(-2, k) * odd1
        else:
            lhs += base * odd1
            rhs += _Q(-2, k) * odd2
    return IdentityReport(f"sigma-{which}", n, _frac(lhs), _frac(rhs), lhs == rhs)


def structural_identity(which: str, n: int, a: Fraction | None = None) -> IdentityReport:
    """Exact shuffle/telescoping identities.

    "shuffle11": H(1,1;n) = (H_n^2 - H(2;n)) / 2
    "shuffle22": 2 H(2,2;n) = H(2;n)^2 - H(4;n)
    "telescope": S_n(a) - S_n(a-1) = -2/a + (2/a) binom(a-1,n) binom(-a-1,n)
    """
    if which == "shuffle11":
        lhs = 2 * _sum_pair(1, 1, n)
        h1 = sum((_Q(1, k) for k in range(1, n + 1)), _Q(0))
        h2 = sum((_Q(1, k * k) for k in range(1, n + 1)), _Q(0))
        rhs = h1 * h1 - h2
    elif which == "shuffle22":
        lhs = 2 * _sum_pair(2, 2, n)
        h2 = sum((_Q(1, k * k) for k in range(1, n + 1)), _Q(0))
        h4 = sum((_Q(1, k**4) for k in range(1, n + 1)), _Q(0))
        rhs = h2 * h2 - h4
    elif which == "telescope":
        if a is None or a == 0:
            raise ValueError("telescope needs a nonzero rational a")
        a = Fraction(a)
        diff = s_sum_exact(a, n) - s_sum_exact(a - 1, n)
        lhs = _Q(diff.numerator, diff.denominator)
        two_over_a = _Q(2 * a.denominator, a.numerator)
        prod = binom_exact(a - 1, n) * binom_exact(-a - 1, n)
        rhs = -two_over_a + two_over_a * _Q(prod.numerator, prod.denominator)
    else:
        raise ValueError(f"unknown structural identity {which!r}")
    return IdentityReport(which, n, _frac(_Q(lhs)), _frac(_Q(rhs)), lhs == rhs)


def _sum_pair(r1: int, r2: int, n: int):
    """H(r1, r2; n) by a direct double loop (exact)."""
    total = _Q(0)
    inner = _Q(0)
    for k2 in range(2, n + 1):
        inner += _Q(1, (k2 - 1) ** r1)
        total += inner * _Q(1, k2**r2)
    return total
