"""Congruence registry and prime-sweep engine.

Each check pairs a directly-summed left-hand side with an independently
computed closed-form right-hand side and compares them modulo p**e via
congruent_mod.  Checks are pure functions of (prime, params); the sweep
evaluates a set of checks over a prime range with an optional process
pool and emits results deterministically ordered by (prime, id, params).

Shared per-prime quantities (inverse tables, the constant X, Fermat
quotients, B_{p-3}, H(3,1;(p-1)/2)) are cached on a PrimeContext.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import kernels
from .bernoulli import _truncate, bernoulli, fermat_quotient, x_constant
from .binomial import reduce_point, s_sum
from .errors import (
    BadParameter,
    InsufficientPrecision,
    PrecisionExhausted,
    PrimeTooSmall,
    UnknownCheck,
)
from .harmonic import mhs
from .padic import PAdic, congruent_mod

__all__ = [
    "DEFAULT_A_SAMPLES",
    "CheckDefinition",
    "CheckResult",
    "PrimeContext",
    "registry",
    "render_padic",
    "run_check",
    "sweep",
]

DEFAULT_A_SAMPLES: tuple[Fraction, ...] = (
    Fraction(-1, 2),
    Fraction(1, 3),
    Fraction(-1, 3),
    Fraction(2, 5),
    Fraction(-2, 3),
    Fraction(5),
    Fraction(1, 4),
)

# below this bound the O(p^2) Bernoulli table is cheap: use it and
# cross-check the O(p) harmonic shortcuts against it
X_TABLE_LIMIT = 1000

MIN_PRIME = 7


class _Skip(Exception):
    """Raised by an evaluator when a precondition fails for (p, params)."""


@dataclass(frozen=True)
class CheckDefinition:
    id: str
    description: str
    min_prime: int
    modulus_exponent: int
    param_space: Callable[[int, tuple[Fraction, ...]], list[dict]]
    evaluator: Callable


@dataclass(frozen=True)
class CheckResult:
    check: str
    prime: int
    params: tuple[str, ...]
    status: str
    lhs: str
    rhs: str
    modulus: str
    note: str = ""


def render_padic(x: PAdic, p: int, e: int) -> str:
    """Render a value as known modulo p**e: "p^v * u mod p^e"."""
    if x.zero_flag:
        return "0"
    v = x.valuation
    if x.digits == 0 or v >= e:
        return f"0 mod {p}^{e}"
    u = x.unit % p ** (e - v)
    return f"{p}^{v} * {u} mod {p}^{e}"


class PrimeContext:
    """Per-prime cache of inverse tables and recurring constants."""

    def __init__(self, p: int, digits: int = 6, t_sign: str = "minus"):
        if p < MIN_PRIME:
            raise PrimeTooSmall(f"checks require p >= {MIN_PRIME}, got {p}")
        if digits < 4:
            raise BadParameter("contexts need at least 4 working digits")
        if t_sign not in ("minus", "plus"):
            raise BadParameter(f"unknown t_sign {t_sign!r}")
        self.p = p
        self.digits = digits
        self.t_sign = t_sign
        self.m = p**digits
        self.half = (p - 1) // 2
        self._memo: dict = {}

    def _cached(self, key, make):
        val = self._memo.get(key)
        if val is None:
            val = make()
            self._memo[key] = val
        return val

    # -- kernel-backed primitives -------------------------------------------

    def inv(self) -> list[int]:
        return self._cached(
            "inv", lambda: kernels.inverse_table(self.p - 1, self.p, self.m)
        )

    def inv4(self) -> list[int]:
        m4 = self.p**4
        return self._cached("inv4", lambda: [x % m4 for x in self.inv()])

    def mhs(self, exps: tuple[int, ...], n: int) -> PAdic:
        return self._cached(
            ("mhs", exps, n), lambda: mhs(exps, n, self.p, self.digits)
        )

    def nested(self, outer: int, factors: tuple, n: int) -> PAdic:
        """sum_{k<=n} k^-outer * prod of prefix factors (kind, r, power)."""

        def make():
            val = kernels.weighted_sum(
                outer, False, None, factors, n, self.p, self.m, self.inv()
            )
            return PAdic.from_int_exact(val, p=self.p, aprec=self.digits)

        return self._cached(("nested", outer, factors, n), make)

    def central(self, lo: int, hi: int, denom: int) -> PAdic:
        """sum_{k=lo}^{hi} binom(2k,k)^2 / (k * denom^k)."""

        def make():
            cinv = pow(denom, -1, self.m)
            val = kernels.central_sum(lo, hi, cinv, self.p, self.m, self.inv())
            return PAdic.from_int_exact(val, p=self.p, aprec=self.digits)

        return self._cached(("central", lo, hi, denom), make)

    def geom(self, c: int, outer: int, n: int) -> PAdic:
        def make():
            val = kernels.geom_power_sum(
                c % self.m, outer, n, self.p, self.m, self.inv()
            )
            return PAdic.from_int_exact(val, p=self.p, aprec=self.digits)

        return self._cached(("geom", c, outer, n), make)

    # -- constants -----------------------------------------------------------

    def q2(self) -> PAdic:
        return self._cached("q2", lambda: fermat_quotient(2, self.p, self.digits))

    def x(self) -> PAdic:
        """X, known mod p^2 at least; both routes cross-checked when cheap."""

        def make():
            if self.p <= X_TABLE_LIMIT:
                xb = x_constant(self.p, self.digits, "bernoulli")
                xh = x_constant(self.p, self.digits, "harmonic")
                if not congruent_mod(xb, xh, 2):
                    raise AssertionError(f"X route mismatch at p={self.p}")
                return xb
            return x_constant(self.p, self.digits, "harmonic")

        return self._cached("x", make)

    def b_pm3(self) -> PAdic:
        """B_{p-3}: full table below the limit, else -H(3;(p-1)/2)/2 mod p."""

        def make():
            if self.p <= X_TABLE_LIMIT:
                return bernoulli(self.p - 3, self.p, self.digits)
            value = self.mhs((3,), self.half).scale(Fraction(-1, 2))
            return _truncate(value, 1)

        return self._cached("b_pm3", make)

    def h31(self) -> PAdic:
        return self._cached("h31", lambda: self.mhs((3, 1), self.half))

    # -- parameter helpers ----------------------------------------------------

    def embed(self, a: Fraction) -> PAdic:
        return PAdic.from_rational(a, p=self.p, digits=self.digits)

    def reduce(self, a: Fraction):
        return reduce_point(a, self.p, self.digits)

    def theorem_t(self, a: Fraction) -> tuple[int, PAdic, str]:
        """(<a>_p, t, note) with t per the configured sign convention."""
        rp = self.reduce(a)
        if self.t_sign == "minus":
            return rp.residue, rp.t, ""
        t_plus = (Fraction(a) + rp.residue) / self.p
        if t_plus == 0:
            return rp.residue, PAdic.zero(self.p), "plus-sign t"
        t = PAdic.from_rational(t_plus, p=self.p, digits=self.digits)
        note = "plus-sign t"
        if t.valuation < 0:
            note = f"plus-sign t = {t_plus} is not p-integral"
        return rp.residue, t, note

    def one(self) -> PAdic:
        return PAdic.from_rational(1, p=self.p, digits=self.digits)

    def int_sum(self, values: list[PAdic]) -> PAdic:
        """Exact modular sum of p-adic integers (no cancellation loss)."""
        aprec = min([self.digits] + [v.aprec for v in values if v.aprec is not None])
        total = sum(v.lift(aprec) for v in values)
        return PAdic.from_int_exact(total, p=self.p, aprec=aprec)


# ---------------------------------------------------------------------------
# parameter spaces

_ODD_FACTOR = ("odd", 1, 1)
_ODD_SQ_FACTOR = ("odd", 1, 2)
_ODD2_FACTOR = ("odd", 2, 1)
_HARM_FACTOR = ("harmonic", 1, 1)
_H2K_FACTOR = ("h2k", 1, 1)


def _ps_none(p, a_samples):
    return [{}]


def _ps_ar(p, a_samples):
    return [
        {"a": a, "r": r} for a in range(1, 7) for r in range(1, 7) if a * r <= 6
    ]


def _ps_a_small(lo, hi):
    def ps(p, a_samples):
        return [{"a": a} for a in range(lo, hi + 1)]

    return ps


def _ps_ab(p, a_samples):
    return [
        {"a": a, "b": b}
        for a in range(1, 5)
        for b in range(1, 5)
        if (a + b) % 2 == 1 and a + b <= 5
    ]


def _ps_ab_variant(p, a_samples):
    return [
        dict(base, variant=v)
        for base in _ps_ab(p, a_samples)
        for v in ("neg-first", "neg-second")
    ]


def _ps_members(*members):
    def ps(p, a_samples):
        return [{"member": m} for m in members]

    return ps


def _ps_samples(p, a_samples):
    return [{"a": a} for a in a_samples if Fraction(a).denominator % p != 0]


# ---------------------------------------------------------------------------
# evaluators: each returns (lhs, rhs, e) or (lhs, rhs, e, note)


def _ev_known_i(ctx, a, r):
    ar = a * r
    if ctx.p <= ar + 2:
        raise _Skip(f"requires p > {ar + 2}")
    lhs = ctx.mhs((a,) * r, ctx.p - 1)
    if ar % 2 == 1:
        coeff = Fraction((-1) ** r * a * (ar + 1), 2 * (ar + 2))
        rhs = bernoulli(ctx.p - ar - 2, ctx.p, ctx.digits).shift(2).scale(coeff)
        return lhs, rhs, 3
    coeff = Fraction((-1) ** (r - 1) * a, ar + 1)
    rhs = bernoulli(ctx.p - ar - 1, ctx.p, ctx.digits).shift(1).scale(coeff)
    return lhs, rhs, 2


def _ev_known_ii(ctx, a):
    if ctx.p <= a + 2:
        raise _Skip(f"requires p > {a + 2}")
    lhs = ctx.mhs((a,), ctx.half)
    if a == 1:
        return lhs, ctx.q2().scale(-2), 1
    if a % 2 == 1:
        rhs = bernoulli(ctx.p - a, ctx.p, ctx.digits).scale(Fraction(-(2**a - 2), a))
        return lhs, rhs, 1
    coeff = Fraction(a * (2 ** (a + 1) - 1), 2 * (a + 1))
    rhs = bernoulli(ctx.p - a - 1, ctx.p, ctx.digits).shift(1).scale(coeff)
    return lhs, rhs, 2


def _ev_known_iii(ctx, a, b):
    if ctx.p <= a + b + 1:
        raise _Skip(f"requires p > {a + b + 1}")
    lhs = ctx.mhs((a, b), ctx.p - 1)
    coeff = Fraction((-1) ** b * math.comb(a + b, a), a + b)
    rhs = bernoulli(ctx.p - a - b, ctx.p, ctx.digits).scale(coeff)
    return lhs, rhs, 1


def _ev_known_iv(ctx, a, b):
    if ctx.p <= a + b:
        raise _Skip(f"requires p > {a + b}")
    lhs = ctx.mhs((a, b), ctx.half)
    coeff = Fraction(
        (-1) ** b * math.comb(a + b, a) + 2 ** (a + b) - 2, 2 * (a + b)
    )
    rhs = bernoulli(ctx.p - a - b, ctx.p, ctx.digits).scale(coeff)
    return lhs, rhs, 1


def _ev_known_v(ctx, a):
    lhs = ctx.mhs((-a,), ctx.p - 1)
    p, N = ctx.p, ctx.digits
    if a % 2 == 1:
        c = (1 - pow(2, p - a, ctx.m)) % ctx.m
        coeff = PAdic.from_int_exact(c, p=p, aprec=N)
        rhs = (bernoulli(p - a, p, N) * coeff).scale(Fraction(-2, a))
        return lhs, rhs, 1
    c = (1 - pow(2, p - 1 - a, ctx.m)) % ctx.m
    coeff = PAdic.from_int_exact(c, p=p, aprec=N)
    rhs = (bernoulli(p - 1 - a, p, N) * coeff).shift(1).scale(Fraction(a, a + 1))
    return lhs, rhs, 2


def _ev_known_vi(ctx, a, b, variant):
    sig = (-a, b) if variant == "neg-first" else (a, -b)
    lhs = ctx.mhs(sig, ctx.p - 1)
    c = (1 - pow(2, ctx.p - a - b, ctx.m)) % ctx.m
    coeff = PAdic.from_int_exact(c, p=ctx.p, aprec=ctx.digits)
    rhs = (bernoulli(ctx.p - a - b, ctx.p, ctx.digits) * coeff).scale(
        Fraction(1, a + b)
    )
    return lhs, rhs, 1


_VII_ZERO_SIGS = {"H(-4)": (-4,), "H(2,2)": (2, 2), "H(1,3)": (1, 3)}


def _ev_known_vii_zero(ctx, member):
    lhs = ctx.mhs(_VII_ZERO_SIGS[member], ctx.p - 1)
    return lhs, PAdic.zero(ctx.p), 1


def _ev_known_vii_2m1(ctx):
    lhs = ctx.mhs((2, -1), ctx.p - 1)
    rhs = (
        ctx.x().scale(Fraction(-3, 2))
        - (ctx.q2() * ctx.b_pm3()).shift(1).scale(Fraction(7, 6))
        + ctx.mhs((1, -3), ctx.p - 1).shift(1)
    )
    return lhs, rhs, 2


_VII_CLUSTER = {
    "H(1,2)": ((1, 2), Fraction(-1, 2)),
    "H(2,1)": ((2, 1), Fraction(1, 2)),
    "H(-3)": ((-3,), Fraction(1)),
    "H(1,-2)": ((1, -2), Fraction(-2)),
}


def _ev_known_vii_cluster(ctx, member):
    sig, coeff = _VII_CLUSTER[member]
    lhs = ctx.mhs(sig, ctx.p - 1).scale(coeff)
    return lhs, ctx.x().scale(3), 2


def _ev_known_viii_a(ctx, member):
    rhs = ctx.x().shift(1).scale(-4)
    if member == "harmonic-number":
        lhs = ctx.mhs((1,), ctx.p - 1).scale(-2).shift(-1)
    elif member == "full-range":
        lhs = ctx.mhs((2,), ctx.p - 1)
    else:
        # stated with a 2/7 coefficient on the left; moving the 7/2 to the
        # right keeps the comparison exact when p = 7
        lhs = ctx.mhs((2,), ctx.half)
        rhs = rhs.scale(Fraction(7, 2))
    return lhs, rhs, 3


def _ev_known_viii_b(ctx):
    return ctx.mhs((3,), ctx.half), ctx.x().scale(12), 2


def _ev_tauraso_6k(ctx):
    lhs = ctx.central(1, ctx.p - 1, 16)
    rhs = ctx.mhs((1,), ctx.half).scale(-2)
    return lhs, rhs, 3


def _ev_sun_6k_tail(ctx):
    lhs = ctx.central(ctx.half + 1, ctx.p - 1, 16)
    rhs = ctx.b_pm3().shift(2).scale(Fraction(7, 2))
    return lhs, rhs, 3


def _ev_tauraso_param(ctx, a):
    rp = ctx.reduce(a)
    n, t = rp.residue, rp.t
    lhs = s_sum(ctx.embed(a), ctx.p - 1, ctx.p, ctx.digits)
    rhs = ctx.mhs((1,), n).scale(-2) + (t.shift(1) * ctx.mhs((2,), n)).scale(2)
    return lhs, rhs, 2


def _ev_sun_param(ctx, a):
    rp = ctx.reduce(a)
    n, t = rp.residue, rp.t
    lhs = s_sum(ctx.embed(a), ctx.p - 1, ctx.p, ctx.digits)
    rhs = (
        ctx.mhs((1,), n).scale(-2)
        + (t.shift(1) * ctx.mhs((2,), n)).scale(2)
        + (t.shift(2) * ctx.mhs((3,), n)).scale(2)
        - (t.shift(2) * ctx.b_pm3()).scale(Fraction(2, 3))
    )
    return lhs, rhs, 3


def _ev_thm11_full(ctx, a):
    n, t, note = ctx.theorem_t(a)
    lhs = s_sum(ctx.embed(a), ctx.p - 1, ctx.p, ctx.digits)
    one = ctx.one()
    poly = (t * t).scale(2) + t.scale(4) + one
    hk3 = ctx.nested(3, (_HARM_FACTOR,), n)
    rhs = (
        (t.shift(2) * ctx.x()).scale(4)
        - ctx.mhs((1,), n).scale(2)
        + (t.shift(1) * ctx.mhs((2,), n)).scale(2)
        + (t.shift(2) * ctx.mhs((3,), n)).scale(2)
        - (t.shift(3) * poly * ctx.mhs((4,), n)).scale(2)
        + (t.shift(3) * (t + one) * hk3).scale(4)
    )
    return lhs, rhs, 4, note


def _ev_thm11_half(ctx, a):
    n, t, note = ctx.theorem_t(a)
    if n > ctx.half:
        raise _Skip(f"<a>_p = {n} exceeds (p-1)/2")
    lhs = s_sum(ctx.embed(a), ctx.half, ctx.p, ctx.digits)
    t2 = t * t
    x = ctx.x()
    rhs = (
        -(t2.shift(2) * x).scale(12)
        + (t.shift(2) * x).scale(14)
        - ctx.mhs((1,), n).scale(2)
        + (t.shift(1) * ctx.mhs((2,), n)).scale(4)
        - (t2.shift(2) * ctx.mhs((3,), n)).scale(6)
        + ((t2 * t).shift(3) * ctx.mhs((4,), n)).scale(8)
        + (t.shift(2) * ctx.nested(2, (_ODD_FACTOR,), n)).scale(4)
        - (t2.shift(3) * ctx.nested(3, (_ODD_FACTOR,), n)).scale(8)
        + (t.shift(3) * ctx.nested(2, (_ODD_SQ_FACTOR,), n)).scale(4)
        - (t2.shift(3) * ctx.nested(2, (_ODD2_FACTOR,), n)).scale(8)
    )
    return lhs, rhs, 4, note


def _ev_eq_1_0(ctx):
    lhs = ctx.central(1, ctx.p - 1, 16)
    rhs = ctx.mhs((1,), ctx.half).scale(-2) - ctx.nested(
        3, (_HARM_FACTOR,), ctx.half
    ).shift(3)
    return lhs, rhs, 4


def _ev_eq_1_1(ctx):
    lhs = ctx.central(ctx.half + 1, ctx.p - 1, 16)
    rhs = ctx.mhs((1,), ctx.p - 1).scale(Fraction(-21, 2))
    return lhs, rhs, 4


def _lem23_scan(ctx, t: PAdic, half_range: bool):
    """Exact mod-p^4 scan of the generalized-binomial product over all k.

    The product B(k) = binom(pt+k-1, top) * binom(-pt-k-1, top) is carried
    from k to k+1 by a unit ratio, so the whole row costs O(p) modular
    operations; each B(k) is compared against the closed form.
    """
    p = ctx.p
    m4 = p**4
    top = ctx.half if half_range else p - 1
    T = 0 if t.zero_flag else p * t.lift(3) % m4
    inv4 = ctx.inv4()

    num = 1
    for j in range(top):
        num = num * (T - j) % m4
    for j in range(top):
        num = num * (-T - 2 - j) % m4
    fact = 1
    for j in range(2, top + 1):
        fact = fact * j % m4
    b = num * pow(fact * fact % m4, -1, m4) % m4

    h = o1 = o2 = 0
    first_bad = None
    last = None
    for k in range(1, top + 1):
        ik = inv4[k]
        if half_range:
            io = inv4[2 * k - 1]
            o1 = (o1 + io) % m4
            o2 = (o2 + io * io) % m4
            tk = T * ik % m4
            inner = (
                1 - tk + 2 * p * o1 + tk * tk + 2 * p * p * o1 * o1
                - 2 * tk * p * o1 - 4 * T * p * o2
            ) % m4
            rhs_k = tk * inner % m4
        else:
            h = (h + ik) % m4
            inner = (1 + 2 * p * h - p * ik - 2 * T * ik) % m4
            rhs_k = T * (T + p) % m4 * ik % m4 * ik % m4 * inner % m4
        last = (k, b, rhs_k)
        if b != rhs_k and first_bad is None:
            first_bad = last
        if k < top:
            if half_range:
                ratio = (
                    (T + k) % m4 * ((T + k + 1 + ctx.half) % m4) % m4
                    * pow((T + k - ctx.half) % m4, -1, m4) % m4
                    * pow((T + k + 1) % m4, -1, m4) % m4
                )
            else:
                ratio = (
                    (T + k) % m4 * ((T + k + p) % m4) % m4
                    * pow((T + k - p + 1) % m4, -1, m4) % m4
                    * pow((T + k + 1) % m4, -1, m4) % m4
                )
            b = b * ratio % m4

    k, bval, rval = first_bad if first_bad is not None else last
    lhs = PAdic.from_int_exact(bval, p=p, aprec=4)
    rhs = PAdic.from_int_exact(rval, p=p, aprec=4)
    note = (
        f"first mismatch at k={k}" if first_bad is not None else f"all k in 1..{top}"
    )
    return lhs, rhs, 4, note


def _ev_lem23_full(ctx, a):
    return _lem23_scan(ctx, ctx.reduce(a).t, False)


def _ev_lem23_half(ctx, a):
    return _lem23_scan(ctx, ctx.reduce(a).t, True)


def _ev_lem24_full(ctx, a):
    t = ctx.reduce(a).t
    lhs = s_sum(t.shift(1), ctx.p - 1, ctx.p, ctx.digits)
    rhs = (t.shift(2) * ctx.x()).scale(4)
    return lhs, rhs, 4


def _ev_lem24_half(ctx, a):
    t = ctx.reduce(a).t
    lhs = s_sum(t.shift(1), ctx.half, ctx.p, ctx.digits)
    x = ctx.x()
    rhs = -((t * t).shift(2) * x).scale(12) + (t.shift(2) * x).scale(14)
    return lhs, rhs, 4


def _ev_lem25_ds1(ctx):
    lhs = ctx.nested(2, (_ODD_FACTOR,), ctx.half)
    rhs = (
        ctx.x().scale(Fraction(-21, 2))
        + (ctx.q2() * ctx.b_pm3()).shift(1).scale(2)
        - ctx.h31().shift(1).scale(Fraction(1, 2))
    )
    return lhs, rhs, 2


def _ev_lem25_ds2(ctx):
    lhs = ctx.nested(3, (_HARM_FACTOR,), ctx.half)
    rhs = (ctx.q2() * ctx.b_pm3()).scale(4) - ctx.h31()
    return lhs, rhs, 1


def _ev_lem25_ds3(ctx):
    lhs = ctx.nested(1, (_ODD2_FACTOR,), ctx.half)
    rhs = (
        ctx.x().scale(Fraction(21, 4))
        - (ctx.q2() * ctx.b_pm3()).shift(1)
        + ctx.mhs((1, -3), ctx.p - 1).shift(1)
        + ctx.h31().shift(1).scale(Fraction(1, 4))
    )
    return lhs, rhs, 2


def _ev_lem_bridge(ctx):
    lhs = ctx.mhs((1, 3), ctx.half)
    rhs = ctx.mhs((1, -3), ctx.p - 1).scale(4)
    return lhs, rhs, 1


def _ev_lem26(ctx):
    parts = [
        ctx.nested(2, (_ODD_SQ_FACTOR,), ctx.half),
        ctx.nested(3, (_ODD_FACTOR,), ctx.half),
        ctx.nested(2, (_ODD2_FACTOR,), ctx.half),
    ]
    return ctx.int_sum(parts), PAdic.zero(ctx.p), 1


def _ev_lem31(ctx):
    q = ctx.q2()
    lhs = ctx.mhs((1,), ctx.half)
    rhs = (
        q.scale(-2)
        + (q * q).shift(1)
        - (q**3).shift(2).scale(Fraction(2, 3))
        + (q**4).shift(3).scale(Fraction(1, 2))
        + ctx.x().shift(2).scale(Fraction(7, 2))
    )
    return lhs, rhs, 4


def _ev_thm12(ctx):
    q = ctx.q2()
    lhs = ctx.geom(2, 3, ctx.p - 1)
    rhs = (
        (q**3).scale(Fraction(-1, 3))
        + ctx.x().scale(Fraction(7, 4))
        + (q**4).shift(1).scale(Fraction(5, 12))
        + (q * ctx.b_pm3()).shift(1).scale(Fraction(7, 6))
        - ctx.nested(3, (_HARM_FACTOR,), ctx.half).shift(1).scale(Fraction(3, 8))
    )
    return lhs, rhs, 2


def _ev_proofstep_u1(ctx):
    lhs = ctx.nested(2, (_ODD_SQ_FACTOR,), ctx.half)
    rhs = ctx.mhs((1, -3), ctx.p - 1).scale(2)
    return lhs, rhs, 1


def _ev_proofstep_u2(ctx):
    lhs = ctx.nested(2, (_ODD2_FACTOR,), ctx.half)
    rhs = ctx.mhs((-2, 2), ctx.p - 1).scale(-2)
    return lhs, rhs, 1


def _ev_proofstep_u3(ctx):
    lhs = ctx.nested(3, (_ODD_FACTOR,), ctx.half)
    rhs = ctx.mhs((1, -3), ctx.p - 1).scale(4) - ctx.mhs((1, 3), ctx.half).scale(
        Fraction(1, 2)
    )
    return lhs, rhs, 1


def _ev_proofstep_h2k(ctx):
    lhs = ctx.nested(2, (_H2K_FACTOR,), ctx.half)
    rhs = ctx.x().scale(-9)
    return lhs, rhs, 2


def _ev_proofstep_1221(ctx):
    lhs = ctx.mhs((2, 1), ctx.half)
    rhs = (
        ctx.x().scale(-3)
        - (ctx.q2() * ctx.b_pm3()).shift(1).scale(Fraction(2, 3))
        - ctx.h31().shift(1)
    )
    return lhs, rhs, 2


# ---------------------------------------------------------------------------
# registry

_CATALOG: list[CheckDefinition] = [
    CheckDefinition(
        "known-i",
        "repeated-exponent harmonic sums over 1..p-1 vs Bernoulli closed form",
        7, 3, _ps_ar, _ev_known_i,
    ),
    CheckDefinition(
        "known-ii",
        "power sums over the half range vs Fermat-quotient/Bernoulli values",
        7, 2, _ps_a_small(1, 5), _ev_known_ii,
    ),
    CheckDefinition(
        "known-iii",
        "depth-2 harmonic sums over 1..p-1, odd total weight, mod p",
        7, 1, _ps_ab, _ev_known_iii,
    ),
    CheckDefinition(
        "known-iv",
        "depth-2 harmonic sums over the half range, odd total weight, mod p",
        7, 1, _ps_ab, _ev_known_iv,
    ),
    CheckDefinition(
        "known-v",
        "alternating power sums over 1..p-1 vs Bernoulli closed form",
        7, 2, _ps_a_small(2, 5), _ev_known_v,
    ),
    CheckDefinition(
        "known-vi",
        "depth-2 sums with one alternating slot, odd total weight, mod p",
        7, 1, _ps_ab_variant, _ev_known_vi,
    ),
    CheckDefinition(
        "known-vii-zero",
        "three weight-4 sums over 1..p-1 that vanish mod p",
        7, 1, _ps_members("H(-4)", "H(2,2)", "H(1,3)"), _ev_known_vii_zero,
    ),
    CheckDefinition(
        "known-vii-2m1",
        "H(2,-1;p-1) against its X / Fermat-quotient expansion mod p^2",
        7, 2, _ps_none, _ev_known_vii_2m1,
    ),
    CheckDefinition(
        "known-vii-cluster",
        "four weight-3 sums that all reduce to 3X mod p^2",
        7, 2,
        _ps_members("H(1,2)", "H(2,1)", "H(-3)", "H(1,-2)"),
        _ev_known_vii_cluster,
    ),
    CheckDefinition(
        "known-viii-a",
        "H_{p-1}/p and the two quadratic sums against -4pX mod p^3",
        7, 3,
        _ps_members("harmonic-number", "full-range", "half-range"),
        _ev_known_viii_a,
    ),
    CheckDefinition(
        "known-viii-b",
        "cubic power sum over the half range against 12X mod p^2",
        7, 2, _ps_none, _ev_known_viii_b,
    ),
    CheckDefinition(
        "tauraso-6k",
        "sum of binom(2k,k)^2/(k 6^k) over 1..p-1 mod p^3",
        7, 3, _ps_none, _ev_tauraso_6k,
    ),
    CheckDefinition(
        "sun-6k-tail",
        "tail of the 6^k central-binomial sum vs (7/2)p^2 B_{p-3} mod p^3",
        7, 3, _ps_none, _ev_sun_6k_tail,
    ),
    CheckDefinition(
        "tauraso-param",
        "S_{p-1}(a) mod p^2 for sampled p-adic integers a",
        7, 2, _ps_samples, _ev_tauraso_param,
    ),
    CheckDefinition(
        "sun-param",
        "S_{p-1}(a) mod p^3 with the Bernoulli correction term",
        7, 3, _ps_samples, _ev_sun_param,
    ),
    CheckDefinition(
        "thm11-full",
        "S_{p-1}(a) mod p^4: the full-range main expansion",
        7, 4, _ps_samples, _ev_thm11_full,
    ),
    CheckDefinition(
        "thm11-half",
        "S_{(p-1)/2}(a) mod p^4: the half-range main expansion",
        7, 4, _ps_samples, _ev_thm11_half,
    ),
    CheckDefinition(
        "eq-1-0",
        "sum of binom(2k,k)^2/(k 16^k) over 1..p-1 mod p^4",
        7, 4, _ps_none, _ev_eq_1_0,
    ),
    CheckDefinition(
        "eq-1-1",
        "tail of the 16^k central-binomial sum vs -(21/2)H_{p-1} mod p^4",
        7, 4, _ps_none, _ev_eq_1_1,
    ),
    CheckDefinition(
        "lem23-full",
        "generalized-binomial product over 1..p-1, every k, mod p^4",
        7, 4, _ps_samples, _ev_lem23_full,
    ),
    CheckDefinition(
        "lem23-half",
        "generalized-binomial product over the half range, every k, mod p^4",
        7, 4, _ps_samples, _ev_lem23_half,
    ),
    CheckDefinition(
        "lem24-full",
        "S_{p-1}(pt) = 4p^2 t X mod p^4",
        7, 4, _ps_samples, _ev_lem24_full,
    ),
    CheckDefinition(
        "lem24-half",
        "S_{(p-1)/2}(pt) = -12p^2 t^2 X + 14 p^2 t X mod p^4",
        7, 4, _ps_samples, _ev_lem24_half,
    ),
    CheckDefinition(
        "lem25-ds1",
        "sum of odd-harmonic prefixes over k^2 mod p^2",
        7, 2, _ps_none, _ev_lem25_ds1,
    ),
    CheckDefinition(
        "lem25-ds2",
        "sum of H_k/k^3 over the half range mod p",
        7, 1, _ps_none, _ev_lem25_ds2,
    ),
    CheckDefinition(
        "lem25-ds3",
        "sum of squared-odd prefixes over k mod p^2",
        7, 2, _ps_none, _ev_lem25_ds3,
    ),
    CheckDefinition(
        "lem-bridge",
        "H(1,3;(p-1)/2) = 4 H(1,-3;p-1) mod p",
        7, 1, _ps_none, _ev_lem_bridge,
    ),
    CheckDefinition(
        "lem26",
        "three half-range odd-prefix sums cancel mod p",
        7, 1, _ps_none, _ev_lem26,
    ),
    CheckDefinition(
        "lem31",
        "H_{(p-1)/2} via Fermat-quotient powers and X, mod p^4",
        7, 4, _ps_none, _ev_lem31,
    ),
    CheckDefinition(
        "thm12",
        "sum of 2^k/k^3 over 1..p-1 mod p^2",
        7, 2, _ps_none, _ev_thm12,
    ),
    CheckDefinition(
        "proofstep-u1",
        "squared odd-prefix sum vs 2H(1,-3;p-1) mod p",
        7, 1, _ps_none, _ev_proofstep_u1,
    ),
    CheckDefinition(
        "proofstep-u2",
        "squared-odd-term prefix sum vs -2H(-2,2;p-1) mod p",
        7, 1, _ps_none, _ev_proofstep_u2,
    ),
    CheckDefinition(
        "proofstep-u3",
        "odd-prefix sum over k^3 vs its depth-2 reduction mod p",
        7, 1, _ps_none, _ev_proofstep_u3,
    ),
    CheckDefinition(
        "proofstep-h2k",
        "sum of H_{2k}/k^2 over the half range vs -9X mod p^2",
        7, 2, _ps_none, _ev_proofstep_h2k,
    ),
    CheckDefinition(
        "proofstep-1221",
        "H(2,1;(p-1)/2) against its X / h31 expansion mod p^2",
        7, 2, _ps_none, _ev_proofstep_1221,
    ),
]


def registry() -> list[CheckDefinition]:
    """The full check catalog with stable, unique ids."""
    return list(_CATALOG)


_BY_ID = {d.id: d for d in _CATALOG}


# ---------------------------------------------------------------------------
# evaluation and sweep


def _render_params(params: dict) -> tuple[str, ...]:
    return tuple(f"{k}={v}" for k, v in params.items())


def _evaluate(ctx: PrimeContext, defn: CheckDefinition, params: dict) -> CheckResult:
    rendered = _render_params(params)
    p = ctx.p
    try:
        out = defn.evaluator(ctx, **params)
    except _Skip as exc:
        return CheckResult(
            defn.id, p, rendered, "skipped", "", "", "", note=str(exc)
        )
    except (PrecisionExhausted, InsufficientPrecision) as exc:
        return CheckResult(
            defn.id, p, rendered, "precision_error", "", "", "", note=str(exc)
        )
    lhs, rhs, e = out[0], out[1], out[2]
    note = out[3] if len(out) > 3 else ""
    e_eff = e
    for z in (lhs, rhs):
        if z.aprec is not None:
            e_eff = min(e_eff, z.aprec)
    ok = congruent_mod(lhs, rhs, e_eff)
    if not ok:
        status = "fail"
    elif e_eff < e:
        status = "precision_error"
        extra = f"verified only mod p^{e_eff} of p^{e}"
        note = f"{note}; {extra}" if note else extra
    else:
        status = "pass"
    return CheckResult(
        defn.id,
        p,
        rendered,
        status,
        render_padic(lhs, p, e_eff),
        render_padic(rhs, p, e_eff),
        f"{p}^{e}",
        note=note,
    )


def run_check(
    check_id: str,
    p: int,
    params: dict | None = None,
    digits: int = 6,
    t_sign: str = "minus",
) -> CheckResult:
    """Evaluate one (check, prime, params) triple."""
    defn = _BY_ID.get(check_id)
    if defn is None:
        raise UnknownCheck(f"no check named {check_id!r}")
    if p < defn.min_prime:
        raise PrimeTooSmall(f"{check_id} requires p >= {defn.min_prime}")
    ctx = PrimeContext(p, digits=digits, t_sign=t_sign)
    if params is None:
        space = defn.param_space(p, DEFAULT_A_SAMPLES)
        if len(space) != 1:
            raise BadParameter(f"{check_id} needs explicit params")
        params = space[0]
    return _evaluate(ctx, defn, params)


def _run_prime(args) -> list[CheckResult]:
    p, ids, digits, a_sample_strs, t_sign = args
    a_samples = tuple(Fraction(s) for s in a_sample_strs)
    results: list[CheckResult] = []
    ctx: PrimeContext | None = None
    for check_id in ids:
        defn = _BY_ID[check_id]
        if p < defn.min_prime:
            results.append(
                CheckResult(
                    defn.id, p, (), "skipped", "", "", "",
                    note=f"p below min_prime {defn.min_prime}",
                )
            )
            continue
        if ctx is None:
            ctx = PrimeContext(p, digits=digits, t_sign=t_sign)
        for params in defn.param_space(p, a_samples):
            results.append(_evaluate(ctx, defn, params))
    return results


def sweep(
    ids,
    primes,
    jobs: int = 1,
    digits: int = 6,
    a_samples: tuple[Fraction, ...] = DEFAULT_A_SAMPLES,
    t_sign: str = "minus",
) -> list[CheckResult]:
    """Evaluate checks over primes; output ordered by (prime, id, params)."""
    ids = tuple(ids)
    for check_id in ids:
        if check_id not in _BY_ID:
            raise UnknownCheck(f"no check named {check_id!r}")
    sample_strs = tuple(str(Fraction(a)) for a in a_samples)
    work = [(p, ids, digits, sample_strs, t_sign) for p in primes]
    if jobs <= 1 or len(work) <= 1:
        chunks = [_run_prime(w) for w in work]
    else:
        with multiprocessing.Pool(processes=jobs) as pool:
            chunks = pool.map(_run_prime, work, chunksize=1)
    results = [r for chunk in chunks for r in chunk]
    results.sort(key=lambda r: (r.prime, r.check, r.params))
    return results
