"""Capped-precision arithmetic in Q_p.

A value is stored as ``p**valuation * unit`` where ``unit`` is coprime to p
and reduced modulo ``p**digits``; ``digits`` is the number of significant
base-p digits that are known.  The absolute precision of a value is
``valuation + digits``: the value is known exactly modulo
``p**(valuation + digits)``.

Two degenerate shapes exist besides ordinary values:

* the exact zero (``zero_flag`` set), with infinite precision;
* a *bounded zero*, ``digits == 0``: all that is known is that the value is
  divisible by ``p**valuation``.  Bounded zeros arise when an exact-mod-m
  accumulator happens to vanish; they are legal congruence operands but
  cannot be inverted.

Values built through :meth:`PAdic.from_rational` carry their exact rational
alongside, which lets subtraction recognise a provable zero.  Arithmetic on
values without that witness raises :class:`PrecisionExhausted` if every
known digit cancels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    BadParameter,
    DivisionByZero,
    InsufficientPrecision,
    PrecisionExhausted,
)

__all__ = ["PAdic", "congruent_mod", "vp_int", "vp_fraction"]


def vp_int(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_fraction(q: Fraction, p: int) -> int:
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


@dataclass(frozen=True)
class PAdic:
    prime: int
    valuation: int
    unit: int
    digits: int
    zero_flag: bool = False
    rat: Fraction | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.zero_flag:
            return
        if self.digits < 0:
            raise ValueError("digits must be >= 0")
        if self.digits == 0:
            if self.unit != 0:
                raise ValueError("bounded zero must have unit 0")
        else:
            if not (0 < self.unit < self.prime**self.digits):
                raise ValueError("unit out of range")
            if self.unit % self.prime == 0:
                raise ValueError("unit must be coprime to p")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "PAdic":
        return cls(p, 0, 0, 0, zero_flag=True, rat=Fraction(0))

    @classmethod
    def from_rational(cls, num: int | Fraction, den: int = 1, *, p: int, digits: int) -> "PAdic":
        """Embed num/den into Q_p with ``digits`` significant digits."""
        if digits < 1:
            raise ValueError("digits must be >= 1")
        q = Fraction(num, den) if not isinstance(num, Fraction) else num / den
        if q == 0:
            return cls.zero(p)
        v = vp_fraction(q, p)
        u = q / Fraction(p) ** v
        m = p**digits
        unit = u.numerator % m * pow(u.denominator, -1, m) % m
        return cls(p, v, unit, digits, rat=q)

    @classmethod
    def from_int_exact(cls, value: int, *, p: int, aprec: int) -> "PAdic":
        """Wrap an integer known exactly modulo ``p**aprec``.

        Used to lift kernel accumulator outputs; no rational witness is
        attached.  A residue of 0 yields a bounded zero of precision aprec.
        """
        m = p**aprec
        value %= m
        if value == 0:
            return cls(p, aprec, 0, 0)
        v = vp_int(value, p)
        return cls(p, v, (value // p**v) % p ** (aprec - v), aprec - v)

    # -- structure ---------------------------------------------------------

    @property
    def aprec(self) -> int | None:
        """Absolute precision; None means infinite (exact zero)."""
        if self.zero_flag:
            return None
        return self.valuation + self.digits

    def is_bounded_zero(self) -> bool:
        return not self.zero_flag and self.digits == 0

    def lift(self, aprec: int) -> int:
        """Integer congruent to the value modulo ``p**aprec`` (requires valuation >= 0)."""
        if self.zero_flag:
            return 0
        if self.valuation < 0:
            raise BadParameter("lift requires a p-adic integer")
        if self.aprec is not None and self.aprec < aprec:
            raise InsufficientPrecision(
                f"value known mod p^{self.aprec}, lift mod p^{aprec} requested"
            )
        return self.unit * self.prime**self.valuation % self.prime**aprec

    # -- arithmetic --------------------------------------------------------

    def _require_same_prime(self, other: "PAdic") -> None:
        if self.prime != other.prime:
            raise BadParameter("operands have different primes")

    def __neg__(self) -> "PAdic":
        if self.zero_flag:
            return self
        if self.digits == 0:
            return self
        m = self.prime**self.digits
        return PAdic(
            self.prime,
            self.valuation,
            (-self.unit) % m,
            self.digits,
            rat=None if self.rat is None else -self.rat,
        )

    def __add__(self, other: "PAdic") -> "PAdic":
        self._require_same_prime(other)
        p = self.prime
        if self.zero_flag:
            return other
        if other.zero_flag:
            return self
        aprec = min(self.aprec, other.aprec)  # type: ignore[type-var]
        base = min(self.valuation, other.valuation)
        mod = p ** (aprec - base)
        s = (
            self.unit * p ** (self.valuation - base)
            + other.unit * p ** (other.valuation - base)
        ) % mod
        rat = None
        if self.rat is not None and other.rat is not None:
            rat = self.rat + other.rat
        if s == 0:
            if rat is not None and rat == 0:
                return PAdic.zero(p)
            if self.digits == 0 and other.digits == 0:
                return PAdic(p, aprec, 0, 0)
            raise PrecisionExhausted(
                f"all digits cancelled below p^{aprec}; value not provably zero"
            )
        v = vp_int(s, p)
        digits = aprec - base - v
        return PAdic(p, base + v, (s // p**v) % p**digits, digits, rat=rat)

    def __sub__(self, other: "PAdic") -> "PAdic":
        return self + (-other)

    def __mul__(self, other: "PAdic") -> "PAdic":
        self._require_same_prime(other)
        p = self.prime
        if self.zero_flag or other.zero_flag:
            return PAdic.zero(p)
        rat = None
        if self.rat is not None and other.rat is not None:
            rat = self.rat * other.rat
        v = self.valuation + other.valuation
        if self.digits == 0 or other.digits == 0:
            # product of a bounded zero: only divisibility information survives
            return PAdic(p, v + min(self.digits, other.digits), 0, 0)
        digits = min(self.digits, other.digits)
        m = p**digits
        return PAdic(p, v, self.unit * other.unit % m, digits, rat=rat)

    def invert(self) -> "PAdic":
        if self.zero_flag:
            raise DivisionByZero("cannot invert the exact zero")
        if self.digits == 0:
            raise PrecisionExhausted("cannot invert a value with no known digits")
        m = self.prime**self.digits
        return PAdic(
            self.prime,
            -self.valuation,
            pow(self.unit, -1, m),
            self.digits,
            rat=None if self.rat is None else 1 / self.rat,
        )

    def shift(self, j: int) -> "PAdic":
        """Multiply by p**j (exact)."""
        if self.zero_flag:
            return self
        rat = None if self.rat is None else self.rat * Fraction(self.prime) ** j
        return PAdic(self.prime, self.valuation + j, self.unit, self.digits, rat=rat)

    def scale(self, c: int | Fraction) -> "PAdic":
        """Multiply by an exact rational constant without losing digits."""
        c = Fraction(c)
        if c == 0:
            return PAdic.zero(self.prime)
        if self.zero_flag:
            return self
        p = self.prime
        vc = vp_fraction(c, p)
        if self.digits == 0:
            return PAdic(p, self.valuation + vc, 0, 0)
        uc = c / Fraction(p) ** vc
        m = p**self.digits
        unit = self.unit * (uc.numerator % m) * pow(uc.denominator, -1, m) % m
        rat = None if self.rat is None else self.rat * c
        return PAdic(p, self.valuation + vc, unit, self.digits, rat=rat)

    def __pow__(self, e: int) -> "PAdic":
        if e < 0:
            return self.invert() ** (-e)
        out = PAdic.from_rational(1, p=self.prime, digits=max(self.digits, 1))
        for _ in range(e):
            out = out * self
        return out

    def __str__(self) -> str:
        if self.zero_flag:
            return "0"
        if self.digits == 0:
            return f"O({self.prime}^{self.valuation})"
        return f"{self.prime}^{self.valuation} * {self.unit} mod {self.prime}^{self.aprec}"


def arith(kind: str, x: PAdic, y: PAdic) -> PAdic:
    """Ring operation dispatch; kind in {'add', 'sub', 'mul'}."""
    if kind == "add":
        return x + y
    if kind == "sub":
        return x - y
    if kind == "mul":
        return x * y
    raise ValueError(f"unknown arith kind {kind!r}")


def congruent_mod(x: PAdic, y: PAdic, e: int) -> bool:
    """True iff v_p(x - y) >= e.

    Both operands must be known modulo p**e; otherwise the caller has a
    precision-planning bug and InsufficientPrecision is raised.
    """
    if x.prime != y.prime:
        raise BadParameter("operands have different primes")
    p = x.prime
    for z in (x, y):
        if z.aprec is not None and z.aprec < e:
            raise InsufficientPrecision(
                f"operand known mod p^{z.aprec}, congruence mod p^{e} requested"
            )
    base = 0
    for z in (x, y):
        if not z.zero_flag and z.digits > 0:
            base = min(base, z.valuation)
    mod = p ** (e - base)

    def intrep(z: PAdic) -> int:
        if z.zero_flag or z.digits == 0:
            return 0
        return z.unit * p ** (z.valuation - base)

    return (intrep(x) - intrep(y)) % mod == 0
