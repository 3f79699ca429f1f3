"""Points of R_S = Q_p1 x ... x Q_pk x R and the metrics d_S, d_{S,a}.

Every coordinate is a rational number; Q is dense in each factor, so the
caller truncates genuine p-adic or real inputs to rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Optional, Sequence

from .errors import InputError
from .padic import (
    INFINITY,
    PrimeSet,
    RationalLike,
    _int_valuation,
    _valuation,
    as_rational,
    format_rational,
    parse_rational,
)


def _iroot(n: int, t: int) -> int:
    """floor(n ** (1/t)) for n >= 0."""
    if n < 2 or t == 1:
        return n
    x = 1 << -(-n.bit_length() // t)
    while True:
        y = ((t - 1) * x + n // x ** (t - 1)) // t
        if y >= x:
            return x
        x = y


@total_ordering
class MetricValue:
    """A nonnegative magnitude that is either a rational or p**(-q), q rational.

    Prime powers with an integral exponent are stored as rationals, so two
    values are equal exactly when their stored forms agree: p**(-s/t) with
    t > 1 is irrational and differs from every other such power.
    """

    __slots__ = ("value", "p", "q")

    def __init__(self, value: Optional[Fraction] = None, *, p: Optional[int] = None,
                 q: Optional[Fraction] = None):
        if p is None:
            if type(value) is not Fraction:
                value = Fraction(value)
            if value < 0:
                raise InputError(f"magnitude must be nonnegative, got {value}")
            self.value, self.p, self.q = value, None, None
            return
        if type(q) is int:
            self.value = Fraction(1, p**q) if q >= 0 else Fraction(p ** (-q))
            self.p = self.q = None
            return
        if type(q) is not Fraction:
            q = Fraction(q)
        if q.denominator == 1:
            n = q.numerator
            self.value = Fraction(1, p**n) if n >= 0 else Fraction(p ** (-n))
            self.p = self.q = None
        else:
            self.value, self.p, self.q = None, p, q

    @classmethod
    def prime_power(cls, p: int, q: RationalLike) -> "MetricValue":
        """The value p**(-q)."""
        return cls(p=p, q=as_rational(q))

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def _power_form(self) -> tuple[Fraction, int]:
        """(base, t) with self == base ** (1/t)."""
        if self.p is None:
            return self.value, 1
        s, t = self.q.numerator, self.q.denominator
        base = Fraction(1, self.p**s) if s >= 0 else Fraction(self.p ** (-s))
        return base, t

    def _cmp(self, other: "MetricValue") -> int:
        if self.p is None and other.p is None:
            if self.value == other.value:
                return 0
            return 1 if self.value > other.value else -1
        if self.p is None and other.p is None:
            a, b = self.value, other.value
        else:
            # compare x**(1/t1) with y**(1/t2) via x**(N/t1) vs y**(N/t2)
            x, t1 = self._power_form()
            y, t2 = other._power_form()
            n = math.lcm(t1, t2)
            a, b = x ** (n // t1), y ** (n // t2)
        return (a > b) - (a < b)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._cmp(other) == 0

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._cmp(other) < 0

    def __hash__(self):
        return hash((self.value, self.p, self.q))

    def bounds(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rational (lo, hi) with lo <= self <= hi and hi - lo <= 2**-bits."""
        if self.p is None:
            return self.value, self.value
        base, t = self._power_form()
        scale = 1 << bits
        n = base.numerator * scale**t // base.denominator
        r = _iroot(n, t)
        return Fraction(r, scale), Fraction(r + 1, scale)

    def le_sum(self, u: "MetricValue", v: "MetricValue", max_bits: int = 4096) -> bool:
        """Exact test of self <= u + v."""
        u, v = _coerce(u), _coerce(v)
        if self <= max(u, v):
            return True
        bits = 64
        while bits <= max_bits:
            lo_w, hi_w = self.bounds(bits)
            lo_u, hi_u = u.bounds(bits)
            lo_v, hi_v = v.bounds(bits)
            if hi_w <= lo_u + lo_v:
                return True
            if lo_w > hi_u + hi_v:
                return False
            if self.is_rational and u.is_rational and v.is_rational:
                return self.value <= u.value + v.value
            bits *= 2
        raise ArithmeticError("could not separate the sum at the requested precision")

    def __float__(self) -> float:
        if self.p is None:
            return float(self.value)
        return float(self.p) ** (-float(self.q))

    def __str__(self) -> str:
        if self.p is None:
            return format_rational(self.value)
        return f"{self.p}^({format_rational(-self.q)})"

    @classmethod
    def parse(cls, text: str) -> "MetricValue":
        """Inverse of ``str``: a rational, or "p^(e)" meaning p**e."""
        text = text.strip()
        if "^" not in text:
            return cls(parse_rational(text))
        base, _, exp = text.partition("^")
        if not (exp.startswith("(") and exp.endswith(")")):
            raise InputError(f"malformed magnitude {text!r}")
        try:
            p = int(base)
        except ValueError as exc:
            raise InputError(f"malformed magnitude {text!r}") from exc
        return cls.prime_power(p, -parse_rational(exp[1:-1]))

    def __repr__(self) -> str:
        return f"MetricValue({self})"


def _coerce(x):
    if isinstance(x, MetricValue):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return MetricValue(x)
    return NotImplemented


ZERO = MetricValue(0)


@dataclass(frozen=True)
class Exponents:
    """Snowflake exponents a_1..a_k, one per prime, each > 0."""

    a: tuple[Fraction, ...]

    def __post_init__(self):
        a = tuple(as_rational(x) for x in self.a)
        if any(x <= 0 for x in a):
            raise InputError(f"exponents must be positive: {[format_rational(x) for x in a]}")
        object.__setattr__(self, "a", a)

    @classmethod
    def ones(cls, k: int) -> "Exponents":
        return cls((Fraction(1),) * k)

    @classmethod
    def parse(cls, text: str) -> "Exponents":
        return cls(tuple(parse_rational(tok) for tok in text.split(",")))

    def __len__(self) -> int:
        return len(self.a)

    def __iter__(self):
        return iter(self.a)

    def __str__(self) -> str:
        return ",".join(format_rational(x) for x in self.a)


@dataclass(frozen=True)
class SPoint:
    """A point (r_1, ..., r_k, r_{k+1}) of R_S with rational coordinates."""

    primes: PrimeSet
    padic: tuple[Fraction, ...]
    real: Fraction

    def __post_init__(self):
        padic = tuple(as_rational(x) for x in self.padic)
        if len(padic) != len(self.primes):
            raise InputError(
                f"expected {len(self.primes)} p-adic coordinates, got {len(padic)}"
            )
        object.__setattr__(self, "padic", padic)
        object.__setattr__(self, "real", as_rational(self.real))

    @classmethod
    def _make(cls, primes: PrimeSet, padic: tuple, real: Fraction) -> "SPoint":
        # trusted constructor for results of arithmetic on valid points
        point = object.__new__(cls)
        object.__setattr__(point, "primes", primes)
        object.__setattr__(point, "padic", padic)
        object.__setattr__(point, "real", real)
        return point

    @classmethod
    def of(cls, primes: PrimeSet, coords: Sequence[RationalLike]) -> "SPoint":
        """Build from all k+1 coordinates, real coordinate last."""
        if len(coords) != len(primes) + 1:
            raise InputError(f"expected {len(primes) + 1} coordinates, got {len(coords)}")
        return cls(primes, tuple(coords[:-1]), coords[-1])

    @classmethod
    def parse(cls, text: str, primes: PrimeSet) -> "SPoint":
        """Parse "c_1;...;c_k;c_real"."""
        return cls.of(primes, [parse_rational(tok) for tok in text.split(";")])

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return self.padic + (self.real,)

    def _check(self, other: "SPoint") -> None:
        if self.primes is not other.primes and self.primes != other.primes:
            raise InputError(f"mismatched prime sets {self.primes} and {other.primes}")

    def __add__(self, other: "SPoint") -> "SPoint":
        self._check(other)
        return SPoint._make(self.primes, tuple(x + y for x, y in zip(self.padic, other.padic)),
                            self.real + other.real)

    def __sub__(self, other: "SPoint") -> "SPoint":
        self._check(other)
        return SPoint._make(self.primes, tuple(x - y for x, y in zip(self.padic, other.padic)),
                            self.real - other.real)

    def __mul__(self, other: "SPoint") -> "SPoint":
        self._check(other)
        return SPoint._make(self.primes, tuple(x * y for x, y in zip(self.padic, other.padic)),
                            self.real * other.real)

    def __neg__(self) -> "SPoint":
        return SPoint._make(self.primes, tuple(-x for x in self.padic), -self.real)

    def scale(self, c: RationalLike) -> "SPoint":
        """Multiply every coordinate by the rational c, i.e. by delta_embed(c)."""
        c = as_rational(c)
        return SPoint(self.primes, tuple(c * x for x in self.padic), c * self.real)

    def __str__(self) -> str:
        return ";".join(format_rational(x) for x in self.coords)


def delta_embed(x: RationalLike, primes: PrimeSet) -> SPoint:
    x = as_rational(x)
    return SPoint._make(primes, (x,) * len(primes), x)


def zero_point(primes: PrimeSet) -> SPoint:
    return delta_embed(0, primes)


def point_add(r: SPoint, t: SPoint) -> SPoint:
    return r + t


def point_mul(r: SPoint, t: SPoint) -> SPoint:
    return r * t


def padic_term(x: Fraction, p: int, a: Fraction = Fraction(1)) -> MetricValue:
    """|x|_p ** a."""
    v = _valuation(x, p)
    if v == INFINITY:
        return ZERO
    return MetricValue(p=p, q=a * v)


def dist_S(r: SPoint, t: SPoint) -> MetricValue:
    """max(|r_1 - t_1|_p1, ..., |r_k - t_k|_pk, |r_real - t_real|)."""
    return dist_Sa(r, t, Exponents.ones(len(r.primes)))


def dist_Sa(r: SPoint, t: SPoint, a: Exponents) -> MetricValue:
    """Snowflake distance: the p_j-adic terms are raised to the power a_j."""
    r._check(t)
    if len(a) != len(r.primes):
        raise InputError(f"expected {len(r.primes)} exponents, got {len(a)}")
    best = MetricValue(abs(r.real - t.real))
    for x, y, p, aj in zip(r.padic, t.padic, r.primes, a.a):
        if x == y:
            continue
        # valuation of x - y from the unreduced numerator/denominator
        num = x.numerator * y.denominator - y.numerator * x.denominator
        v = _int_valuation(num, p) - _int_valuation(x.denominator * y.denominator, p)
        term = MetricValue(p=p, q=v if aj.denominator == 1 and aj.numerator == 1 else aj * v)
        if term._cmp(best) > 0:
            best = term
    return best


def max_value(values: Iterable[MetricValue]) -> MetricValue:
    return max(values, default=ZERO)
