"""Haar measures of balls and boxes, scaling factors and dimension counts.

Haar measure on R_S is the product of the p-adic Haar measures (normalized
so that Z_p has measure 1) with Lebesgue measure on R. On each p-adic
factor it agrees with 1-dimensional Hausdorff measure for the p-adic metric.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InputError
from .geometry import Exponents, MetricValue, SPoint
from .padic import PrimeSet, RationalLike, _valuation, as_rational
from .quotient import SolenoidPoint

MASK64 = (1 << 64) - 1


def haar_ball_p(p: int, l: int) -> Fraction:
    """Measure of p^l Z_p."""
    return Fraction(1, p**l) if l >= 0 else Fraction(p ** (-l))


@dataclass(frozen=True)
class BoxRegion:
    """(c_1 + p_1^l_1 Z_p1) x ... x (c_k + p_k^l_k Z_pk) x [lo, hi]."""

    primes: PrimeSet
    levels: tuple[int, ...]
    centers: tuple[Fraction, ...]
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        k = len(self.primes)
        if len(self.levels) != k or len(self.centers) != k:
            raise InputError(f"box needs {k} levels and {k} centers")
        object.__setattr__(self, "levels", tuple(int(l) for l in self.levels))
        object.__setattr__(self, "centers", tuple(as_rational(c) for c in self.centers))
        lo, hi = as_rational(self.lo), as_rational(self.hi)
        if lo > hi:
            raise InputError(f"empty real interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def unit(cls, primes: PrimeSet) -> "BoxRegion":
        """Z_p1 x ... x Z_pk x [0, 1], the box of measure 1."""
        k = len(primes)
        return cls(primes, (0,) * k, (Fraction(0),) * k, Fraction(0), Fraction(1))


def box_measure(b: BoxRegion) -> Fraction:
    m = b.hi - b.lo
    for p, l in zip(b.primes, b.levels):
        m *= haar_ball_p(p, l)
    return m


def scale_box(t: SPoint, b: BoxRegion) -> BoxRegion:
    """The image t * b under coordinatewise multiplication (t has no zero coordinate)."""
    _check_unit_scaling(t)
    levels = tuple(l + _valuation(tj, p) for tj, p, l in zip(t.padic, t.primes, b.levels))
    centers = tuple(tj * c for tj, c in zip(t.padic, b.centers))
    lo, hi = sorted((t.real * b.lo, t.real * b.hi))
    return BoxRegion(b.primes, levels, centers, lo, hi)


def _check_unit_scaling(t: SPoint) -> None:
    if any(x == 0 for x in t.coords):
        raise DomainError(f"{t} has a zero coordinate: not a multiplicative scaling")


def mu_scaling(t: SPoint) -> Fraction:
    """Factor by which multiplication by t scales Haar measure."""
    _check_unit_scaling(t)
    m = abs(t.real)
    for x, p in zip(t.padic, t.primes):
        v = _valuation(x, p)
        m *= haar_ball_p(p, v)
    return m


def ball_level(rho: RationalLike, p: int, a: RationalLike = 1) -> int:
    """Smallest integer l with p**(-l*a) <= rho."""
    rho, a = as_rational(rho), as_rational(a)
    if rho <= 0:
        raise DomainError(f"radius must be positive, got {rho}")
    bound = MetricValue(rho)
    guess = math.ceil((math.log(rho.denominator) - math.log(rho.numerator)) / (float(a) * math.log(p)))
    l = guess
    while MetricValue.prime_power(p, l * a) > bound:
        l += 1
    while MetricValue.prime_power(p, (l - 1) * a) <= bound:
        l -= 1
    return l


def ball_levels(rho: RationalLike, primes: PrimeSet, a: Exponents) -> tuple[int, ...]:
    return tuple(ball_level(rho, p, aj) for p, aj in zip(primes, a))


def metric_ball_measure(rho: RationalLike, primes: PrimeSet, a: Exponents) -> Fraction:
    """Haar measure of a closed d_{S,a}-ball of radius rho."""
    rho = as_rational(rho)
    if rho <= 0:
        raise DomainError(f"radius must be positive, got {rho}")
    m = 2 * rho
    for p, l in zip(primes, ball_levels(rho, primes, a)):
        m *= haar_ball_p(p, l)
    return m


def hausdorff_dim(primes: PrimeSet, a: Exponents) -> Fraction:
    """1 + sum_j 1/a_j."""
    if len(a) != len(primes):
        raise InputError(f"expected {len(primes)} exponents, got {len(a)}")
    return 1 + sum((1 / aj for aj in a), Fraction(0))


def ahlfors_constant(primes: PrimeSet) -> int:
    """C with C**-1 <= ball_measure(rho) / rho**dim <= C for every rho > 0."""
    return 2 * math.prod(primes)


def ahlfors_within(rho: RationalLike, primes: PrimeSet, a: Exponents) -> bool:
    """Exact check of the two-sided Ahlfors bound at radius rho."""
    rho = as_rational(rho)
    m = metric_ball_measure(rho, primes, a)
    dim = hausdorff_dim(primes, a)
    c = ahlfors_constant(primes)
    # m / rho**(s/t) in [1/c, c]  <=>  m**t in [rho**s / c**t, c**t * rho**s]
    s, t = dim.numerator, dim.denominator
    lhs, rs, ct = m**t, rho**s, Fraction(c) ** t
    return rs / ct <= lhs <= ct * rs


def _log(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def box_count(rho: RationalLike, primes: PrimeSet, a: Exponents) -> tuple[int, float]:
    """Number of closed rho-balls needed to cover Z_p1 x ... x Z_pk x [0, 1).

    Returns (N, log N / log(1/rho)); the second entry is a float for reporting.
    """
    rho = as_rational(rho)
    if not 0 < rho < 1:
        raise DomainError(f"radius must lie in (0, 1), got {rho}")
    n = math.ceil(1 / (2 * rho))
    for p, l in zip(primes, ball_levels(rho, primes, a)):
        n *= p**l
    return n, math.log(n) / -_log(rho)


class SplitMix64:
    """The splitmix64 generator; one 64-bit output per call."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        limit = (1 << 64) - (1 << 64) % n
        while True:
            x = self.next()
            if x < limit:
                return x % n


def sample_haar(primes: PrimeSet, depth: int, rng_seed: int) -> SolenoidPoint:
    """Haar-random point of the fundamental domain, truncated to `depth` digits."""
    return sample_haar_many(primes, depth, rng_seed, 1)[0]


def sample_haar_many(primes: PrimeSet, depth: int, rng_seed: int, count: int) -> list[SolenoidPoint]:
    if depth < 1:
        raise InputError(f"depth must be >= 1, got {depth}")
    rng = SplitMix64(rng_seed)
    out = []
    for _ in range(count):
        padic = []
        for p in primes:
            value = 0
            for i in range(depth):
                value += rng.below(p) * p**i
            padic.append(Fraction(value))
        bits = 0
        for _ in range(depth):
            bits = (bits << 1) | (rng.next() >> 63)
        out.append(SolenoidPoint(SPoint(primes, tuple(padic), Fraction(bits, 1 << depth))))
    return out


def dimension_table(rhos: Sequence[RationalLike], primes: PrimeSet, a: Exponents) -> list[dict]:
    """Rows (rho, N, measure, estimate, target_dim) for the CSV report."""
    target = hausdorff_dim(primes, a)
    rows = []
    for rho in rhos:
        rho = as_rational(rho)
        n, est = box_count(rho, primes, a)
        rows.append({
            "rho": rho,
            "N": n,
            "measure": metric_ball_measure(rho, primes, a),
            "estimate": est,
            "target_dim": target,
        })
    return rows
