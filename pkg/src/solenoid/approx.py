"""Finite-level approximations of the solenoid and its characters.

For a level l = (l_1, ..., l_k) put p^l = p_1^l_1 ... p_k^l_k. Reduction of
the p-adic coordinates modulo p_j^l_j maps A_S onto
B_l = Z/p_1^l_1 x ... x Z/p_k^l_k x R, and dividing out the image of the
diagonal integers leaves a circle C_l = R / p^l Z. A point of C_l is
stored as a rational in [0, p^l); a character of level l and frequency m
sends it to the phase m * value / p^l mod 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InputError
from .geometry import Exponents, MetricValue, SPoint
from .measure import ball_level
from .padic import PrimeSet, crt_solve, residue_mod_pl
from .quotient import SolenoidPoint, quotient_dist, reduce

PointLike = Union[SolenoidPoint, SPoint]


@dataclass(frozen=True)
class FiniteLevel:
    primes: PrimeSet
    l: tuple[int, ...]

    def __post_init__(self):
        l = tuple(int(x) for x in self.l)
        if len(l) != len(self.primes):
            raise InputError(f"level needs {len(self.primes)} entries, got {len(l)}")
        if any(x < 0 for x in l):
            raise InputError(f"level entries must be nonnegative: {l}")
        object.__setattr__(self, "l", l)

    @classmethod
    def parse(cls, text: str, primes: PrimeSet) -> "FiniteLevel":
        try:
            return cls(primes, tuple(int(tok) for tok in text.split(",")))
        except ValueError as exc:
            raise InputError(f"malformed level {text!r}") from exc

    @classmethod
    def trivial(cls, primes: PrimeSet) -> "FiniteLevel":
        return cls(primes, (0,) * len(primes))

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(p**lj for p, lj in zip(self.primes, self.l))

    @property
    def modulus(self) -> int:
        return math.prod(self.moduli)

    def __str__(self) -> str:
        return ",".join(map(str, self.l))


@dataclass(frozen=True)
class BlPoint:
    residues: tuple[int, ...]
    real: Fraction


@dataclass(frozen=True)
class ClPoint:
    """A point of R / p^l Z, normalized into [0, p^l)."""

    value: Fraction
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value) % self.modulus)


@dataclass(frozen=True)
class Character:
    level: FiniteLevel
    frequency: int


def _rep(x: PointLike) -> SPoint:
    return x.rep if isinstance(x, SolenoidPoint) else x


def pi_l(x: PointLike, level: FiniteLevel) -> BlPoint:
    """Reduce the p-adic coordinates of an A_S representative modulo p_j^l_j.

    Accepts any representative in A_S, not only the canonical one.
    """
    r = _rep(x)
    residues = tuple(residue_mod_pl(rj, p, lj) for rj, p, lj in zip(r.padic, level.primes, level.l))
    return BlPoint(residues, r.real)


def cl_coord(x: PointLike, level: FiniteLevel) -> ClPoint:
    """Circle coordinate (real - c) mod p^l, c the CRT lift of the residues."""
    b = pi_l(x, level)
    c = crt_solve(list(zip(b.residues, level.moduli)))
    return ClPoint(b.real - c, level.modulus)


def char_eval(chi: Character, x: PointLike) -> Fraction:
    """Phase in [0, 1); the character value is exp(2 pi i * phase)."""
    v = cl_coord(x, chi.level)
    return (chi.frequency * v.value / v.modulus) % 1


def line_levels(eps: Fraction, primes: PrimeSet, a: Exponents) -> tuple[int, ...]:
    return tuple(max(0, ball_level(eps, p, aj)) for p, aj in zip(primes, a))


def line_approximation(target: PointLike, eps, a: Exponents) -> Fraction:
    """A real s whose image (0, ..., 0, s) lies within eps of the target coset."""
    eps = Fraction(eps)
    if eps <= 0:
        raise InputError(f"eps must be positive, got {eps}")
    t = reduce(_rep(target)).rep
    level = FiniteLevel(t.primes, line_levels(eps, t.primes, a))
    residues = [(-r) % m for r, m in zip(pi_l(t, level).residues, level.moduli)]
    x = crt_solve(list(zip(residues, level.moduli)))
    return t.real + x


def line_point(s, primes: PrimeSet) -> SPoint:
    return SPoint(primes, (Fraction(0),) * len(primes), Fraction(s))


def line_distance(target: PointLike, s, a: Exponents) -> MetricValue:
    """Quotient distance from the image of s on the real line to the target."""
    t = _rep(target)
    return quotient_dist(line_point(s, t.primes), t, a)
