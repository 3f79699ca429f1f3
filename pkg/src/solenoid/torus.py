"""Matrices over Z_S acting on the n-dimensional solenoid.

The action on (R_S / Delta_S(Z_S))^n is applied slot by slot: the j-th
coordinates of the n components form a vector in Q^n that is multiplied by
the matrix, which is legitimate because Z_S embeds diagonally in R_S.
"""
from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .approx import ClPoint, FiniteLevel
from .errors import DomainError, InputError, ResourceError
from .geometry import SPoint
from .padic import PrimeSet, as_rational, format_rational, parse_rational
from .quotient import SolenoidPoint, is_in_ZS, is_S_unit, reduce

DEFAULT_BIT_LIMIT = 10**6


class MapClass(str, enum.Enum):
    BIJECTIVE_UNIT = "bijective_unit"
    SURJECTIVE_NONINJECTIVE = "surjective_noninjective"
    SINGULAR = "singular"


@dataclass(frozen=True)
class SMatrix:
    primes: PrimeSet
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(as_rational(x) for x in row) for row in self.rows)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise InputError("matrix must be square and nonempty")
        for row in rows:
            for x in row:
                if not is_in_ZS(x, self.primes):
                    raise InputError(f"entry {format_rational(x)} is not in Z_S for S = {{{self.primes}}}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def parse(cls, text: str, primes: PrimeSet) -> "SMatrix":
        """Parse rows separated by ';' and entries by ',' ("1,1;0,1")."""
        return cls(primes, tuple(tuple(parse_rational(tok) for tok in row.split(","))
                                 for row in text.split(";")))

    @classmethod
    def identity(cls, primes: PrimeSet, n: int) -> "SMatrix":
        return cls(primes, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: "SMatrix") -> "SMatrix":
        cols = list(zip(*other.rows))
        return SMatrix(self.primes, tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                                          for row in self.rows))

    def apply(self, v: Sequence[Fraction]) -> list[Fraction]:
        return [sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in self.rows]

    def __str__(self) -> str:
        return ";".join(",".join(format_rational(x) for x in row) for row in self.rows)


@dataclass(frozen=True)
class TorusPoint:
    components: tuple[SolenoidPoint, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise InputError("torus point needs at least one component")
        if any(c.primes != comps[0].primes for c in comps):
            raise InputError("components use different prime sets")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, points: Sequence[SPoint]) -> "TorusPoint":
        return cls(tuple(reduce(p) for p in points))

    @classmethod
    def parse(cls, text: str, primes: PrimeSet) -> "TorusPoint":
        """Components separated by '|', each in SPoint text form."""
        return cls.of([SPoint.parse(part, primes) for part in text.split("|")])

    @property
    def primes(self) -> PrimeSet:
        return self.components[0].primes

    @property
    def n(self) -> int:
        return len(self.components)

    def __add__(self, other: "TorusPoint") -> "TorusPoint":
        return TorusPoint(tuple(a + b for a, b in zip(self.components, other.components)))

    def bit_size(self) -> int:
        return sum(x.numerator.bit_length() + x.denominator.bit_length()
                   for c in self.components for x in c.rep.coords)

    def __str__(self) -> str:
        return "|".join(str(c.rep) for c in self.components)


def det(T: SMatrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = T.n
    scale = math.lcm(*(x.denominator for row in T.rows for x in row))
    m = [[x.numerator * (scale // x.denominator) for x in row] for row in T.rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1], scale**n)


def classify(T: SMatrix) -> MapClass:
    d = det(T)
    if d == 0:
        return MapClass.SINGULAR
    if is_S_unit(d, T.primes):
        return MapClass.BIJECTIVE_UNIT
    return MapClass.SURJECTIVE_NONINJECTIVE


def inverse(T: SMatrix) -> SMatrix:
    """Exact inverse; its entries lie in Z_S exactly when det(T) is an S-unit."""
    if classify(T) is not MapClass.BIJECTIVE_UNIT:
        raise DomainError(f"determinant {format_rational(det(T))} is not an S-unit; no inverse over Z_S")
    n = T.n
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(T.rows)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return SMatrix(T.primes, tuple(tuple(row[n:]) for row in aug))


def act(T: SMatrix, x: TorusPoint) -> TorusPoint:
    if T.n != x.n:
        raise InputError(f"{T.n}x{T.n} matrix cannot act on a {x.n}-component point")
    if T.primes != x.primes:
        raise InputError(f"matrix over {{{T.primes}}} cannot act on a point over {{{x.primes}}}")
    k = len(x.primes)
    slots = [T.apply([c.rep.coords[s] for c in x.components]) for s in range(k + 1)]
    return TorusPoint(tuple(
        reduce(SPoint(x.primes, tuple(slots[s][i] for s in range(k)), slots[k][i]))
        for i in range(x.n)
    ))


def inverse_act(T: SMatrix, x: TorusPoint) -> TorusPoint:
    return act(inverse(T), x)


def resolve_bit_limit(bit_limit: Optional[int] = None) -> int:
    if bit_limit is not None:
        return bit_limit
    env = os.environ.get("SOLENOID_BIT_LIMIT")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"SOLENOID_BIT_LIMIT must be an integer, got {env!r}") from exc
    return DEFAULT_BIT_LIMIT


def orbit(T: SMatrix, x: TorusPoint, steps: int, bit_limit: Optional[int] = None) -> list[TorusPoint]:
    """[x, Tx, ..., T^steps x], each canonically reduced."""
    if steps < 1:
        raise InputError(f"steps must be >= 1, got {steps}")
    limit = resolve_bit_limit(bit_limit)
    points = [x]
    for step in range(1, steps + 1):
        x = act(T, x)
        if x.bit_size() > limit:
            raise ResourceError(f"orbit step {step} needs {x.bit_size()} bits, over the limit of {limit}")
        points.append(x)
    return points


def induced_circle_map(T: SMatrix, level: FiniteLevel, s: ClPoint) -> tuple[ClPoint, list[ClPoint]]:
    """Image m*s of s under t -> m t on R / p^l Z, and the |m| preimages of s."""
    if T.n != 1:
        raise InputError("the circle map needs a 1x1 matrix")
    m = T.rows[0][0]
    if m.denominator != 1:
        raise InputError(f"the circle map needs an integer entry, got {format_rational(m)}")
    m = m.numerator
    if m == 0:
        raise DomainError("t -> 0 has no preimages off the origin")
    modulus = level.modulus
    if s.modulus != modulus:
        raise InputError(f"point lives on R/{s.modulus}Z, level gives R/{modulus}Z")
    image = ClPoint(m * s.value, modulus)
    pre = [ClPoint((s.value + i * modulus) / m, modulus) for i in range(abs(m))]
    return image, pre
