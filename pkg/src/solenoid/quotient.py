"""The solenoid R_S / Delta_S(Z_S) via canonical fundamental-domain representatives.

Every coset has exactly one representative in Z_p1 x ... x Z_pk x [0, 1):
two representatives in A_S = Z_p1 x ... x Z_pk x R differ by Delta_S(z)
with z an ordinary integer, and the half-open real interval pins z down.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .geometry import Exponents, MetricValue, SPoint, delta_embed, dist_Sa
from .padic import PrimeSet, RationalLike, _valuation, as_rational, format_rational, residue_mod_pl


def _strip(n: int, primes: PrimeSet) -> int:
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def is_in_ZS(x: RationalLike, primes: PrimeSet) -> bool:
    """True iff the reduced denominator of x only has prime factors from S."""
    return _strip(as_rational(x).denominator, primes) == 1


def is_S_unit(x: RationalLike, primes: PrimeSet) -> bool:
    """True iff x = +-p_1^l_1 ... p_k^l_k."""
    x = as_rational(x)
    if x == 0:
        return False
    return _strip(abs(x.numerator), primes) == 1 and _strip(x.denominator, primes) == 1


def in_AS(r: SPoint) -> bool:
    return all(x.denominator % p != 0 for x, p in zip(r.padic, r.primes))


@dataclass(frozen=True)
class SolenoidPoint:
    """Canonical coset representative plus the lattice shift that produced it.

    ``rep`` lies in Z_p1 x ... x Z_pk x [0, 1) and ``original - rep ==
    delta_embed(shift)``. Equality compares ``rep`` only; the shift is
    bookkeeping.
    """

    rep: SPoint
    shift: Fraction = Fraction(0)

    @property
    def primes(self) -> PrimeSet:
        return self.rep.primes

    def __eq__(self, other):
        if not isinstance(other, SolenoidPoint):
            return NotImplemented
        return self.rep == other.rep

    def __hash__(self):
        return hash(self.rep)

    def __add__(self, other: "SolenoidPoint") -> "SolenoidPoint":
        return solenoid_add(self, other)

    def __neg__(self) -> "SolenoidPoint":
        return solenoid_neg(self)

    def __sub__(self, other: "SolenoidPoint") -> "SolenoidPoint":
        return solenoid_add(self, solenoid_neg(other))

    def is_canonical(self) -> bool:
        return in_AS(self.rep) and 0 <= self.rep.real < 1 and is_in_ZS(self.shift, self.primes)

    def to_json(self) -> dict:
        return {"rep": str(self.rep), "shift": format_rational(self.shift)}


def zero(primes: PrimeSet) -> SolenoidPoint:
    return SolenoidPoint(delta_embed(0, primes))


def padic_shift(r: SPoint) -> Fraction:
    """x = sum of x_j in Z_S with |r_j - x|_pj <= 1 for every j.

    For |r_j|_pj = p_j^l_j > 1, x_j = a_j / p_j^l_j where a_j is the residue
    of the unit p_j^l_j r_j modulo p_j^l_j; otherwise x_j = 0.
    """
    x = Fraction(0)
    for rj, p in zip(r.padic, r.primes):
        v = _valuation(rj, p)
        if v < 0:
            scale = p ** (-v)
            x += Fraction(residue_mod_pl(rj * scale, p, -v), scale)
    return x


def reduce(r: SPoint) -> SolenoidPoint:
    """Canonical representative of the coset r + Delta_S(Z_S)."""
    x = padic_shift(r)
    m = math.floor(r.real - x)
    shift = x + m
    return SolenoidPoint(r - delta_embed(shift, r.primes), shift)


def coset_eq(r: SPoint, t: SPoint) -> bool:
    """True iff r - t lies in Delta_S(Z_S)."""
    r._check(t)
    return reduce(r).rep == reduce(t).rep


def _as_point(x) -> SPoint:
    return x.rep if isinstance(x, SolenoidPoint) else x


def quotient_dist_witness(r, t, a: Exponents) -> tuple[MetricValue, int]:
    """(D, z): the quotient distance and the integer z attaining it.

    Both points are first moved into A_S; there every p-adic term is <= 1
    for integer translates, so only z with |delta - z| <= 1 can beat the
    bound 1 reached at z = round(delta). Ties go to the smallest z.
    """
    r, t = _as_point(r), _as_point(t)
    r._check(t)
    if len(a) != len(r.primes):
        raise InputError(f"expected {len(r.primes)} exponents, got {len(a)}")
    rr, tt = reduce(r).rep, reduce(t).rep
    delta = rr.real - tt.real
    base = math.floor(delta)
    best = None
    for z in (base - 1, base, base + 1):
        if abs(delta - z) > 1:
            continue
        d = dist_Sa(rr, tt + delta_embed(z, r.primes), a)
        if best is None or d < best[0]:
            best = (d, z)
    return best


def quotient_dist(r, t, a: Exponents) -> MetricValue:
    """The quotient metric D_{S,a} between the cosets of r and t."""
    return quotient_dist_witness(r, t, a)[0]


def solenoid_add(x: SolenoidPoint, y: SolenoidPoint) -> SolenoidPoint:
    return reduce(x.rep + y.rep)


def solenoid_neg(x: SolenoidPoint) -> SolenoidPoint:
    return reduce(-x.rep)
