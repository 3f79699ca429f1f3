"""Exact rational arithmetic with p-adic valuations.

Rationals are plain :class:`fractions.Fraction` values, which are always
kept in lowest terms with a positive denominator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

from .errors import DomainError, InputError

Rational = Fraction
RationalLike = Union[Fraction, int, str]

# valuation(0, p)
INFINITY = math.inf

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"refusing inexact value {x!r}; pass an int, Fraction or 'num/den' text")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InputError(f"not a rational: {x!r}") from exc


def format_rational(x: Fraction) -> str:
    """Text form "num/den", with the denominator omitted when it is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    token = text.strip()
    if not token:
        raise InputError(f"empty rational token {text!r}")
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed rational {text!r}") from exc


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise InputError(f"{p!r} is not a prime")


@dataclass(frozen=True)
class PrimeSet:
    """A nonempty, strictly increasing tuple of distinct primes."""

    primes: tuple[int, ...]

    def __post_init__(self):
        primes = tuple(self.primes)
        if not primes:
            raise InputError("prime set must be nonempty")
        for p in primes:
            _check_prime(p)
        if any(a >= b for a, b in zip(primes, primes[1:])):
            raise InputError(f"primes must be strictly increasing: {primes}")
        object.__setattr__(self, "primes", primes)

    @classmethod
    def of(cls, primes: Iterable[int]) -> "PrimeSet":
        """Build from any iterable, sorting and rejecting duplicates."""
        items = list(primes)
        if len(set(items)) != len(items):
            raise InputError(f"duplicate primes in {items}")
        return cls(tuple(sorted(items)))

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        try:
            items = [int(tok) for tok in text.split(",")]
        except ValueError as exc:
            raise InputError(f"malformed prime list {text!r}") from exc
        return cls.of(items)

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)

    def __getitem__(self, j: int) -> int:
        return self.primes[j]

    def __str__(self) -> str:
        return ",".join(map(str, self.primes))


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x: RationalLike, p: int) -> Union[int, float]:
    """Exponent j with x = p**j * (a/b), p dividing neither a nor b.

    Returns ``INFINITY`` for x == 0.
    """
    _check_prime(p)
    return _valuation(as_rational(x), p)


def _valuation(x: Fraction, p: int) -> Union[int, float]:
    if x == 0:
        return INFINITY
    num, den = x.numerator, x.denominator
    if num % p == 0:
        return _int_valuation(num, p)
    if den % p == 0:
        return -_int_valuation(den, p)
    return 0


def abs_p(x: RationalLike, p: int) -> Fraction:
    """The p-adic absolute value p**(-valuation(x, p)), exactly."""
    _check_prime(p)
    return _abs_p(as_rational(x), p)


def _abs_p(x: Fraction, p: int) -> Fraction:
    v = _valuation(x, p)
    if v == INFINITY:
        return Fraction(0)
    return Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v))


def is_padic_integer(x: Fraction, p: int) -> bool:
    return x.denominator % p != 0


def residue_mod_pl(x: RationalLike, p: int, l: int) -> int:
    """Image of x in Z_p / p^l Z_p = Z / p^l Z, as an integer in [0, p**l)."""
    _check_prime(p)
    if l < 0:
        raise InputError(f"level must be nonnegative, got {l}")
    x = as_rational(x)
    if not is_padic_integer(x, p):
        raise DomainError(f"{format_rational(x)} is not a {p}-adic integer")
    m = p**l
    if m == 1:
        return 0
    return x.numerator * pow(x.denominator, -1, m) % m


def crt_solve(residues: Sequence[tuple[int, int]]) -> int:
    """Smallest nonnegative z with z = z_j (mod m_j) for every pair (z_j, m_j)."""
    moduli = [m for _, m in residues]
    for m in moduli:
        if m < 1:
            raise InputError(f"modulus must be >= 1, got {m}")
    for i, a in enumerate(moduli):
        for b in moduli[i + 1:]:
            if math.gcd(a, b) != 1:
                raise InputError(f"moduli {a} and {b} are not coprime")
    total = reduce(lambda a, b: a * b, moduli, 1)
    z = 0
    for zj, mj in residues:
        if mj == 1:
            continue
        rest = total // mj
        z += zj * rest * pow(rest, -1, mj)
    return z % total
