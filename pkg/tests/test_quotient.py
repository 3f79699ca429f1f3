from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from solenoid.errors import InputError
from solenoid.geometry import Exponents, SPoint, delta_embed, dist_Sa
from solenoid.padic import PrimeSet
from solenoid.quotient import (
    coset_eq,
    in_AS,
    is_in_ZS,
    is_S_unit,
    quotient_dist,
    quotient_dist_witness,
    reduce,
    solenoid_add,
    solenoid_neg,
    zero,
)

from conftest import S2, S23, s_points, zs_elements

F = Fraction
ONE = Exponents((1,))


def pt(*coords, primes=S23):
    return SPoint.of(primes, [F(c) for c in coords])


def brute_quotient_dist(r, t, a, span=50):
    """Oracle: min over integer translates z in [-span, span], no candidate pruning."""
    return min(dist_Sa(r, t + delta_embed(z, r.primes), a) for z in range(-span, span + 1))


def test_membership():
    assert is_in_ZS(F(17, 12), S23)
    assert not is_in_ZS(F(1, 5), S23)
    assert is_in_ZS(7, PrimeSet((5,)))
    assert is_S_unit(F(2, 3), S23)
    assert is_S_unit(F(-9, 16), S23)
    assert not is_S_unit(5, S23)
    assert not is_S_unit(0, S23)
    assert is_S_unit(1, PrimeSet((7,)))


def test_reduce_examples():
    x = reduce(pt(F(3, 4), 0, 0))
    assert x.rep == pt(1, F(1, 4), F(1, 4))
    assert x.shift == F(-1, 4)
    y = reduce(pt(0, 0, F(5, 2)))
    assert y.rep == pt(-2, -2, F(1, 2))
    assert y.shift == 2
    again = reduce(x.rep)
    assert again.rep == x.rep and again.shift == 0


@given(s_points(primes=S23, coords=st.fractions(-10**4, 10**4, max_denominator=10**4)))
def test_reduce_invariants(r):
    x = reduce(r)
    assert x.is_canonical()
    assert in_AS(x.rep) and 0 <= x.rep.real < 1
    assert r - x.rep == delta_embed(x.shift, S23)
    assert dist_Sa(r, delta_embed(x.shift, S23), Exponents((1, 1))) <= 1
    assert dist_Sa(r, delta_embed(x.shift, S23), Exponents((2, 3))) <= 1


@given(s_points(), zs_elements())
def test_reduce_is_constant_on_cosets(r, z):
    assert reduce(r + delta_embed(z, S23)).rep == reduce(r).rep


def test_coset_eq_examples():
    r = pt(F(5, 7), F(-1, 9), F(2, 3))
    assert coset_eq(r, r + delta_embed(F(17, 12), S23))
    assert not coset_eq(pt(0, 0, 0), pt(0, 0, F(1, 2)))
    assert not coset_eq(r, r + delta_embed(F(1, 5), S23))


def test_quotient_dist_examples():
    zero2 = pt(0, 0, primes=S2)
    assert quotient_dist(pt(0, F(9, 10), primes=S2), zero2, ONE) == F(9, 10)
    assert quotient_dist(pt(1, F(9, 10), primes=S2), zero2, ONE) == F(1, 10)
    r = pt(0, F(3, 10), primes=S2)
    assert quotient_dist(r, zero2, ONE) == F(3, 10) == dist_Sa(r, zero2, ONE)
    for r in (pt(0, F(9, 10), primes=S2), pt(1, F(9, 10), primes=S2)):
        assert quotient_dist(r, zero2, ONE) == brute_quotient_dist(r, zero2, ONE)


def test_witness_ties_resolve_to_smallest_z():
    # real difference 1/2, p-adic parts equal: z = 0 and z = 1 both give 1/2 vs |1|_2 = 1
    r, t = pt(0, F(1, 2), primes=S2), pt(0, 0, primes=S2)
    d, z = quotient_dist_witness(r, t, ONE)
    assert d == F(1, 2) and z == 0
    # S = {3}: z = 0 and z = 1 both give max(1, 1/2) = 1
    S3 = PrimeSet((3,))
    r, t = pt(2, F(1, 2), primes=S3), pt(0, 0, primes=S3)
    d, z = quotient_dist_witness(r, t, ONE)
    assert d == 1 == brute_quotient_dist(r, t, ONE)
    assert z == 0


canonical = s_points(coords=st.fractions(-50, 50, max_denominator=60)).map(lambda r: reduce(r).rep)
exps = st.sampled_from([Exponents((1, 1)), Exponents((2, 3)), Exponents((F(1, 2), F(4, 3)))])


@given(canonical, canonical, exps)
def test_quotient_dist_matches_brute_force(r, t, a):
    d = quotient_dist(r, t, a)
    assert d == brute_quotient_dist(r, t, a)
    assert d <= 1
    if dist_Sa(r, t, a) <= F(1, 2):
        assert d == dist_Sa(r, t, a)


@given(s_points(), s_points(), s_points(), exps)
def test_quotient_metric_axioms(r, t, u, a):
    d = quotient_dist(r, t, a)
    assert (d == 0) == coset_eq(r, t)
    assert d == quotient_dist(t, r, a)
    assert d.le_sum(quotient_dist(r, u, a), quotient_dist(u, t, a))
    assert quotient_dist(r + u, t + u, a) == d


def test_group_examples():
    x = reduce(pt(F(3, 5), F(-7, 4), F(11, 3)))
    assert solenoid_add(x, solenoid_neg(x)) == zero(S23)
    assert solenoid_add(zero(S23), x) == x
    y = reduce(pt(0, 0, F(3, 5)))
    assert solenoid_add(y, y).rep == pt(-1, -1, F(1, 5))


@given(s_points(), s_points(), s_points())
def test_group_laws(r, t, u):
    x, y, z = reduce(r), reduce(t), reduce(u)
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x - x == zero(S23)
    assert (x + y).rep == reduce(r + t).rep


def test_solenoid_point_json():
    assert reduce(pt(F(3, 4), 0, 0)).to_json() == {"rep": "1;1/4;1/4", "shift": "-1/4"}


def test_quotient_dist_size_mismatch():
    with pytest.raises(InputError):
        quotient_dist(pt(0, 0, 0), pt(0, 0, 0), ONE)
