from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from solenoid.approx import (
    BlPoint,
    Character,
    FiniteLevel,
    char_eval,
    cl_coord,
    line_approximation,
    line_distance,
    line_point,
    pi_l,
)
from solenoid.errors import InputError
from solenoid.geometry import Exponents, SPoint, delta_embed
from solenoid.quotient import quotient_dist, reduce, zero

from conftest import S2, S23, s_points

F = Fraction


def pt(*coords, primes=S23):
    return SPoint.of(primes, [F(c) for c in coords])


levels = st.tuples(st.integers(0, 4), st.integers(0, 3)).map(lambda l: FiniteLevel(S23, l))
canonical = s_points().map(reduce)


def test_level():
    level = FiniteLevel(S23, (3, 2))
    assert level.modulus == 72 and level.moduli == (8, 9)
    with pytest.raises(InputError):
        FiniteLevel(S23, (1, -1))
    with pytest.raises(InputError):
        FiniteLevel(S23, (1,))


def test_pi_l_examples():
    assert pi_l(reduce(pt(F(5, 3), F(1, 4), primes=S2)), FiniteLevel(S2, (3,))) == BlPoint((7,), F(1, 4))
    x = reduce(pt(F(5, 7), F(-2, 5), F(1, 3)))
    assert pi_l(x, FiniteLevel.trivial(S23)) == BlPoint((0, 0), F(1, 3))


@given(canonical, canonical, levels)
def test_pi_l_homomorphism(x, y, level):
    a, b, c = pi_l(x.rep, level), pi_l(y.rep, level), pi_l(x.rep + y.rep, level)
    assert c.residues == tuple((u + v) % m for u, v, m in zip(a.residues, b.residues, level.moduli))
    assert c.real == a.real + b.real
    d = pi_l(x.rep * y.rep, level)
    assert d.residues == tuple((u * v) % m for u, v, m in zip(a.residues, b.residues, level.moduli))


def test_cl_coord_examples():
    level = FiniteLevel(S23, (1, 1))
    assert cl_coord(pt(7, 7, F(1, 2)), level).value == F(11, 2)
    assert cl_coord(pt(8, 8, F(3, 2)), level).value == F(11, 2)
    x = reduce(pt(F(3, 5), F(1, 4), F(7, 3)))
    assert cl_coord(x, FiniteLevel.trivial(S23)).value == x.rep.real % 1


@given(canonical, levels, st.integers(-10**6, 10**6))
def test_cl_coord_translation_invariance(x, level, z):
    assert cl_coord(x.rep + delta_embed(z, S23), level) == cl_coord(x, level)


@given(canonical, canonical, levels)
def test_cl_coord_homomorphism(x, y, level):
    total = (cl_coord(x, level).value + cl_coord(y, level).value) % level.modulus
    assert cl_coord(x + y, level).value == total


def test_char_eval_examples():
    level = FiniteLevel(S23, (1, 1))
    x = reduce(pt(7, 7, F(1, 2)))
    assert char_eval(Character(level, 0), x) == 0
    assert char_eval(Character(level, 1), x) == F(11, 12)
    assert char_eval(Character(level, 1), x.rep + delta_embed(5, S23)) == F(11, 12)


@given(canonical, canonical, levels, st.integers(-50, 50))
def test_char_eval_multiplicative(x, y, level, m):
    chi = Character(level, m)
    assert char_eval(chi, x + y) == (char_eval(chi, x) + char_eval(chi, y)) % 1
    assert 0 <= char_eval(chi, x) < 1


@given(canonical, levels, st.integers(-20, 20), st.data())
def test_char_factors_through_pi_l(x, level, m, data):
    # add an element of p_1^l_1 Z x ... x p_k^l_k Z x {0}: same pi_l image, same phase
    kernel = [data.draw(st.integers(-30, 30)) * q * F(1, data.draw(st.sampled_from([1, 5, 7])))
              for q in level.moduli]
    y = SPoint(S23, tuple(a + b for a, b in zip(x.rep.padic, kernel)), x.rep.real)
    assert pi_l(y, level) == pi_l(x, level)
    chi = Character(level, m)
    assert char_eval(chi, y) == char_eval(chi, x)


def test_line_approximation_examples():
    a = Exponents((1, 1))
    target = pt(1, 2, F(1, 2))
    s = line_approximation(target, F(1, 6), a)
    assert s == F(15, 2)
    assert line_distance(target, s, a) == F(1, 8)
    assert line_approximation(zero(S23), F(1, 100), a) == 0
    far = reduce(pt(F(2, 7), F(5, 11), F(3, 4)))
    assert line_approximation(far, 1, a) == F(3, 4)
    assert line_approximation(far, 5, a) == F(3, 4)


@given(canonical, st.integers(0, 8), st.sampled_from([Exponents((1, 1)), Exponents((2, 3)), Exponents((F(1, 2), 1))]))
def test_line_approximation_self_certifies(target, e, a):
    eps = F(1, 3**e)
    s = line_approximation(target, eps, a)
    assert quotient_dist(reduce(line_point(s, S23)), target, a) <= eps
