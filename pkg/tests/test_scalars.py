from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from braidrep.errors import EvalAtZero, NonInvertibleScale, ScalarParseError
from braidrep.scalars import ONE, ZERO, GaussianRational, I, Scalar, T, parse_gaussian, parse_scalar
from strategies import gaussians, nonzero_rationals, real_scalars, scalars, unit_scalars


def test_additive_inverse():
    assert T + (-T) == ZERO
    assert (T + (-T)).is_zero()


def test_exponent_addition():
    assert T * T == Scalar.monomial(1, 2)


def test_difference_of_squares_matches_sympy_expansion():
    t = sympy.Symbol("t")
    expected = sympy.Poly(sympy.expand((1 + t) * (1 - t)), t)
    got = (ONE + T) * (ONE - T)
    as_dict = {m[0]: GaussianRational(Fraction(int(c.p), int(c.q))) for m, c in expected.terms()}
    assert got == Scalar(as_dict)
    assert got == ONE - T * T


@pytest.mark.parametrize("a, expected", [
    (T, T),
    (I * T, -(I * T)),
    (3 + 2 * T * T, 3 + 2 * T * T),
])
def test_conj_examples(a, expected):
    assert a.conj() == expected


def test_abs_sq_examples():
    assert T.abs_sq() == T * T
    assert I.abs_sq() == ONE
    assert (ONE + T).abs_sq() == (ONE + T) * (ONE + T)


def test_eval_examples():
    assert (T * T).eval(2) == 4
    assert T.inverse().eval(2) == Fraction(1, 2)
    # standard q-table entry with x_{k+1} = 1
    assert (ONE + (T - ONE) * 1).eval(3) == 3


def test_eval_at_zero():
    with pytest.raises(EvalAtZero):
        T.inverse().eval(0)
    assert (3 + T).eval(0) == 3


def test_inverse_only_for_monomials():
    assert (2 * T).inverse() == Scalar.monomial(Fraction(1, 2), -1)
    with pytest.raises(NonInvertibleScale):
        (ONE + T).inverse()
    with pytest.raises(NonInvertibleScale):
        ZERO.inverse()


def test_exponent_overflow_is_an_error():
    big = Scalar.monomial(1, 2**62)
    with pytest.raises(OverflowError):
        big * big


@pytest.mark.parametrize("text, rendered", [
    ("(3/2)*t^-1 + 1 + (0+1i)*t^2", "(3/2)*t^-1 + 1 + (0+1i)*t^2"),
    ("1 - t^2", "1 + -t^2"),
    ("t", "t"),
    ("-2*t", "-2*t"),
    ("(1/2-3/4i)", "(1/2-3/4i)"),
    ("t/2", "(1/2)*t"),
    ("0", "0"),
    ("i*i", "-1"),
    ("(1+t)^2", "1 + 2*t + t^2"),
])
def test_render(text, rendered):
    assert str(parse_scalar(text)) == rendered


@pytest.mark.parametrize("bad", ["", "t^", "1 +", "(1+t", "x", "1/(1+t)", "(1+t)^-1", "2^t"])
def test_parse_errors(bad):
    with pytest.raises(ScalarParseError):
        parse_scalar(bad)


def test_parse_gaussian():
    assert parse_gaussian("5/2") == GaussianRational(Fraction(5, 2))
    assert parse_gaussian("(0+1i)") == GaussianRational(0, 1)
    with pytest.raises(ScalarParseError):
        parse_gaussian("t")


def test_hash_consistent_with_numbers():
    assert hash(Scalar.const(3)) == hash(3)
    assert hash(ZERO) == hash(0)
    assert {ONE: "x"}[Scalar({0: 1})] == "x"


@given(scalars)
def test_render_parse_round_trip(a):
    assert parse_scalar(str(a)) == a


@given(scalars, scalars)
def test_canonical_equality(a, b):
    assert (a == b) == (a - b).is_zero()


@given(unit_scalars)
def test_unit_inverse(u):
    assert u * u.inverse() == ONE


@given(scalars, scalars)
def test_conj_is_an_involutive_ring_map(a, b):
    assert (a + b).conj() == a.conj() + b.conj()
    assert (a * b).conj() == a.conj() * b.conj()
    assert a.conj().conj() == a


@given(scalars)
def test_abs_sq_fixed_by_conj(a):
    assert a.abs_sq().conj() == a.abs_sq()


@given(scalars, scalars, nonzero_rationals)
def test_eval_is_multiplicative(a, b, p):
    assert (a * b).eval(p) == a.eval(p) * b.eval(p)
    assert (a + b).eval(p) == a.eval(p) + b.eval(p)


@given(real_scalars, nonzero_rationals)
def test_abs_sq_eval_is_square_modulus_for_real_coefficients(a, p):
    v = a.eval(p)
    assert a.abs_sq().eval(p) == v.abs_sq()


@given(gaussians, gaussians)
def test_gaussian_division(a, b):
    if b:
        assert (a / b) * b == a
