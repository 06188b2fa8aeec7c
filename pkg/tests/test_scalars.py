from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from kleinorb.scalars import (
    GaussRational,
    I,
    format_gauss,
    format_rational,
    gauss_arith,
    normalize,
    parse_gauss,
    parse_rational,
    to_gauss,
)

rationals = st.fractions(max_denominator=50).filter(lambda f: abs(f.numerator) < 10**6)
gaussians = st.builds(GaussRational, rationals, rationals)


def as_sympy(z: GaussRational):
    return sympy.Rational(z.re.numerator, z.re.denominator) + sympy.I * sympy.Rational(
        z.im.numerator, z.im.denominator
    )


@pytest.mark.parametrize(
    "num, den, expected",
    [(6, 4, Fraction(3, 2)), (-6, -4, Fraction(3, 2)), (3, -9, Fraction(-1, 3)), (0, 7, Fraction(0))],
)
def test_normalize(num, den, expected):
    q = normalize(num, den)
    assert q == expected and q.denominator > 0


def test_normalize_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        normalize(1, 0)


def test_i_squared():
    assert I * I == -1
    assert I**4 == 1
    assert (1 + I) * (1 - I) == 2


@pytest.mark.parametrize(
    "a, b, op, expected",
    [
        ((1, 2), (3, -1), "+", GaussRational(4, 1)),
        ((1, 2), (3, -1), "*", GaussRational(5, 5)),
        ((1, 0), (0, 1), "/", GaussRational(0, -1)),
        ((Fraction(1, 2), 0), (Fraction(1, 3), 0), "-", GaussRational(Fraction(1, 6))),
    ],
)
def test_gauss_arith(a, b, op, expected):
    assert gauss_arith(GaussRational(*a), GaussRational(*b), op) == expected


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussRational(1, 1) / 0


def test_gauss_arith_unknown_operator():
    with pytest.raises(ValueError):
        gauss_arith(1, 2, "%")


def test_rejects_floats():
    with pytest.raises(TypeError):
        GaussRational(0.5)
    with pytest.raises(TypeError):
        to_gauss("1")


def test_immutable():
    z = GaussRational(1, 2)
    with pytest.raises(AttributeError):
        z.re = Fraction(3)


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if b:
        assert (a / b) * b == a


@given(gaussians, gaussians)
def test_agrees_with_sympy(a, b):
    assert sympy.expand(as_sympy(a * b) - as_sympy(a) * as_sympy(b)) == 0
    assert sympy.expand(as_sympy(a + b) - as_sympy(a) - as_sympy(b)) == 0
    if b:
        assert sympy.simplify(as_sympy(a / b) - as_sympy(a) / as_sympy(b)) == 0


@given(gaussians)
def test_conjugate_norm(z):
    assert z * z.conjugate() == z.norm()


@given(rationals)
def test_mixed_operands(q):
    z = GaussRational(q)
    assert z == q and hash(z) == hash(q)
    assert z + 1 == q + 1 and 2 * z == 2 * q


@pytest.mark.parametrize(
    "value, text",
    [(Fraction(3), "3"), (Fraction(-3, 4), "-3/4"), (Fraction(0), "0"), (7, "7")],
)
def test_format_rational(value, text):
    assert format_rational(value) == text


@pytest.mark.parametrize("text", ["1/0", "x", "1.5", ""])
def test_parse_rational_rejects(text):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rational(text)


@given(rationals)
def test_rational_round_trip(q):
    assert parse_rational(format_rational(q)) == q


@given(gaussians)
def test_gauss_round_trip(z):
    assert parse_gauss(format_gauss(z)) == z


def test_format_gauss():
    assert format_gauss(GaussRational(Fraction(1, 2), -1)) == "1/2-1*I"
    assert format_gauss(I) == "0+1*I"
    assert parse_gauss("3") == 3
