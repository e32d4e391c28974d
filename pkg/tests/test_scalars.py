from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from superlab import scalars
from superlab.scalars import Dual, GaussianRational, ScalarFormatError, format_scalar, parse_scalar

from conftest import nonzero_fractions, small_fractions


def test_gaussian_collapses_to_fraction():
    assert GaussianRational(Fraction(1, 2), 0) == Fraction(1, 2)
    assert isinstance(GaussianRational(3, 0), Fraction)
    i = GaussianRational(0, 1)
    assert i*i == -1
    assert isinstance(i*i, Fraction)


@given(nonzero_fractions, small_fractions)
def test_gaussian_field_inverse(re_part, im_part):
    z = GaussianRational(re_part, im_part)
    assert z * (1 / z) == 1


@given(nonzero_fractions)
def test_rational_field_inverse(a):
    assert a * (1 / a) == 1


def test_dual_arithmetic():
    x = Dual(Fraction(3), Fraction(1))
    assert x*x == Dual(9, 6)
    assert x**3 == Dual(27, 27)
    assert x**-1 == Dual(Fraction(1, 3), Fraction(-1, 9))
    assert scalars.infinitesimal_part(x*2 + 1) == 2
    assert scalars.infinitesimal_part(Fraction(5)) == 0
    with pytest.raises(ZeroDivisionError):
        Fraction(1) / Dual(0, 1)


@pytest.mark.parametrize('text, value', [
    ('0', Fraction(0)),
    ('-1/2', Fraction(-1, 2)),
    ('7', Fraction(7)),
    ('1/2+3/4i', GaussianRational(Fraction(1, 2), Fraction(3, 4))),
    ('0-1i', GaussianRational(0, -1)),
])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value
    assert format_scalar(parse_scalar(text)) == text


@pytest.mark.parametrize('text', ['2/4', '1/0', 'one', '1.5', '', '1/2i'])
def test_parse_scalar_rejects(text):
    with pytest.raises(ScalarFormatError):
        parse_scalar(text)


def test_parse_scalar_lenient():
    assert parse_scalar('2/4', strict=False) == Fraction(1, 2)
    assert parse_scalar(3) == 3
    with pytest.raises(ScalarFormatError):
        parse_scalar(True)


def test_sympy_bridge():
    z = GaussianRational(Fraction(1, 3), -2)
    assert scalars.from_sympy(scalars.to_sympy(z)) == z
    assert scalars.from_sympy(sympy.Rational(-5, 6)) == Fraction(-5, 6)
    with pytest.raises(ScalarFormatError):
        scalars.from_sympy(sympy.sqrt(2))


def test_is_integer():
    assert scalars.is_integer(Fraction(4, 2))
    assert not scalars.is_integer(Fraction(1, 2))
    assert not scalars.is_integer(GaussianRational(1, 1))


def test_gaussian_values_live_in_qq_i():
    z = GaussianRational(Fraction(1, 2), Fraction(-3, 4))
    assert z.element.parent() == sympy.QQ_I
    assert (z.re, z.im) == (Fraction(1, 2), Fraction(-3, 4))
    assert z.conjugate() * z == z.norm()
    assert GaussianRational(0, 1) ** -2 == -1
    assert z + Dual(1) == Dual(z + 1)
    with pytest.raises(ZeroDivisionError):
        z / Fraction(0)
