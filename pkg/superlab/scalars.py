"""Exact scalars: rationals, Gaussian rationals and dual numbers.

Rationals are plain ``fractions.Fraction`` values. ``GaussianRational`` covers
the complex mode on top of sympy's QQ_I domain and collapses to a ``Fraction``
whenever its imaginary part vanishes, so a real value has one representation.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import sympy
from sympy import QQ, QQ_I
from sympy.polys.polyerrors import CoercionFailed


class ScalarFormatError(ValueError):
    pass


def _to_qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _from_qq(value):
    return Fraction(int(value.numerator), int(value.denominator))


class GaussianRational(object):
    """a + bi held as an element of sympy's QQ_I domain."""
    __slots__ = ('element',)

    def __new__(cls, re_part, im_part=0):
        return cls.from_element(QQ_I(_to_qq(re_part), _to_qq(im_part)))

    @classmethod
    def from_element(cls, element):
        if not element.y:
            return _from_qq(element.x)
        obj = object.__new__(cls)
        obj.element = element
        return obj

    @property
    def re(self):
        return _from_qq(self.element.x)

    @property
    def im(self):
        return _from_qq(self.element.y)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other.element
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QQ_I(_to_qq(other), QQ.zero)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.from_element(self.element + other)

    __radd__ = __add__

    def __neg__(self):
        return self.from_element(-self.element)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.from_element(self.element - other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.from_element(other - self.element)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.from_element(self.element * other)

    __rmul__ = __mul__

    def norm(self):
        return self.re*self.re + self.im*self.im

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.from_element(self.element / other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.from_element(other / self.element)

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        return self.from_element(self.element ** exponent)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.element == other.element
        if isinstance(other, (int, Fraction)):
            # real values never take this type
            return False
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return True

    def __repr__(self):
        return 'GaussianRational(%s)' % format_scalar(self)

    def __str__(self):
        return format_scalar(self)

    def _sympy_(self):
        return QQ_I.to_sympy(self.element)


@dataclass(frozen=True, eq=False)
class Dual(object):
    """Commuting dual number a + b*delta with delta**2 = 0 over exact scalars."""
    a: object
    b: object = Fraction(0)

    @staticmethod
    def _lift(other):
        if isinstance(other, Dual):
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return Dual(other, Fraction(0))
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return Dual(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return Dual(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return Dual(self.a * other.a, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if other.a == 0:
            raise ZeroDivisionError('Dual division by a pure infinitesimal')
        return Dual(self.a / other.a, (self.b * other.a - self.a * other.b) / (other.a * other.a))

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return (Fraction(1) / self) ** (-exponent)
        return Dual(self.a ** exponent, exponent * self.a ** (exponent - 1) * self.b if exponent else Fraction(0))

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        return 'Dual(%s, %s)' % (format_scalar(self.a), format_scalar(self.b))


def infinitesimal_part(value):
    if isinstance(value, Dual):
        return value.b
    return Fraction(0)


def is_integer(value):
    return isinstance(value, (int, Fraction)) and Fraction(value).denominator == 1


def to_scalar(value):
    if isinstance(value, (GaussianRational, Dual)):
        return value
    if isinstance(value, bool):
        raise ScalarFormatError('booleans are not scalars')
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, sympy.Basic):
        return from_sympy(value)
    raise ScalarFormatError('cannot use %r as an exact scalar' % (value,))


def to_sympy(value):
    if isinstance(value, GaussianRational):
        return QQ_I.to_sympy(value.element)
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, sympy.Basic):
        return value
    raise ScalarFormatError('cannot convert %r to sympy' % (value,))


def from_sympy(expr):
    expr = sympy.sympify(expr)
    if not expr.is_Rational:
        expr = sympy.expand(sympy.simplify(expr))
    try:
        return GaussianRational.from_element(QQ_I.from_sympy(expr))
    except CoercionFailed:
        raise ScalarFormatError('%s is not a (Gaussian) rational number' % expr)


def _format_fraction(value):
    value = Fraction(value)
    if value.denominator == 1:
        return '%d' % value.numerator
    return '%d/%d' % (value.numerator, value.denominator)


def format_scalar(value):
    if isinstance(value, GaussianRational):
        sign = '+' if value.im > 0 else '-'
        return '%s%s%si' % (_format_fraction(value.re), sign, _format_fraction(abs(value.im)))
    if isinstance(value, (int, Fraction)):
        return _format_fraction(value)
    if isinstance(value, sympy.Basic):
        return sympy.sstr(value)
    raise ScalarFormatError('cannot format %r' % (value,))


_RATIONAL = r'[+-]?\d+(?:/\d+)?'
_RATIONAL_RE = re.compile(r'^(%s)$' % _RATIONAL)
_GAUSSIAN_RE = re.compile(r'^(%s)([+-]\d+(?:/\d+)?)i$' % _RATIONAL)


def _parse_fraction(text, strict):
    if '/' in text:
        numerator, denominator = text.split('/')
        numerator, denominator = int(numerator), int(denominator)
        if denominator == 0:
            raise ScalarFormatError('zero denominator in %r' % text)
        if strict and gcd(numerator, denominator) != 1:
            raise ScalarFormatError('fraction %r is not in lowest terms' % text)
        return Fraction(numerator, denominator)
    return Fraction(int(text))


def parse_scalar(text, strict=True):
    """Parse a canonical fraction string such as "-1/2" or "1/2+3/4i".

    With ``strict`` set, fractions that are not in lowest terms are rejected.
    Integers (e.g. from JSON numbers) are accepted as they are.
    """
    if isinstance(text, bool):
        raise ScalarFormatError('expected a fraction string, got %r' % (text,))
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ScalarFormatError('expected a fraction string, got %r' % (text,))
    text = text.strip()
    if _RATIONAL_RE.match(text):
        return _parse_fraction(text, strict)
    match = _GAUSSIAN_RE.match(text)
    if match:
        return GaussianRational(_parse_fraction(match.group(1), strict),
                                _parse_fraction(match.group(2), strict))
    raise ScalarFormatError('malformed scalar %r' % text)
