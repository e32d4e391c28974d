"""Exterior algebras over exact scalars and Grassmann-valued Laurent superfunctions.

Blades are bit masks over the ordered generators C* (bit 1), D* (bit 2) and,
for the extended algebra, the formal odd unit eps (bit 4). A blade always
lists its generators in that order; products are signed by counting the
transpositions needed to restore it.
"""
from collections import OrderedDict
from fractions import Fraction

from . import scalars

C_BIT = 1
D_BIT = 2
EPS_BIT = 4
WEDGE = C_BIT | D_BIT

BLADE_NAMES = OrderedDict([(0, '1'), (C_BIT, 'C*'), (D_BIT, 'D*'), (WEDGE, 'C*^D*')])
BLADE_BY_NAME = dict((name, blade) for blade, name in BLADE_NAMES.items())
BLADE_BY_NAME.update({'W': WEDGE, 'C*D*': WEDGE})


def popcount(blade):
    return bin(blade).count('1')


def blade_sign(a, b):
    """Sign of reordering blade ``a`` followed by blade ``b`` into canonical order."""
    swaps = 0
    j = 0
    while b >> j:
        if b >> j & 1:
            swaps += popcount(a >> (j + 1))
        j += 1
    return -1 if swaps % 2 else 1


def blade_parity(blade):
    return popcount(blade) % 2


class ExteriorElement(object):
    RANK = 0

    def __init__(self, coeffs=None):
        terms = {}
        for blade, coeff in (coeffs or {}).items():
            if blade >> self.RANK:
                raise ValueError('blade %d outside the rank %d algebra' % (blade, self.RANK))
            if coeff != 0:
                terms[blade] = coeff
        self._terms = terms

    @classmethod
    def scalar(cls, value):
        return cls({0: value})

    @classmethod
    def lift(cls, other):
        if isinstance(other, ExteriorElement):
            if other.RANK > cls.RANK:
                raise ValueError('cannot embed rank %d element into rank %d' % (other.RANK, cls.RANK))
            return cls(dict(other._terms))
        return cls.scalar(other)

    def terms(self):
        return sorted(self._terms.items())

    def coeff(self, blade):
        return self._terms.get(blade, Fraction(0))

    @property
    def body(self):
        return self.coeff(0)

    def is_zero(self):
        return not self._terms

    def parity(self):
        """0 or 1 for homogeneous elements, None for mixed ones (zero counts as even)."""
        parities = set(blade_parity(blade) for blade in self._terms)
        if not parities:
            return 0
        if len(parities) == 1:
            return parities.pop()
        return None

    def even_part(self):
        return self.__class__(dict((b, c) for b, c in self._terms.items() if blade_parity(b) == 0))

    def odd_part(self):
        return self.__class__(dict((b, c) for b, c in self._terms.items() if blade_parity(b) == 1))

    def map_coeffs(self, fun):
        return self.__class__(dict((b, fun(c)) for b, c in self._terms.items()))

    def _coerce_pair(self, other):
        if not isinstance(other, ExteriorElement):
            return self, self.scalar(other)
        if other.RANK > self.RANK:
            return other.lift(self), other
        if other.RANK < self.RANK:
            return self, self.lift(other)
        return self, other

    def __add__(self, other):
        left, right = self._coerce_pair(other)
        terms = dict(left._terms)
        for blade, coeff in right._terms.items():
            terms[blade] = terms.get(blade, 0) + coeff
        return left.__class__(terms)

    __radd__ = __add__

    def __neg__(self):
        return self.map_coeffs(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ExteriorElement):
            return self.map_coeffs(lambda c: c * other)
        left, right = self._coerce_pair(other)
        terms = {}
        for blade_a, coeff_a in left._terms.items():
            for blade_b, coeff_b in right._terms.items():
                if blade_a & blade_b:
                    continue
                blade = blade_a | blade_b
                value = coeff_a * coeff_b
                if blade_sign(blade_a, blade_b) < 0:
                    value = -value
                terms[blade] = terms.get(blade, 0) + value
        return left.__class__(terms)

    def __rmul__(self, other):
        # only scalars reach here; exterior elements dispatch through __mul__
        return self.map_coeffs(lambda c: other * c)

    def inverse(self):
        body = self.body
        if body == 0:
            raise ZeroDivisionError('element with zero body is not invertible')
        inv_body = 1 / body
        nilpotent = self * inv_body - 1
        result = self.scalar(Fraction(1))
        power = self.scalar(Fraction(1))
        for _ in range(self.RANK):
            power = power * (-nilpotent)
            result = result + power
        return result * inv_body

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        result = self.scalar(Fraction(1))
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, ExteriorElement):
            other = self.scalar(other)
        left, right = self._coerce_pair(other)
        return left._terms == right._terms

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def _blade_name(self, blade):
        names = []
        if blade & C_BIT:
            names.append('C*')
        if blade & D_BIT:
            names.append('D*')
        if blade & EPS_BIT:
            names.append('eps')
        return '^'.join(names) or '1'

    def __repr__(self):
        if not self._terms:
            return '0'
        parts = []
        for blade, coeff in self.terms():
            text = scalars.format_scalar(coeff) if not isinstance(coeff, scalars.Dual) else repr(coeff)
            if blade:
                text = '(%s)%s' % (text, self._blade_name(blade))
            parts.append(text)
        return ' + '.join(parts)


class GrassmannElement(ExteriorElement):
    """Element of the exterior algebra over C*, D* with basis 1, C*, D*, C*^D*."""
    RANK = 2

    @classmethod
    def from_components(cls, one=0, c_star=0, d_star=0, wedge=0):
        return cls({0: one, C_BIT: c_star, D_BIT: d_star, WEDGE: wedge})

    def components(self):
        return tuple(self.coeff(blade) for blade in BLADE_NAMES)

    def to_json(self):
        return [scalars.format_scalar(c) for c in self.components()]

    @classmethod
    def from_json(cls, values, strict=True):
        if len(values) != 4:
            raise scalars.ScalarFormatError('expected four Grassmann coefficients, got %d' % len(values))
        return cls.from_components(*[scalars.parse_scalar(v, strict=strict) for v in values])


class ExtGrassmannElement(ExteriorElement):
    """Exterior algebra over C*, D* and a fresh odd unit eps (eps listed last)."""
    RANK = 3

    def eps_free(self):
        return GrassmannElement(dict((b, c) for b, c in self._terms.items() if not b & EPS_BIT))

    def epsilon_part(self, side='right'):
        """The h in x = x0 + h*eps (side 'right') or x = x0 + eps*h (side 'left')."""
        if side not in ('left', 'right'):
            raise ValueError('unknown extraction side %s' % side)
        terms = {}
        for blade, coeff in self._terms.items():
            if not blade & EPS_BIT:
                continue
            rest = blade & ~EPS_BIT
            if side == 'left' and popcount(rest) % 2:
                coeff = -coeff
            terms[rest] = coeff
        return GrassmannElement(terms)


ONE = GrassmannElement.from_components(one=1)
C_STAR = GrassmannElement.from_components(c_star=1)
D_STAR = GrassmannElement.from_components(d_star=1)
C_WEDGE_D = GrassmannElement.from_components(wedge=1)
EPS = ExtGrassmannElement({EPS_BIT: Fraction(1)})


def grassmann_mul(a, b):
    return a * b


class SuperFunction(object):
    """Finite sum of Laurent monomials z^n w^m with Grassmann coefficients."""

    def __init__(self, terms=None):
        canonical = {}
        for (n, m), value in (terms or {}).items():
            if not isinstance(value, GrassmannElement):
                value = GrassmannElement.lift(value)
            if value:
                canonical[(int(n), int(m))] = value
        self._terms = canonical

    @classmethod
    def monomial(cls, n, m, form=None, coeff=Fraction(1)):
        form = ONE if form is None else form
        if isinstance(form, str):
            form = GrassmannElement({BLADE_BY_NAME[form]: Fraction(1)})
        return cls({(n, m): form * coeff})

    @classmethod
    def constant(cls, value=Fraction(1)):
        return cls({(0, 0): GrassmannElement.scalar(value)})

    def items(self):
        return sorted(self._terms.items())

    def __getitem__(self, key):
        return self._terms.get(key, GrassmannElement())

    def support(self):
        return sorted(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(self.items())

    def parity(self):
        parities = set(value.parity() for value in self._terms.values())
        if not parities:
            return 0
        if len(parities) == 1:
            return parities.pop()
        return None

    def __add__(self, other):
        if not isinstance(other, SuperFunction):
            other = SuperFunction.constant(other) if other != 0 else SuperFunction()
        terms = dict(self._terms)
        for key, value in other._terms.items():
            terms[key] = terms[key] + value if key in terms else value
        return SuperFunction(terms)

    __radd__ = __add__

    def __neg__(self):
        return SuperFunction(dict((k, -v) for k, v in self._terms.items()))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SuperFunction):
            terms = {}
            for (n1, m1), g1 in self._terms.items():
                for (n2, m2), g2 in other._terms.items():
                    key = (n1 + n2, m1 + m2)
                    product = g1 * g2
                    terms[key] = terms[key] + product if key in terms else product
            return SuperFunction(terms)
        if isinstance(other, GrassmannElement):
            return SuperFunction(dict((k, v * other) for k, v in self._terms.items()))
        return SuperFunction(dict((k, v * other) for k, v in self._terms.items()))

    def __rmul__(self, other):
        if isinstance(other, GrassmannElement):
            return SuperFunction(dict((k, other * v) for k, v in self._terms.items()))
        return SuperFunction(dict((k, other * v) for k, v in self._terms.items()))

    def __eq__(self, other):
        if not isinstance(other, SuperFunction):
            if other == 0:
                return not self._terms
            return NotImplemented
        return self._terms == other._terms

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return 'SuperFunction(0)'
        return 'SuperFunction(%s)' % ' + '.join('f[%d,%d]*(%r)' % (n, m, g) for (n, m), g in self.items())

    def to_json(self):
        return [OrderedDict([('n', n), ('m', m), ('g', g.to_json())]) for (n, m), g in self.items()]

    @classmethod
    def from_json(cls, records, strict=True):
        terms = {}
        for record in records:
            key = (int(record['n']), int(record['m']))
            value = GrassmannElement.from_json(record['g'], strict=strict)
            terms[key] = terms[key] + value if key in terms else value
        return cls(terms)


ZERO_FUNCTION = SuperFunction()


def sf_add(f, g):
    return f + g


def sf_mul(f, g):
    return f * g


def parity_split(f):
    even, odd = {}, {}
    for key, value in f.items():
        if value.even_part():
            even[key] = value.even_part()
        if value.odd_part():
            odd[key] = value.odd_part()
    return SuperFunction(even), SuperFunction(odd)
