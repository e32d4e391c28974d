"""The Kostant model: normal-form rewriting in the enveloping algebra and functionals Phi.

Elements of E(g) are kept in the normal form A^a B^b G with G one of 1, C, D and
W = (CD - DC)/2. A functional Phi[f(n,m) w] pairs the form w with the matching G
and evaluates A^a B^b as n^a m^b on f(n,m). Acting on functionals is right
multiplication of the probe, with a sign for the odd generators.
"""
from collections import OrderedDict, namedtuple
from fractions import Fraction

import numpy as np

from . import log, settings, utils
from . import scalars
from .derivations import constants_from_actions

logger = log.get_logger('kostant')

GAMMAS = ['1', 'C', 'D', 'W']
# the form each normal-form factor pairs with
PAIRING = OrderedDict([('1', '1'), ('C', 'C*'), ('D', 'D*'), ('W', 'C*^D*')])
FORMS = list(PAIRING.values())
HALF = Fraction(1, 2)


class NoMatch(ValueError):
    pass


class EnvelopingElement(object):
    """Finite combination of normal-form monomials A^a B^b G."""

    def __init__(self, terms=None):
        self._terms = dict(((a, b, g), c) for (a, b, g), c in (terms or {}).items() if c != 0)
        for a, b, g in self._terms:
            if a < 0 or b < 0 or g not in GAMMAS:
                raise ValueError('invalid normal-form monomial %s' % ((a, b, g),))

    @classmethod
    def unit(cls):
        return cls({(0, 0, '1'): Fraction(1)})

    @classmethod
    def monomial(cls, a, b, gamma, coeff=Fraction(1)):
        return cls({(a, b, gamma): coeff})

    def items(self):
        return sorted(self._terms.items(), key=lambda item: (item[0][0], item[0][1], GAMMAS.index(item[0][2])))

    def coeff(self, a, b, gamma):
        return self._terms.get((a, b, gamma), Fraction(0))

    def __add__(self, other):
        terms = dict(self._terms)
        for key, value in other._terms.items():
            terms[key] = terms.get(key, 0) + value
        return EnvelopingElement(terms)

    def __neg__(self):
        return EnvelopingElement(dict((k, -v) for k, v in self._terms.items()))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return EnvelopingElement(dict((k, v*scalar) for k, v in self._terms.items()))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, EnvelopingElement):
            return NotImplemented
        return self._terms == other._terms

    def __ne__(self, other):
        return not self == other

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        if not self._terms:
            return '0'
        return ' + '.join('(%s)A^%dB^%d%s' % (scalars.format_scalar(c), a, b, '' if g == '1' else g)
                          for (a, b, g), c in self.items())


def _right_mul_term(a, b, gamma, tag):
    """A^a B^b G times a generator, in normal form, as a list of ((a, b, G), coeff)."""
    if tag == 'A':
        result = [((a + 1, b, gamma), Fraction(1))]
        if gamma == 'C':
            result.append(((a, b, 'C'), Fraction(-1)))
        elif gamma == 'D':
            result.append(((a, b, 'D'), Fraction(1)))
        return result
    if tag == 'B':
        result = [((a, b + 1, gamma), Fraction(1))]
        if gamma == 'C':
            result.append(((a, b, 'C'), Fraction(1)))
        elif gamma == 'D':
            result.append(((a, b, 'D'), Fraction(-1)))
        return result
    if tag == 'C':
        if gamma == '1':
            return [((a, b, 'C'), Fraction(1))]
        if gamma == 'C':
            return []
        if gamma == 'D':
            return [((a + 1, b, '1'), HALF), ((a, b + 1, '1'), HALF), ((a, b, 'W'), Fraction(-1))]
        return [((a + 1, b, 'C'), HALF), ((a, b + 1, 'C'), HALF)]
    if tag == 'D':
        if gamma == '1':
            return [((a, b, 'D'), Fraction(1))]
        if gamma == 'C':
            return [((a + 1, b, '1'), HALF), ((a, b + 1, '1'), HALF), ((a, b, 'W'), Fraction(1))]
        if gamma == 'D':
            return []
        return [((a + 1, b, 'D'), -HALF), ((a, b + 1, 'D'), -HALF)]
    raise ValueError('unknown generator %s' % tag)


def right_mul(e, tag):
    terms = {}
    for (a, b, gamma), coeff in e.items():
        for key, value in _right_mul_term(a, b, gamma, tag):
            terms[key] = terms.get(key, 0) + coeff*value
    return EnvelopingElement(terms)


def word(tags):
    e = EnvelopingElement.unit()
    for tag in tags:
        e = right_mul(e, tag)
    return e


def defining_matrices(alpha, beta):
    """Two-dimensional representation of gl(1|1) with A + B acting as alpha + beta."""
    alpha, beta = scalars.to_scalar(alpha), scalars.to_scalar(beta)
    zero, one = Fraction(0), Fraction(1)
    A = utils.object_matrix([[alpha, zero], [zero, alpha - 1]])
    B = utils.object_matrix([[beta, zero], [zero, beta + 1]])
    C = utils.object_matrix([[zero, one], [zero, zero]])
    D = utils.object_matrix([[zero, zero], [alpha + beta, zero]])
    return OrderedDict([('A', A), ('B', B), ('C', C), ('D', D)])


def to_matrix(e, alpha, beta):
    mats = defining_matrices(alpha, beta)
    identity = utils.object_matrix([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]])
    gammas = {'1': identity, 'C': mats['C'], 'D': mats['D'],
              'W': (np.dot(mats['C'], mats['D']) - np.dot(mats['D'], mats['C'])) * HALF}
    result = identity * 0
    for (a, b, gamma), coeff in e.items():
        term = identity
        for _ in range(a):
            term = np.dot(term, mats['A'])
        for _ in range(b):
            term = np.dot(term, mats['B'])
        result = result + np.dot(term, gammas[gamma]) * coeff
    return result


BasisFunctional = namedtuple('BasisFunctional', 'n m form')


def evaluate(F, e):
    """Phi[F] on g # e as {monomial shift: value}; the only monomial is f(n,m) itself."""
    total = Fraction(0)
    for (a, b, gamma), coeff in e.items():
        if PAIRING[gamma] == F.form:
            total += coeff * Fraction(F.n)**a * Fraction(F.m)**b
    return {(0, 0): total} if total != 0 else {}


def functional_values(tag, F):
    """Values of X.Phi[F] on the probes g # G, g # AG, g # BG."""
    sign = -1 if tag in ('C', 'D') else 1
    table = OrderedDict()
    for prefix in ['', 'A', 'B']:
        for gamma in GAMMAS:
            probe = EnvelopingElement.monomial(prefix.count('A'), prefix.count('B'), gamma)
            values = evaluate(F, right_mul(probe, tag))
            table[(prefix, gamma)] = dict((shift, sign*value) for shift, value in values.items())
    return table


CANDIDATE_SHIFTS = {'A': [(0, 0)], 'B': [(0, 0)], 'C': [(0, 0), (2, -2)], 'D': [(0, 0), (-2, 2)]}


def act_functional(tag, F):
    """X.Phi[F] as {BasisFunctional: coefficient}, matched on the probe set."""
    table = functional_values(tag, F)
    combination = OrderedDict()
    for shift in CANDIDATE_SHIFTS[tag]:
        for gamma, form in PAIRING.items():
            value = table[('', gamma)].get(shift, Fraction(0))
            if value != 0:
                combination[BasisFunctional(F.n + shift[0], F.m + shift[1], form)] = value
    # the A- and B-probes must agree with the combination read off the plain probes
    for (prefix, gamma), observed in table.items():
        predicted = {}
        probe = EnvelopingElement.monomial(prefix.count('A'), prefix.count('B'), gamma)
        for G, coeff in combination.items():
            for shift, value in evaluate(G, probe).items():
                key = (G.n - F.n + shift[0], G.m - F.m + shift[1])
                predicted[key] = predicted.get(key, 0) + coeff*value
        predicted = dict((k, v) for k, v in predicted.items() if v != 0)
        if predicted != observed:
            raise NoMatch('%s.Phi[%s] does not match the candidate space on probe %s%s'
                          % (tag, F, prefix, gamma))
    return combination


def _action(tag, source):
    n, m, form = source
    combination = act_functional(tag, BasisFunctional(n, m, form))
    return dict(((G.n - n, G.m - m, G.form), value) for G, value in combination.items())


def derive_kk():
    k = constants_from_actions(_action)
    logger.info('Kostant model gives %s', dict(k.to_json()))
    return k


def action_trace(points=settings.ACTION_FIT_POINTS):
    """Rendered actions of C and D on the functionals, as affine functions of (n, m)."""
    lines = []
    for tag in ['C', 'D']:
        for form in FORMS:
            per_point = [_action(tag, (n, m, form)) for n, m in points]
            terms = []
            for (dn, dm, target), fit in utils.fit_actions(points, per_point).items():
                if fit is None:
                    raise NoMatch('%s.Phi[f(n,m) %s] is not affine in n, m' % (tag, form))
                terms.append('(%s)*Phi[f(%s) %s]' % (utils.affine_text(fit), utils.shift_text(dn, dm), target))
            lines.append('%s.Phi[f(n,m) %s] = %s' % (tag, form, ' + '.join(terms) or '0'))
    return lines
