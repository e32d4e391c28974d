"""The Berezin model: supermatrices over the Grassmann algebra and continued functions.

A group element g factors as diag(p, q) * exp_odd(N) with N = (0, c; d, 0). The
continued basis functions are F[n,m,1] = p^n q^m, F[n,m,C*] = p^n q^m c,
F[n,m,D*] = p^n q^m d and F[n,m,C*^D*] = p^n q^m c d. Derivatives along the odd
generators perturb g on the right by I + eps*E and read off the eps-coefficient.
"""
from collections import OrderedDict, namedtuple
from fractions import Fraction

from . import log, settings, utils
from . import scalars
from .algebra import C_BIT, D_BIT, WEDGE, EPS, ExtGrassmannElement, GrassmannElement
from .derivations import ExtractionMismatch, constants_from_actions

logger = log.get_logger('berezin')

FORMS = ['1', 'C*', 'D*', 'C*^D*']
CANDIDATE_SHIFTS = {'C': [(0, 0), (2, -2)], 'D': [(0, 0), (-2, 2)]}


class ParityError(ValueError):
    pass


class NotDecomposable(ValueError):
    pass


def _ext(value):
    if isinstance(value, ExtGrassmannElement):
        return value
    return ExtGrassmannElement.lift(value)


def _quadratic_factor(convention):
    if convention == 'doubled':
        return Fraction(1)
    if convention == 'series':
        return Fraction(1, 2)
    raise ValueError('unknown quadratic convention %s (expected one of %s)'
                     % (convention, ', '.join(settings.QUADRATIC_CONVENTIONS)))


class SuperMatrix(object):
    """2x2 matrix with even diagonal and odd off-diagonal exterior-algebra entries."""

    def __init__(self, entries):
        (a, b), (c, d) = entries
        self.entries = ((_ext(a), _ext(b)), (_ext(c), _ext(d)))
        for i in range(2):
            for j in range(2):
                expected = 0 if i == j else 1
                entry = self.entries[i][j]
                if entry and entry.parity() != expected:
                    raise ParityError('entry (%d, %d) must be %s' % (i, j, 'even' if expected == 0 else 'odd'))

    @classmethod
    def identity(cls):
        return cls(((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))))

    @classmethod
    def odd(cls, c, d):
        return cls(((Fraction(0), c), (d, Fraction(0))))

    @classmethod
    def from_coordinates(cls, a1, a_w, b1, b_w, c_C, c_D, d_C, d_D, convention=settings.QUADRATIC_CONVENTION):
        """diag(a1 + a_w C*^D*, b1 + b_w C*^D*) times exp_odd of the odd coordinates."""
        p = GrassmannElement.from_components(one=a1, wedge=a_w)
        q = GrassmannElement.from_components(one=b1, wedge=b_w)
        c = GrassmannElement.from_components(c_star=c_C, d_star=c_D)
        d = GrassmannElement.from_components(c_star=d_C, d_star=d_D)
        return cls(((p, Fraction(0)), (Fraction(0), q))) * exp_odd(cls.odd(c, d), convention)

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def __mul__(self, other):
        return smat_mul(self, other)

    def __neg__(self):
        return SuperMatrix(tuple(tuple(-x for x in row) for row in self.entries))

    def __add__(self, other):
        return SuperMatrix(tuple(tuple(x + y for x, y in zip(r1, r2))
                                 for r1, r2 in zip(self.entries, other.entries)))

    def map_coeffs(self, fun):
        return SuperMatrix(tuple(tuple(x.map_coeffs(fun) for x in row) for row in self.entries))

    def is_off_diagonal(self):
        return not self[0, 0] and not self[1, 1]

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'SuperMatrix(%r)' % (self.entries,)


def smat_mul(A, B):
    return SuperMatrix(tuple(tuple(A[i, 0]*B[0, j] + A[i, 1]*B[1, j] for j in range(2)) for i in range(2)))


def exp_odd(N, convention='series'):
    """I + N + k*N^2 with k = 1/2 for the exponential series and 1 for the doubled convention."""
    if not N.is_off_diagonal():
        raise ParityError('exp_odd takes a strictly off-diagonal matrix')
    square = N * N
    cube = square * N
    assert not any(entry for row in cube.entries for entry in row)
    factor = _quadratic_factor(convention)
    scaled = square.map_coeffs(lambda c: c*factor)
    return SuperMatrix.identity() + N + scaled


class Decomposition(namedtuple('Decomposition', 'p q c d')):
    __slots__ = ()

    def coordinates(self):
        """Coordinates in the layout taken by SuperMatrix.from_coordinates."""
        return OrderedDict([('a1', self.p.body), ('a_w', self.p.coeff(WEDGE)),
                            ('b1', self.q.body), ('b_w', self.q.coeff(WEDGE)),
                            ('c_C', self.c.coeff(C_BIT)), ('c_D', self.c.coeff(D_BIT)),
                            ('d_C', self.d.coeff(C_BIT)), ('d_D', self.d.coeff(D_BIT))])

    def recompose(self, convention=settings.QUADRATIC_CONVENTION):
        zero = ExtGrassmannElement()
        even = SuperMatrix(((self.p, zero), (zero, self.q)))
        return even * exp_odd(SuperMatrix.odd(self.c, self.d), convention)


def decompose(g, convention=settings.QUADRATIC_CONVENTION):
    """Factor g = diag(p, q) * exp_odd((0, c; d, 0)) by fixed-point iteration on the nilpotent corrections."""
    kappa = _quadratic_factor(convention)
    if g[0, 0].body == 0 or g[1, 1].body == 0:
        raise NotDecomposable('diagonal bodies must be invertible')
    p, q = g[0, 0], g[1, 1]
    # each pass fixes one more order of nilpotency
    for _ in range(ExtGrassmannElement.RANK + 1):
        p_next = g[0, 0] - g[0, 1] * q.inverse() * g[1, 0] * kappa
        q_next = g[1, 1] - g[1, 0] * p.inverse() * g[0, 1] * kappa
        if p_next == p and q_next == q:
            break
        p, q = p_next, q_next
    if p.body == 0 or q.body == 0:
        raise NotDecomposable('even factor is not invertible')
    c = p.inverse() * g[0, 1]
    d = q.inverse() * g[1, 0]
    return Decomposition(p, q, c, d)


ContinuedFunction = namedtuple('ContinuedFunction', 'n m form')


def continue_eval(F, g, convention=settings.QUADRATIC_CONVENTION):
    parts = decompose(g, convention)
    base = parts.p ** F.n * parts.q ** F.m
    if F.form == '1':
        return base
    if F.form == 'C*':
        return base * parts.c
    if F.form == 'D*':
        return base * parts.d
    if F.form in ('C*^D*', 'W'):
        return base * parts.c * parts.d
    raise ValueError('unknown form %s' % F.form)


def _odd_unit(direction):
    zero, one = Fraction(0), Fraction(1)
    if direction == 'C':
        return SuperMatrix(((one, EPS), (zero, one)))
    if direction == 'D':
        return SuperMatrix(((one, zero), (EPS, one)))
    raise ValueError('odd direction must be C or D, got %s' % direction)


def odd_derivative(F, direction, g, convention=settings.QUADRATIC_CONVENTION, side=settings.EXTRACTION_SIDE):
    """eps-coefficient of F(g (I + eps E_dir)), read on the given side."""
    perturbed = g * _odd_unit(direction)
    return continue_eval(F, perturbed, convention).epsilon_part(side)


def even_derivative(F, direction, g, convention=settings.QUADRATIC_CONVENTION):
    """delta-coefficient of F(g (I + delta E_dir)) with a commuting dual unit delta."""
    if direction not in ('A', 'B'):
        raise ValueError('even direction must be A or B, got %s' % direction)
    lifted = g.map_coeffs(scalars.Dual)
    shifted = scalars.Dual(Fraction(1), Fraction(1))
    one, zero = scalars.Dual(Fraction(1)), scalars.Dual(Fraction(0))
    unit = SuperMatrix(((shifted, zero), (zero, one)) if direction == 'A' else ((one, zero), (zero, shifted)))
    value = continue_eval(F, lifted * unit, convention)
    return value.map_coeffs(scalars.infinitesimal_part).eps_free()


def sample_element(sample, convention=settings.QUADRATIC_CONVENTION):
    return SuperMatrix.from_coordinates(convention=convention, **sample)


def _fit(tag, source, convention, side):
    """Coefficients of the derivative of F[source] along ``tag`` over the candidate functions."""
    n, m, form = source
    candidates = [(dn, dm, target) for dn, dm in CANDIDATE_SHIFTS[tag] for target in FORMS]
    rows, rhs = [], []
    for sample in settings.BEREZIN_SAMPLES:
        g = sample_element(sample, convention)
        observed = odd_derivative(ContinuedFunction(n, m, form), tag, g, convention, side)
        values = [continue_eval(ContinuedFunction(n + dn, m + dm, target), g, convention).eps_free()
                  for dn, dm, target in candidates]
        for blade in (0, C_BIT, D_BIT, WEDGE):
            rows.append([value.coeff(blade) for value in values])
            rhs.append([observed.coeff(blade)])
    try:
        solution, params = utils.sympy_matrix(rows).gauss_jordan_solve(utils.sympy_matrix(rhs))
    except ValueError:
        raise ExtractionMismatch('%s on F%s is not a combination of the candidate functions' % (tag, source))
    if params.shape[0]:
        raise ExtractionMismatch('%s on F%s is not determined by the samples' % (tag, source))
    return dict((key, scalars.from_sympy(value)) for key, value in zip(candidates, solution) if value != 0)


def derive_ber(convention=settings.QUADRATIC_CONVENTION, side=settings.EXTRACTION_SIDE):
    k = constants_from_actions(lambda tag, source: _fit(tag, source, convention, side))
    logger.info('Berezin model (%s convention) gives %s', convention, dict(k.to_json()))
    return k


def compare_conventions(side=settings.EXTRACTION_SIDE):
    return OrderedDict((convention, derive_ber(convention, side)) for convention in settings.QUADRATIC_CONVENTIONS)


def action_list(convention=settings.QUADRATIC_CONVENTION, side=settings.EXTRACTION_SIDE,
                points=settings.ACTION_FIT_POINTS):
    """Rendered actions of C and D on the continued functions, as affine functions of (n, m)."""
    lines = []
    for tag in ['C', 'D']:
        for form in FORMS:
            per_point = [_fit(tag, (n, m, form), convention, side) for n, m in points]
            terms = []
            for (dn, dm, target), fit in utils.fit_actions(points, per_point).items():
                if fit is None:
                    raise ExtractionMismatch('%s.F[n,m,%s] is not affine in n, m' % (tag, form))
                terms.append('(%s)*F[%s,%s]' % (utils.affine_text(fit), utils.shift_text(dn, dm), target))
            lines.append('%s.F[n,m,%s] = %s' % (tag, form, ' + '.join(terms) or '0'))
    return lines
