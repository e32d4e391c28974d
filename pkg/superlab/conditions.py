"""The structural conditions of a planed LRT representation and the invariant kernels.

Each condition is a polynomial ``f(k, one)`` in the sixteen constants. ``k`` only
needs attribute access, so the same functions evaluate a single
StructureConstants exactly and a StructureConstants of numpy arrays during
grid scans (``one`` is then the scaled right side).
"""
from collections import OrderedDict, namedtuple
from fractions import Fraction

import pandas as pd

from . import log, settings, utils
from . import scalars
from .algebra import GrassmannElement, SuperFunction
from .derivations import BasisDerivation, apply, check_bracket_relations, generators

logger = log.get_logger('conditions')


class NotARepresentation(ValueError):
    pass


class WindowTooSmall(ValueError):
    pass


def _i(k, one):
    return 2*k.c_Cz*k.c_Dw - 2*k.c_Cz*k.c_Dz + k.c_Cz*k.cw_C + k.c_Dz*k.cw_D


def _ii(k, one):
    return k.c_Cz*k.c1_C + k.c_Dz*k.c1_D


def _iii(k, one):
    return 2*k.c_Cw*k.c_Dw - 2*k.c_Cw*k.c_Dz + k.c_Cw*k.cw_C + k.c_Dw*k.cw_D


def _iv(k, one):
    return k.c_Cw*k.c1_C + k.c_Dw*k.c1_D


def _v(k, one):
    return k.cw_C*k.c1_C


def _vi(k, one):
    return k.cw_C*k.c1_D


def _vii(k, one):
    return 2*k.c_Cz*k.c1_D - 2*k.c_Cw*k.c1_D - k.cw_D*k.c1_D


def _viii(k, one):
    return 2*k.c_Dz*k.c1_D - 2*k.c_Dw*k.c1_D + k.cw_D*k.c1_C


def _ix(k, one):
    return 2*k.d_Dz*k.d_Cw - 2*k.d_Dz*k.d_Cz + k.d_Cz*k.dw_C + k.d_Dz*k.dw_D


def _x(k, one):
    return k.d_Cz*k.d1_C + k.d_Dz*k.d1_D


def _xi(k, one):
    return 2*k.d_Dw*k.d_Cw - 2*k.d_Dw*k.d_Cz + k.d_Cw*k.dw_C + k.d_Dw*k.dw_D


def _xii(k, one):
    return k.d_Cw*k.d1_C + k.d_Dw*k.d1_D


def _xiii(k, one):
    return 2*k.d_Cw*k.d1_C - 2*k.d_Cz*k.d1_C - k.dw_C*k.d1_D


def _xiv(k, one):
    return 2*k.d_Dw*k.d1_C - 2*k.d_Dz*k.d1_C + k.dw_C*k.d1_C


def _xv(k, one):
    return k.dw_D*k.d1_C


def _xvi(k, one):
    return k.dw_D*k.d1_D


def _xvii(k, one):
    return (k.cw_C*k.d_Cz + (k.cw_D + 2*k.c_Cw - 4*k.c_Cz)*k.d_Dz + 2*k.c_Cz*k.d_Dw
            + k.c_Cz*k.dw_C + k.c_Dz*k.dw_D)


def _xviii(k, one):
    return (-2*k.c_Cw*k.d_Dz + k.cw_C*k.d_Cw + (k.cw_D - 2*k.c_Cz + 4*k.c_Cw)*k.d_Dw
            + k.c_Cw*k.dw_C + k.c_Dw*k.dw_D)


def _xix(k, one):
    return k.c1_C*k.d_Cz + k.c1_D*k.d_Dz + k.c_Cz*k.d1_C + k.c_Dz*k.d1_D - one


def _xx(k, one):
    return k.c1_C*k.d_Cw + k.c1_D*k.d_Dw + k.c_Cw*k.d1_C + k.c_Dw*k.d1_D - one


def _xxi(k, one):
    return (2*k.c_Cw - 2*k.c_Cz)*k.d1_C - k.cw_C*k.d1_D - k.c1_D*k.dw_C


def _xxii(k, one):
    return (2*k.c_Dw - 2*k.c_Dz + k.cw_C)*k.d1_C + k.c1_C*k.dw_C


def _xxiii(k, one):
    return (2*k.d_Cz - 2*k.d_Cw - k.dw_D)*k.c1_D - k.d1_D*k.cw_D


def _xxiv(k, one):
    return k.dw_D*k.c1_C + (2*k.d_Dz - 2*k.d_Dw)*k.c1_D + k.d1_C*k.cw_D


# id -> (block, polynomial); 'c' only involves the C constants, 'd' only the D constants
CONDITIONS = OrderedDict([
    ('i', ('c', _i)), ('ii', ('c', _ii)), ('iii', ('c', _iii)), ('iv', ('c', _iv)),
    ('v', ('c', _v)), ('vi', ('c', _vi)), ('vii', ('c', _vii)), ('viii', ('c', _viii)),
    ('ix', ('d', _ix)), ('x', ('d', _x)), ('xi', ('d', _xi)), ('xii', ('d', _xii)),
    ('xiii', ('d', _xiii)), ('xiv', ('d', _xiv)), ('xv', ('d', _xv)), ('xvi', ('d', _xvi)),
    ('xvii', ('coupled', _xvii)), ('xviii', ('coupled', _xviii)), ('xix', ('coupled', _xix)),
    ('xx', ('coupled', _xx)), ('xxi', ('coupled', _xxi)), ('xxii', ('coupled', _xxii)),
    ('xxiii', ('coupled', _xxiii)), ('xxiv', ('coupled', _xxiv)),
])
CONDITION_IDS = list(CONDITIONS)


def condition_ids(block=None):
    return [cid for cid, (b, _) in CONDITIONS.items() if block is None or b == block]


def residual(cid, k, one=Fraction(1)):
    return CONDITIONS[cid][1](k, one)


def definiteness_determinants(k):
    det1 = ((k.c_Dw - k.c_Dz + k.cw_C)*(k.d_Cw - k.d_Cz + k.dw_D)
            - (k.c_Cw - k.c_Cz + k.cw_D)*(k.d_Dw - k.d_Dz + k.dw_C))
    det2 = k.c1_C*k.d1_D - k.c1_D*k.d1_C
    return det1, det2


class ConditionReport(namedtuple('ConditionReport', 'residuals det1 det2 is_representation is_definite')):
    __slots__ = ()

    def failing_ids(self):
        return [cid for cid, value in self.residuals.items() if value != 0]

    def to_json(self):
        return OrderedDict([
            ('conditions', OrderedDict((cid, scalars.format_scalar(v)) for cid, v in self.residuals.items())),
            ('xxv', OrderedDict([('det1', scalars.format_scalar(self.det1)),
                                 ('det2', scalars.format_scalar(self.det2))])),
            ('is_representation', self.is_representation),
            ('is_definite', self.is_definite),
            ('failing', self.failing_ids()),
        ])

    def to_frame(self):
        rows = [(cid, CONDITIONS[cid][0], scalars.format_scalar(v), v == 0)
                for cid, v in self.residuals.items()]
        rows.append(('xxv', 'det1', scalars.format_scalar(self.det1), self.det1 != 0))
        rows.append(('xxv', 'det2', scalars.format_scalar(self.det2), self.det2 != 0))
        return pd.DataFrame(rows, columns=['condition', 'block', 'value', 'satisfied'])


def evaluate_conditions(k):
    residuals = OrderedDict((cid, fun(k, Fraction(1))) for cid, (_, fun) in CONDITIONS.items())
    det1, det2 = definiteness_determinants(k)
    is_representation = all(value == 0 for value in residuals.values())
    return ConditionReport(residuals, det1, det2, is_representation, det1 != 0 or det2 != 0)


def failing_ids(report):
    return report.failing_ids()


def equivalence_check(k):
    return evaluate_conditions(k).is_representation == check_bracket_relations(k).passed


CoupledSystem = namedtuple('CoupledSystem', 'matrix unknowns rhs')
COUPLED_UNKNOWNS = ['d_Cz', 'd_Cw', 'd_Dz', 'd_Dw', 'd1_C', 'd1_D', 'dw_C', 'dw_D']


def coupled_system(k):
    """Conditions (xvii)-(xx) as a 4x8 linear system in the D constants."""
    matrix = utils.object_matrix([
        [k.cw_C, 0, k.cw_D + 2*k.c_Cw - 4*k.c_Cz, 2*k.c_Cz, 0, 0, k.c_Cz, k.c_Dz],
        [0, k.cw_C, -2*k.c_Cw, k.cw_D - 2*k.c_Cz + 4*k.c_Cw, 0, 0, k.c_Cw, k.c_Dw],
        [k.c1_C, 0, k.c1_D, 0, k.c_Cz, k.c_Dz, 0, 0],
        [0, k.c1_C, 0, k.c1_D, k.c_Cw, k.c_Dw, 0, 0],
    ])
    return CoupledSystem(matrix, list(COUPLED_UNKNOWNS), utils.object_matrix([0, 0, 1, 1]))


class KernelBasis(namedtuple('KernelBasis', 'basis window')):
    __slots__ = ()

    @property
    def dim(self):
        return len(self.basis)

    def _coordinate_rows(self, functions):
        keys = sorted(set((n, m, blade) for f in functions for (n, m), g in f.items()
                          for blade, _ in g.terms()))
        return [[f[(n, m)].coeff(blade) for (n, m, blade) in keys] for f in functions]

    def contains(self, f):
        if not f:
            return True
        return utils.exact_rank(self._coordinate_rows(self.basis + [f])) == self.dim

    def spans(self, functions):
        """Same span as ``functions``."""
        functions = list(functions)
        rank = utils.exact_rank(self._coordinate_rows(functions)) if functions else 0
        return rank == self.dim and all(self.contains(f) for f in functions)

    def to_json(self):
        return [f.to_json() for f in self.basis]


def _joint_kernel(derivations, window):
    if window < settings.MIN_WINDOW:
        raise WindowTooSmall('window %d is below the minimum %d' % (window, settings.MIN_WINDOW))
    basis = []
    for wt, elements in sorted(utils.window_basis(window).items()):
        images = []
        for n, m, blade in elements:
            source = SuperFunction({(n, m): GrassmannElement({blade: Fraction(1)})})
            images.append([apply(X, source) for X in derivations])
        keys = sorted(set((i, key, blade) for image in images for i, f in enumerate(image)
                          for key, g in f.items() for blade, _ in g.terms()))
        rows = [[image[i][key].coeff(blade) for image in images] for (i, key, blade) in keys]
        for vector in utils.exact_nullspace(rows, len(elements)):
            terms = {}
            for coeff, (n, m, blade) in zip(vector, elements):
                if coeff != 0:
                    terms[(n, m)] = terms.get((n, m), GrassmannElement()) + GrassmannElement({blade: coeff})
            basis.append(SuperFunction(terms))
    logger.debug('joint kernel of %s on window %d has dimension %d',
                 ''.join(X.tag for X in derivations), window, len(basis))
    return KernelBasis(basis, window)


def even_kernel(window=settings.DEFAULT_WINDOW):
    return _joint_kernel([BasisDerivation('A'), BasisDerivation('B')], window)


def invariant_sheaf(k, window=settings.DEFAULT_WINDOW):
    report = evaluate_conditions(k)
    if not report.is_representation:
        raise NotARepresentation('conditions %s fail' % ', '.join(report.failing_ids()))
    return _joint_kernel(list(generators(k).values()), window)


PlanedReport = namedtuple('PlanedReport', 'is_representation is_definite kernel_dim consistent')


def is_planed_lrt(k, window=settings.DEFAULT_WINDOW):
    """Representation check plus definiteness by determinant and by kernel."""
    report = evaluate_conditions(k)
    if not report.is_representation:
        return PlanedReport(False, report.is_definite, None, True)
    kernel_dim = invariant_sheaf(k, window).dim
    consistent = report.is_definite == (kernel_dim == 1)
    if not consistent:
        logger.warning('determinant test says definite=%s but the invariant kernel has dimension %d',
                       report.is_definite, kernel_dim)
    return PlanedReport(True, report.is_definite, kernel_dim, consistent)
