from collections import OrderedDict, defaultdict

import numpy as np
import sympy

from . import scalars
from .algebra import BLADE_NAMES, C_BIT, D_BIT


def sympy_matrix(rows):
    return sympy.Matrix([[scalars.to_sympy(value) for value in row] for row in rows])


def exact_rank(rows):
    if len(rows) == 0:
        return 0
    return sympy_matrix(rows).rank()


def exact_nullspace(rows, ncols):
    """Basis of the right kernel of ``rows`` as lists of exact scalars."""
    if len(rows) == 0:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    basis = sympy_matrix(rows).nullspace()
    return [[scalars.from_sympy(value) for value in vector] for vector in basis]


def det2(matrix):
    return matrix[0, 0]*matrix[1, 1] - matrix[0, 1]*matrix[1, 0]


def object_matrix(rows):
    return np.array(rows, dtype=object)


# Eigenvalue offsets of the even generators A and B on the basic forms
FORM_WEIGHTS = {0: (0, 0), C_BIT: (-1, 1), D_BIT: (1, -1), C_BIT | D_BIT: (0, 0)}


def weight(n, m, blade):
    offset = FORM_WEIGHTS[blade]
    return (n + offset[0], m + offset[1])


def window_basis(window):
    """All (n, m, blade) with |n|, |m| <= window, grouped by (A, B)-weight."""
    blocks = defaultdict(list)
    for n in range(-window, window + 1):
        for m in range(-window, window + 1):
            for blade in BLADE_NAMES:
                blocks[weight(n, m, blade)].append((n, m, blade))
    return blocks


N_SYMBOL, M_SYMBOL = sympy.symbols('n m')


def affine_fit(points, values):
    """Exact (const, n-coefficient, m-coefficient) through all (n, m) -> value pairs, or None."""
    rows = [[1, n, m] for n, m in points]
    try:
        solution, params = sympy_matrix(rows).gauss_jordan_solve(sympy_matrix([[v] for v in values]))
    except ValueError:
        return None
    if params.shape[0]:
        return None
    return tuple(scalars.from_sympy(value) for value in solution)


def affine_text(coeffs):
    const, a, b = [scalars.to_sympy(c) for c in coeffs]
    return sympy.sstr(sympy.factor(const + a*N_SYMBOL + b*M_SYMBOL))


def shift_text(dn, dm):
    return '%s,%s' % ('n%+d' % dn if dn else 'n', 'm%+d' % dm if dm else 'm')


def fit_actions(points, per_point):
    """Affine fits of per-point actions {(dn, dm, form): value}; None for a key that is not affine."""
    keys = []
    for action in per_point:
        for key in action:
            if key not in keys:
                keys.append(key)
    fits = OrderedDict()
    for key in keys:
        fits[key] = affine_fit(points, [action.get(key, 0) for action in per_point])
    return fits
