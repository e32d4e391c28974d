import os
from fractions import Fraction

MODES = ['real', 'complex']
MODE = os.environ.get('SUPERLAB_MODE', 'real')
LOG_LEVEL = os.environ.get('SUPERLAB_LOG_LEVEL', 'WARNING').upper()

# Kernel computations
DEFAULT_WINDOW = 5
MIN_WINDOW = 1

# Classification
SCAN_GRID = [Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1)]
# Residual sums have at most this many degree two terms; larger scaled grids use Python integers
SCAN_TERM_BOUND = 64
SCAN_WORKERS = int(os.environ.get('SUPERLAB_SCAN_WORKERS', '1'))
SCAN_CHUNK_SIZE = 64
SAMPLE_NUMERATORS = list(range(-3, 4))
SAMPLE_DENOMINATORS = [1, 2, 3]
SAMPLE_RETRY_BUDGET = 500

# Isomorphism search: values tried, in order, for parameters left free by the solver
WITNESS_CANDIDATES = [Fraction(1), Fraction(2), Fraction(-1), Fraction(-2), Fraction(1, 2),
                      Fraction(3), Fraction(-1, 2), Fraction(0)]

# Berezin model
QUADRATIC_CONVENTIONS = ['doubled', 'series']
QUADRATIC_CONVENTION = 'doubled'
EXTRACTION_SIDE = 'right'
# Group elements diag(p, q) * exp_odd(N) used to fit derived actions.
# Keys: body and wedge part of p and q, odd coordinates of N.
BEREZIN_SAMPLES = [
    {'a1': Fraction(2), 'a_w': Fraction(1, 3), 'b1': Fraction(3), 'b_w': Fraction(-1, 2),
     'c_C': Fraction(1), 'c_D': Fraction(2), 'd_C': Fraction(-1), 'd_D': Fraction(1, 2)},
    {'a1': Fraction(-1, 2), 'a_w': Fraction(2), 'b1': Fraction(5), 'b_w': Fraction(1),
     'c_C': Fraction(3), 'c_D': Fraction(-1), 'd_C': Fraction(2), 'd_D': Fraction(1)},
    {'a1': Fraction(3, 2), 'a_w': Fraction(-1), 'b1': Fraction(-2), 'b_w': Fraction(1, 4),
     'c_C': Fraction(-2), 'c_D': Fraction(1, 3), 'd_C': Fraction(1), 'd_D': Fraction(-3)},
    {'a1': Fraction(5), 'a_w': Fraction(0), 'b1': Fraction(1, 3), 'b_w': Fraction(2),
     'c_C': Fraction(1, 2), 'c_D': Fraction(1), 'd_C': Fraction(3), 'd_D': Fraction(2)},
]
# (n, m) points used to fit the derived action list as affine functions of n and m
ACTION_FIT_POINTS = [(0, 0), (1, 0), (0, 1), (2, 1), (-1, 3)]
