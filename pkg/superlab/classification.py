"""Reduced parameterization of planed LRT structures, lemma scans and rank counts.

A valid structure factors as M_C = (c^z; c^w)(mu_C, nu_C), M_D = (d^z; d^w)(mu_D, nu_D)
with M_1 = (nu_C c_1, -mu_C c_1; nu_D d_1, -mu_D d_1) and the wedge constants fixed
by M_C and M_D. The ten reduced parameters carry one gauge scaling per block.
"""
import multiprocessing
from collections import OrderedDict, namedtuple
from fractions import Fraction
from functools import reduce as fold
from math import gcd

import numpy as np
import pandas as pd
import sympy

from . import log, settings, utils
from . import scalars
from .conditions import CONDITIONS, condition_ids, definiteness_determinants, evaluate_conditions
from .derivations import C_FIELDS, D_FIELDS, FIELDS, SchemaError, StructureConstants

logger = log.get_logger('classification')

REDUCED_FIELDS = ['mu_C', 'nu_C', 'mu_D', 'nu_D', 'cz', 'cw', 'dz', 'dw', 'c1', 'd1']


class ConstraintViolation(ValueError):
    def __init__(self, constraint, message):
        super(ConstraintViolation, self).__init__('constraint %s violated: %s' % (constraint, message))
        self.constraint = constraint


class SamplingExhausted(ValueError):
    pass


def _delta(p):
    return p.nu_C*p.mu_D - p.mu_C*p.nu_D


def check_constraints(p):
    """Return the id of the first violated constraint, or None."""
    delta = _delta(p)
    if delta*(p.dz*p.c1 - p.cz*p.d1) != 1 or delta*(p.dw*p.c1 - p.cw*p.d1) != 1:
        return 'h5'
    if (p.cz - p.cw)*(p.dz - p.dw) == 0 and p.c1*p.d1 == 0:
        return 'h6'
    return None


class ReducedParams(namedtuple('ReducedParams', REDUCED_FIELDS)):
    __slots__ = ()

    def __new__(cls, *args, **kwargs):
        p = super(ReducedParams, cls).__new__(cls, *args, **kwargs)
        p = super(ReducedParams, cls).__new__(cls, *[scalars.to_scalar(v) for v in p])
        violated = check_constraints(p)
        if violated == 'h5':
            raise ConstraintViolation('h5', 'det(nu, mu) * (d^z c_1 - c^z d_1) and (d^w c_1 - c^w d_1) must be 1')
        if violated == 'h6':
            raise ConstraintViolation('h6', '(c^z - c^w)(d^z - d^w) and c_1 d_1 both vanish')
        return p

    def to_json(self):
        return OrderedDict((f, scalars.format_scalar(getattr(self, f))) for f in REDUCED_FIELDS)

    @classmethod
    def from_json(cls, obj, strict=True):
        if not isinstance(obj, dict):
            raise SchemaError('reduced parameters must be a JSON object')
        missing = [f for f in REDUCED_FIELDS if f not in obj]
        if missing:
            raise SchemaError('missing reduced parameters: %s' % ', '.join(missing))
        unknown = sorted(set(obj) - set(REDUCED_FIELDS))
        if unknown:
            raise SchemaError('unknown keys: %s' % ', '.join(unknown))
        values = []
        for f in REDUCED_FIELDS:
            try:
                values.append(scalars.parse_scalar(obj[f], strict=strict))
            except scalars.ScalarFormatError as e:
                raise SchemaError('key %s: %s' % (f, e))
        return cls(*values)


NotFactorable = namedtuple('NotFactorable', 'lemma reason')


def _expand_values(mu_C, nu_C, mu_D, nu_D, cz, cw, dz, dw, c1, d1):
    # works on exact scalars and on sympy symbols alike
    values = dict(c_Cz=cz*mu_C, c_Dz=cz*nu_C, c_Cw=cw*mu_C, c_Dw=cw*nu_C,
                  d_Cz=dz*mu_D, d_Dz=dz*nu_D, d_Cw=dw*mu_D, d_Dw=dw*nu_D,
                  c1_C=nu_C*c1, c1_D=-mu_C*c1, d1_C=nu_D*d1, d1_D=-mu_D*d1)
    values['cw_C'] = 0*c1
    values['dw_D'] = 0*d1
    values['cw_D'] = 2*(values['c_Cz'] - values['c_Cw'])
    values['dw_C'] = 2*(values['d_Dz'] - values['d_Dw'])
    return [values[f] for f in FIELDS]


def expand(p):
    return StructureConstants.from_values(**dict(zip(FIELDS, _expand_values(*p))))


def _direction(row_pairs, fallback):
    for pair in row_pairs + [fallback]:
        if pair[0] != 0 or pair[1] != 0:
            lead = pair[0] if pair[0] != 0 else pair[1]
            return pair[0] / lead, pair[1] / lead
    return Fraction(1), Fraction(0)


def _factor(first, second, direction):
    """Scalar t with (first, second) = t * direction."""
    if direction[0] != 0:
        return first / direction[0]
    return second / direction[1]


def reduce(k):
    """Gauge-normalized reduced parameters of ``k``, or NotFactorable with the lemma id."""
    if utils.det2(k.M_C()) != 0 or utils.det2(k.M_D()) != 0:
        return NotFactorable('h15', 'det(M_C) = %s, det(M_D) = %s' % (scalars.format_scalar(utils.det2(k.M_C())),
                                                                      scalars.format_scalar(utils.det2(k.M_D()))))
    if k.cw_C != 0 or k.dw_D != 0:
        return NotFactorable('h1', 'cw_C and dw_D must vanish')
    if k.cw_D != 2*(k.c_Cz - k.c_Cw) or k.dw_C != 2*(k.d_Dz - k.d_Dw):
        return NotFactorable('h2', 'cw_D, dw_C do not match 2(c_Cz - c_Cw), 2(d_Dz - d_Dw)')

    mu_C, nu_C = _direction([(k.c_Cz, k.c_Dz), (k.c_Cw, k.c_Dw)], (-k.c1_D, k.c1_C))
    mu_D, nu_D = _direction([(k.d_Cz, k.d_Dz), (k.d_Cw, k.d_Dw)], (-k.d1_D, k.d1_C))
    values = [mu_C, nu_C, mu_D, nu_D,
              _factor(k.c_Cz, k.c_Dz, (mu_C, nu_C)), _factor(k.c_Cw, k.c_Dw, (mu_C, nu_C)),
              _factor(k.d_Cz, k.d_Dz, (mu_D, nu_D)), _factor(k.d_Cw, k.d_Dw, (mu_D, nu_D)),
              _factor(-k.c1_D, k.c1_C, (mu_C, nu_C)), _factor(-k.d1_D, k.d1_C, (mu_D, nu_D))]
    try:
        p = ReducedParams(*values)
    except ConstraintViolation as e:
        return NotFactorable(e.constraint, str(e))
    if expand(p) != k:
        return NotFactorable('h3', 'M_1 rows are not orthogonal to the rows of M_C and M_D')
    return p


def gauge_orbit(p, t, s):
    t, s = scalars.to_scalar(t), scalars.to_scalar(s)
    if t == 0 or s == 0:
        raise ValueError('gauge scalings must be nonzero')
    return ReducedParams(p.mu_C*t, p.nu_C*t, p.mu_D*s, p.nu_D*s,
                         p.cz/t, p.cw/t, p.dz/s, p.dw/s, p.c1/t, p.d1/s)


def _draw(random_state):
    numerator = random_state.choice(settings.SAMPLE_NUMERATORS)
    denominator = random_state.choice(settings.SAMPLE_DENOMINATORS)
    return Fraction(int(numerator), int(denominator))


def sample_valid(seed, budget=settings.SAMPLE_RETRY_BUDGET):
    """Deterministic random valid reduced parameters; (c_1, d_1) solved from the h5 equations."""
    random_state = np.random.RandomState(seed)
    for attempt in range(budget):
        mu_C, nu_C, mu_D, nu_D, cz, cw, dz, dw = [_draw(random_state) for _ in range(8)]
        delta = nu_C*mu_D - mu_C*nu_D
        det = cz*dw - dz*cw
        if delta == 0 or det == 0 or (cz - cw)*(dz - dw) == 0:
            logger.debug('seed %s attempt %d rejected (delta=%s, det=%s)', seed, attempt, delta, det)
            continue
        r = 1 / delta
        c1 = r*(cz - cw) / det
        d1 = r*(dz - dw) / det
        return ReducedParams(mu_C, nu_C, mu_D, nu_D, cz, cw, dz, dw, c1, d1)
    raise SamplingExhausted('no valid parameters for seed %s after %d draws' % (seed, budget))


def nondefinite_witness(d1_D=-1, d_Cz=1):
    """A structure satisfying (i)-(xxiv) whose definiteness determinants both vanish."""
    t, s = scalars.to_scalar(d1_D), scalars.to_scalar(d_Cz)
    if t == 0:
        raise ValueError('d1_D must be nonzero')
    return StructureConstants.from_values(c_Dz=1 / t, c_Dw=1 / t, d_Cz=s, d1_D=t)


class CounterexampleReport(namedtuple('CounterexampleReport',
                                      'grid c_candidates d_candidates valid counterexamples')):
    __slots__ = ()

    @property
    def n_valid(self):
        return len(self.valid)

    def contains(self, k):
        return k in set(self.valid)

    def to_json(self):
        return OrderedDict([
            ('grid', [scalars.format_scalar(g) for g in self.grid]),
            ('c_candidates', self.c_candidates),
            ('d_candidates', self.d_candidates),
            ('valid', self.n_valid),
            ('counterexamples', [OrderedDict([('constants', k.to_json()), ('lemmas', lemmas)])
                                 for k, lemmas in self.counterexamples]),
        ])

    def to_frame(self):
        return pd.DataFrame([(self.c_candidates, self.d_candidates, self.n_valid, len(self.counterexamples))],
                            columns=['c_candidates', 'd_candidates', 'valid', 'counterexamples'])


def _block_candidates(fields, scaled, block, z_fields, w_fields):
    grids = np.meshgrid(*[scaled] * len(fields), indexing='ij')
    columns = dict((f, g.ravel()) for f, g in zip(fields, grids))
    zeros = np.zeros_like(columns[fields[0]])
    arrays = StructureConstants(*[columns.get(f, zeros) for f in FIELDS])
    keep = np.ones(len(zeros), dtype=bool)
    # (xix) and (xx) need a nonzero product on each side
    keep &= np.any([columns[f] != 0 for f in z_fields], axis=0)
    keep &= np.any([columns[f] != 0 for f in w_fields], axis=0)
    for cid in condition_ids(block):
        keep &= CONDITIONS[cid][1](arrays, 0) == 0
    return np.stack([columns[f][keep] for f in fields], axis=1)


def _lemma_violations(k):
    lemmas = []
    if k.c_Cz*k.c_Dw - k.c_Dz*k.c_Cw != 0 or k.d_Cz*k.d_Dw - k.d_Dz*k.d_Cw != 0:
        lemmas.append('h15')
    if k.cw_C != 0 or k.dw_D != 0:
        lemmas.append('h1')
    if k.cw_D != 2*(k.c_Cz - k.c_Cw) or k.dw_C != 2*(k.d_Dz - k.d_Dw):
        lemmas.append('h2')
    return lemmas


def _scan_rows(c_rows, d_block, L):
    """Valid tuples and lemma counterexamples for a slice of C-block candidates."""
    one = L*L
    d_columns = dict((f, d_block[:, i]) for i, f in enumerate(D_FIELDS))
    valid, counterexamples = [], []
    for c_values in c_rows:
        values = dict(d_columns)
        values.update((f, np.full(len(d_block), v, dtype=d_block.dtype)) for f, v in zip(C_FIELDS, c_values))
        arrays = StructureConstants(*[values[f] for f in FIELDS])
        keep = np.ones(len(d_block), dtype=bool)
        for cid in condition_ids('coupled'):
            keep &= CONDITIONS[cid][1](arrays, one) == 0
        det1, det2 = definiteness_determinants(arrays)
        keep &= (det1 != 0) | (det2 != 0)
        for d_values in d_block[keep]:
            scaled_values = dict(zip(C_FIELDS, c_values))
            scaled_values.update(zip(D_FIELDS, d_values))
            k = StructureConstants.from_values(**dict((f, Fraction(int(v), L)) for f, v in scaled_values.items()))
            valid.append(k)
            lemmas = _lemma_violations(k)
            if lemmas:
                logger.warning('lemma counterexample %s: %s', k.to_json(), ', '.join(lemmas))
                counterexamples.append((k, lemmas))
    return valid, counterexamples


def _scan_chunk(task):
    return _scan_rows(*task)


def _scan_dtype(scaled, L):
    # every residual is a short sum of degree two products; the bound leaves room for those sums
    bound = settings.SCAN_TERM_BOUND * max([L] + [abs(v) for v in scaled])**2
    return np.int64 if bound <= np.iinfo(np.int64).max else object


def lemma_scan(grid=settings.SCAN_GRID, progress=False, workers=settings.SCAN_WORKERS):
    """Enumerate 16-tuples over ``grid``, keep the valid ones and report lemma violations.

    The grid is scaled to integers by the common denominator L; every condition is
    homogeneous of degree two, so the inhomogeneous right side becomes L**2. Scaled
    values fall back to Python integers when int64 could overflow. With ``workers``
    above one the C-block candidates are split into contiguous chunks scanned by a
    process pool and reassembled in order.
    """
    grid = [scalars.to_scalar(g) for g in grid]
    for g in grid:
        if isinstance(g, scalars.GaussianRational):
            raise ValueError('scan grid must be real, got %s' % scalars.format_scalar(g))
    grid = sorted(set(grid))
    if not grid:
        raise ValueError('scan grid must not be empty')
    if workers < 1:
        raise ValueError('workers must be at least 1, got %d' % workers)
    L = fold(lambda a, b: a*b // gcd(a, b), [g.denominator for g in grid], 1)
    integers = [int(g*L) for g in grid]
    dtype = _scan_dtype(integers, L)
    if dtype is object:
        logger.info('lemma scan: scaled grid exceeds int64, using Python integers')
    scaled = np.array(integers, dtype=dtype)

    c_block = _block_candidates(C_FIELDS, scaled, 'c', ['c_Cz', 'c_Dz', 'c1_C', 'c1_D'],
                                 ['c_Cw', 'c_Dw', 'c1_C', 'c1_D'])
    d_block = _block_candidates(D_FIELDS, scaled, 'd', ['d_Cz', 'd_Dz', 'd1_C', 'd1_D'],
                                 ['d_Cw', 'd_Dw', 'd1_C', 'd1_D'])
    logger.info('lemma scan: %d C-block and %d D-block candidates', len(c_block), len(d_block))

    size = settings.SCAN_CHUNK_SIZE
    tasks = [(c_block[start:start + size], d_block, L) for start in range(0, len(c_block), size)]
    valid, counterexamples = [], []
    if workers == 1 or len(tasks) <= 1:
        results = map(_scan_chunk, tasks)
        pool = None
    else:
        pool = multiprocessing.Pool(min(workers, len(tasks)))
        results = pool.imap(_scan_chunk, tasks)
    try:
        for index, (chunk_valid, chunk_counterexamples) in enumerate(results):
            if progress:
                log.print_sameline('C-block chunk %d/%d' % (index + 1, len(tasks)))
            valid.extend(chunk_valid)
            counterexamples.extend(chunk_counterexamples)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    logger.info('lemma scan: %d valid tuples, %d counterexamples', len(valid), len(counterexamples))
    return CounterexampleReport(grid, len(c_block), len(d_block), valid, counterexamples)


class JacobianRankReport(namedtuple('JacobianRankReport', 'point rows cols rank dimension constrained_rank')):
    __slots__ = ()

    def to_json(self):
        return OrderedDict([('point', self.point.to_json()), ('rows', self.rows), ('cols', self.cols),
                            ('rank', self.rank), ('dimension', self.dimension),
                            ('constrained_rank', self.constrained_rank)])

    def to_frame(self):
        return pd.DataFrame([(self.rows, self.cols, self.rank, self.dimension, self.constrained_rank)],
                            columns=['rows', 'cols', 'rank', 'dimension', 'constrained_rank'])


_SYMBOLS = sympy.symbols(' '.join(REDUCED_FIELDS))


def expansion_jacobian():
    return sympy.Matrix(_expand_values(*_SYMBOLS)).jacobian(_SYMBOLS)


def constraint_jacobian():
    p = dict(zip(REDUCED_FIELDS, _SYMBOLS))
    delta = p['nu_C']*p['mu_D'] - p['mu_C']*p['nu_D']
    h5 = sympy.Matrix([delta*(p['dz']*p['c1'] - p['cz']*p['d1']) - 1,
                       delta*(p['dw']*p['c1'] - p['cw']*p['d1']) - 1])
    return h5.jacobian(_SYMBOLS)


def gauge_directions(p):
    """Tangent vectors of the two gauge scalings at ``p``."""
    t = [p.mu_C, p.nu_C, 0, 0, -p.cz, -p.cw, 0, 0, -p.c1, 0]
    s = [0, 0, p.mu_D, p.nu_D, 0, 0, -p.dz, -p.dw, 0, -p.d1]
    return utils.sympy_matrix([t, s]).T


def variety_jacobian_rank(p):
    point = dict(zip(_SYMBOLS, [scalars.to_sympy(v) for v in p]))
    J = expansion_jacobian().subs(point)
    rank = J.rank()
    normal = constraint_jacobian().subs(point)
    tangent = sympy.Matrix.hstack(*normal.nullspace())
    constrained_rank = (J * tangent).rank()
    if rank != 8:
        logger.warning('non-generic point %s: Jacobian rank %d', p.to_json(), rank)
    return JacobianRankReport(p, J.rows, J.cols, rank, rank - 2, constrained_rank)


def is_valid(k):
    report = evaluate_conditions(k)
    return report.is_representation and report.is_definite
