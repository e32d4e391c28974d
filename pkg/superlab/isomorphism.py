"""Automorphisms of gl(1|1) acting on structure constants and the isomorphism search.

The transformation of the twelve essential constants only depends on r = x/y and
u, v; the product x*y = u + v enters through the wedge constants. The search
therefore solves for (u, v, r) exactly and realizes (x, y) afterwards.
"""
import itertools
from collections import OrderedDict, namedtuple
from fractions import Fraction

import pandas as pd
import sympy

from . import log, settings
from . import scalars
from .classification import JacobianRankReport
from .conditions import NotARepresentation, evaluate_conditions
from .derivations import ESSENTIAL_FIELDS, FIELDS, StructureConstants

logger = log.get_logger('isomorphism')

KINDS = ['plus', 'minus']


class InvalidAutomorphism(ValueError):
    pass


class WedgeDisagreement(ValueError):
    pass


def _exact(value):
    if isinstance(value, sympy.Basic):
        return scalars.from_sympy(sympy.simplify(value))
    return value


class AutomorphismParams(namedtuple('AutomorphismParams', 'kind x y u v mode')):
    __slots__ = ()

    def __new__(cls, kind, x, y, u, v, mode='real'):
        if kind not in KINDS:
            raise InvalidAutomorphism('unknown kind %s' % kind)
        if mode not in settings.MODES:
            raise InvalidAutomorphism('unknown mode %s' % mode)
        u, v = scalars.to_scalar(u), scalars.to_scalar(v)
        if not isinstance(x, sympy.Basic):
            x = scalars.to_scalar(x)
        if not isinstance(y, sympy.Basic):
            y = scalars.to_scalar(y)
        if x == 0 or y == 0:
            raise InvalidAutomorphism('x and y must be nonzero')
        if mode == 'real' and any(isinstance(value, scalars.GaussianRational) for value in (x, y, u, v)):
            raise InvalidAutomorphism('real mode takes real parameters')
        try:
            product = _exact(x*y)
        except scalars.ScalarFormatError:
            raise InvalidAutomorphism('x*y = %s is not exact' % (x*y,))
        if product != u + v:
            raise InvalidAutomorphism('x*y = %s differs from u+v = %s' % (scalars.format_scalar(product),
                                                                         scalars.format_scalar(u + v)))
        if mode == 'complex':
            if not (scalars.is_integer(u) and scalars.is_integer(v)):
                raise InvalidAutomorphism('complex mode needs integer u and v')
            if u + v not in (1, -1):
                raise InvalidAutomorphism('complex mode needs u+v = +1 or -1')
        return super(AutomorphismParams, cls).__new__(cls, kind, x, y, u, v, mode)

    @property
    def r(self):
        return _exact(self.x / self.y)

    @property
    def s(self):
        return self.u + self.v

    def to_json(self):
        return OrderedDict([('kind', self.kind), ('x', scalars.format_scalar(self.x)),
                            ('y', scalars.format_scalar(self.y)), ('u', scalars.format_scalar(self.u)),
                            ('v', scalars.format_scalar(self.v)), ('mode', self.mode)])


IDENTITY = AutomorphismParams('plus', 1, 1, 1, 0)


def _plus_mix_z(u, v):
    return 1 + v, -v


def _plus_mix_w(u, v):
    return 1 - u, u


def _minus_mix_z(u, v):
    return 1 - v, v


def _minus_mix_w(u, v):
    return 1 + u, -u


# target -> (scale, mixing, mixing text, source fields); scale is '1', 'r' or '1/r'
_TABLES = {
    'plus': OrderedDict([
        ('c_Dz', ('1', _plus_mix_z, ('1+v', '-v'), ('c_Dz', 'c_Dw'))),
        ('d_Cz', ('1', _plus_mix_z, ('1+v', '-v'), ('d_Cz', 'd_Cw'))),
        ('c_Dw', ('1', _plus_mix_w, ('1-u', '+u'), ('c_Dz', 'c_Dw'))),
        ('d_Cw', ('1', _plus_mix_w, ('1-u', '+u'), ('d_Cz', 'd_Cw'))),
        ('c1_C', ('1', None, None, ('c1_C',))),
        ('d1_D', ('1', None, None, ('d1_D',))),
        ('c_Cz', ('r', _plus_mix_z, ('1+v', '-v'), ('c_Cz', 'c_Cw'))),
        ('d_Dz', ('1/r', _plus_mix_z, ('1+v', '-v'), ('d_Dz', 'd_Dw'))),
        ('c_Cw', ('r', _plus_mix_w, ('1-u', '+u'), ('c_Cz', 'c_Cw'))),
        ('d_Dw', ('1/r', _plus_mix_w, ('1-u', '+u'), ('d_Dz', 'd_Dw'))),
        ('c1_D', ('r', None, None, ('c1_D',))),
        ('d1_C', ('1/r', None, None, ('d1_C',))),
    ]),
    'minus': OrderedDict([
        ('c_Dz', ('1', _minus_mix_z, ('1-v', '+v'), ('d_Cz', 'd_Cw'))),
        ('d_Cz', ('1', _minus_mix_z, ('1-v', '+v'), ('c_Dz', 'c_Dw'))),
        ('c_Dw', ('1', _minus_mix_w, ('1+u', '-u'), ('d_Cz', 'd_Cw'))),
        ('d_Cw', ('1', _minus_mix_w, ('1+u', '-u'), ('c_Dz', 'c_Dw'))),
        ('c1_C', ('1', None, None, ('d1_D',))),
        ('d1_D', ('1', None, None, ('c1_C',))),
        ('c_Cz', ('r', _minus_mix_z, ('1-v', '+v'), ('d_Dz', 'd_Dw'))),
        ('d_Dz', ('1/r', _minus_mix_z, ('1-v', '+v'), ('c_Cz', 'c_Cw'))),
        ('c_Cw', ('r', _minus_mix_w, ('1+u', '-u'), ('d_Dz', 'd_Dw'))),
        ('d_Dw', ('1/r', _minus_mix_w, ('1+u', '-u'), ('c_Cz', 'c_Cw'))),
        ('c1_D', ('r', None, None, ('d1_C',))),
        ('d1_C', ('1/r', None, None, ('c1_D',))),
    ]),
}


def _unscaled(entry, k, u, v):
    scale, mix, _, sources = entry
    if mix is None:
        return getattr(k, sources[0])
    alpha, beta = mix(u, v)
    return alpha*getattr(k, sources[0]) + beta*getattr(k, sources[1])


def _transform_values(kind, k, r, u, v):
    """Transformed essential constants; works for exact scalars and sympy symbols."""
    values = OrderedDict()
    for target, entry in _TABLES[kind].items():
        value = _unscaled(entry, k, u, v)
        if entry[0] == 'r':
            value = r*value
        elif entry[0] == '1/r':
            value = value / r
        values[target] = value
    return values


def _direct_wedges(kind, k, r, s):
    if kind == 'plus':
        return OrderedDict([('cw_C', s*k.cw_C), ('cw_D', r*s*k.cw_D),
                            ('dw_C', s*k.dw_C / r), ('dw_D', s*k.dw_D)])
    return OrderedDict([('cw_C', -s*k.dw_D), ('cw_D', -r*s*k.dw_C),
                        ('dw_C', -s*k.cw_D / r), ('dw_D', -s*k.cw_C)])


def transform(a, k, strict=False):
    values = _transform_values(a.kind, k, a.r, a.u, a.v)
    values['cw_C'] = Fraction(0)
    values['dw_D'] = Fraction(0)
    values['cw_D'] = 2*(values['c_Cz'] - values['c_Cw'])
    values['dw_C'] = 2*(values['d_Dz'] - values['d_Dw'])
    if strict:
        for field, direct in _direct_wedges(a.kind, k, a.r, a.s).items():
            if direct != values[field]:
                raise WedgeDisagreement('%s: direct %s, recomputed %s' % (
                    field, scalars.format_scalar(direct), scalars.format_scalar(values[field])))
    return StructureConstants.from_values(**values)


def compose(a1, a2):
    """Parameters of applying plus-kind ``a1`` and then plus-kind ``a2``."""
    if a1.kind != 'plus' or a2.kind != 'plus':
        raise InvalidAutomorphism('composition is only tabulated for plus-kind pairs')
    s1 = a1.s
    return AutomorphismParams('plus', a1.x*a2.x, a1.y*a2.y, a2.u*s1 - a1.v, a1.v + a2.v*s1,
                              a1.mode if a1.mode == a2.mode else 'real')


class Witness(namedtuple('Witness', 'params residuals extension')):
    __slots__ = ()
    verdict = 'isomorphic'

    def to_json(self):
        result = OrderedDict([('verdict', self.verdict)])
        result.update(self.params.to_json())
        result['extension'] = self.extension
        result['residuals'] = OrderedDict((f, scalars.format_scalar(v)) for f, v in self.residuals.items())
        return result

    def to_frame(self):
        return pd.DataFrame([self.params.to_json()])


class Infeasible(namedtuple('Infeasible', 'conflicts reasons')):
    __slots__ = ()
    verdict = 'infeasible'

    def to_json(self):
        return OrderedDict([('verdict', self.verdict), ('conflicts', self.conflicts), ('reasons', self.reasons)])

    def to_frame(self):
        rows = [(kind, c) for kind, conflicts in self.conflicts.items() for c in conflicts]
        return pd.DataFrame(rows, columns=['kind', 'constraint'])


_u, _v = sympy.symbols('u v')
_r = sympy.Symbol('r', nonzero=True)
_UNKNOWNS = [_u, _v, _r]


def _q(value):
    return scalars.to_sympy(value)


def _normal_form(entry, src, target_value):
    scale, mix, text, sources = entry
    a = getattr(src, sources[0])
    if mix is None:
        body, q = scalars.format_scalar(a), target_value
        return {'1': '%s = %s', 'r': 'r*(%s) = %s', '1/r': '(%s)/r = %s'}[scale] % (body, scalars.format_scalar(q))
    b = getattr(src, sources[1])
    first, second = text
    if a == b and a != 0:
        body, q = '(%s)%s' % (first, second), target_value / a
    elif a == b:
        body, q = '0', target_value
    else:
        body = '(%s)*(%s) %s %s*(%s)' % (first, scalars.format_scalar(a), second[0], second[1:],
                                         scalars.format_scalar(b))
        q = target_value
    template = {'1': '%s = %s', 'r': 'r*(%s) = %s', '1/r': '(%s)/r = %s'}[scale]
    return template % (body, scalars.format_scalar(q))


def derived_constraints(kind, src, dst):
    """(field, equation in u, v, r with 1/r cleared, labelled normal form) per essential constant."""
    symbolic = StructureConstants(*[_q(getattr(src, f)) for f in FIELDS])
    constraints = []
    for target, entry in _TABLES[kind].items():
        value = _unscaled(entry, symbolic, _u, _v)
        goal = _q(getattr(dst, target))
        if entry[0] == 'r':
            expr = _r*value - goal
        elif entry[0] == '1/r':
            expr = value - goal*_r
        else:
            expr = value - goal
        text = '%s: %s' % (target, _normal_form(entry, src, getattr(dst, target)))
        constraints.append((target, sympy.expand(expr), text))
    return constraints


def _solve(exprs):
    exprs = [e for e in exprs if e != 0]
    if any(e.is_number for e in exprs):
        return []
    if not exprs:
        return [{}]
    return sympy.solve(exprs, _UNKNOWNS, dict=True)


def _consistent(exprs):
    return bool(_solve(exprs))


def _conflicts(constraints):
    """The first two constraints that cannot hold together, in normal form."""
    single = [c for c in constraints if not _consistent([c[1]])]
    if len(single) >= 2:
        return [single[0][2], single[1][2]]
    for i in range(len(constraints)):
        for j in range(i):
            if not _consistent([constraints[j][1], constraints[i][1]]):
                return [constraints[j][2], constraints[i][2]]
    # greedy: grow until inconsistent, then drop what is not needed
    subset = []
    for c in constraints:
        subset.append(c)
        if not _consistent([s[1] for s in subset]):
            break
    for c in list(subset):
        rest = [s for s in subset if s is not c]
        if not _consistent([s[1] for s in rest]):
            subset = rest
    return [c[2] for c in subset]


def _realize(kind, r, u, v, mode):
    """AutomorphismParams for (r, u, v) or None when (x, y) cannot be realized."""
    s = u + v
    if r == 0 or s == 0:
        return None, False
    if mode == 'complex':
        if not (scalars.is_integer(u) and scalars.is_integer(v)) or s not in (1, -1):
            return None, False
    elif isinstance(r, scalars.GaussianRational) or r*s < 0:
        return None, False
    root = sympy.sqrtdenest(sympy.sqrt(_q(r*s)))
    try:
        x = scalars.from_sympy(root)
        extension = False
    except scalars.ScalarFormatError:
        x, extension = root, True
    y = x / _q(r) if isinstance(x, sympy.Basic) else x / r
    if mode == 'complex':
        y = _q(s) / x if isinstance(x, sympy.Basic) else s / x
    if isinstance(y, sympy.Basic):
        y = sympy.simplify(y)
        try:
            y = scalars.from_sympy(y)
        except scalars.ScalarFormatError:
            pass
    return AutomorphismParams(kind, x, y, u, v, mode), extension


def _candidates(mode):
    values = settings.WITNESS_CANDIDATES
    if mode == 'complex':
        values = [c for c in values if scalars.is_integer(c)]
    return values


def _witness_for(kind, solutions, src, dst, mode):
    for solution in solutions:
        free = [sym for sym in _UNKNOWNS if sym not in solution]
        # r is tried on all candidates, u and v only on admissible ones in complex mode
        pools = [settings.WITNESS_CANDIDATES if sym is _r else _candidates(mode) for sym in free]
        for choice in itertools.product(*pools):
            assignment = dict(zip(free, [_q(c) for c in choice]))
            try:
                u, v, r = [scalars.from_sympy(sympy.sympify(solution.get(sym, sym)).subs(assignment))
                           for sym in _UNKNOWNS]
            except (ValueError, TypeError, ZeroDivisionError):
                # a candidate that hits a pole of the solution
                continue
            params, extension = _realize(kind, r, u, v, mode)
            if params is None:
                continue
            image = transform(params, src)
            residuals = OrderedDict((f, getattr(dst, f) - getattr(image, f)) for f in FIELDS)
            if any(value != 0 for value in residuals.values()):
                logger.debug('candidate %s does not map onto the target', params.to_json())
                continue
            if extension:
                logger.warning('witness x = %s lives over a quadratic extension', scalars.format_scalar(params.x))
            return Witness(params, residuals, extension)
    return None


def _require_valid(k, name):
    report = evaluate_conditions(k)
    if not (report.is_representation and report.is_definite):
        raise NotARepresentation('%s is not a planed LRT structure (failing: %s)'
                                 % (name, ', '.join(report.failing_ids()) or 'xxv'))


def find_isomorphism(src, dst, mode='real'):
    if mode not in settings.MODES:
        raise ValueError('unknown mode %s' % mode)
    _require_valid(src, 'source')
    _require_valid(dst, 'target')
    conflicts, reasons = OrderedDict(), OrderedDict()
    for kind in KINDS:
        constraints = derived_constraints(kind, src, dst)
        solutions = _solve([c[1] for c in constraints])
        if not solutions:
            conflicts[kind] = _conflicts(constraints)
            reasons[kind] = 'inconsistent constraints'
            logger.debug('%s kind infeasible: %s', kind, '; '.join(conflicts[kind]))
            continue
        witness = _witness_for(kind, solutions, src, dst, mode)
        if witness is not None:
            return witness
        conflicts[kind] = []
        reasons[kind] = ('no solution with r*(u+v) > 0' if mode == 'real'
                         else 'no solution with integer u, v and u+v = +1 or -1')
    return Infeasible(conflicts, reasons)


def orbit_tangent_rank(k, mode='real'):
    """Rank of the plus-kind orbit map (r, u, v) -> essential constants at the identity."""
    _require_valid(k, 'structure')
    symbolic = StructureConstants(*[_q(getattr(k, f)) for f in FIELDS])
    values = _transform_values('plus', symbolic, _r, _u, _v)
    target = sympy.Matrix([values[f] for f in ESSENTIAL_FIELDS])
    variables = [_r, _u, _v] if mode == 'real' else [_r]
    J = target.jacobian(variables).subs({_r: 1, _u: 1, _v: 0})
    rank = J.rank()
    return JacobianRankReport(k, J.rows, J.cols, rank, rank, None)
