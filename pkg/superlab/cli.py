"""Command line front end.

Every subcommand builds an ordered report; ``--format json`` dumps it as is, the
text format renders it through pandas. Exit codes: 0 success, 2 validation
failure, 3 infeasible isomorphism, 4 input error.
"""
import argparse
import json
import sys
from collections import OrderedDict

import pandas as pd

from . import log, settings
from . import scalars
from .berezin import action_list, derive_ber
from .classification import (ConstraintViolation, NotFactorable, ReducedParams, SamplingExhausted, expand,
                             lemma_scan, reduce, sample_valid, variety_jacobian_rank)
from .conditions import NotARepresentation, WindowTooSmall, evaluate_conditions, invariant_sheaf
from .derivations import PRESETS, SchemaError, StructureConstants, check_bracket_relations
from .isomorphism import (AutomorphismParams, InvalidAutomorphism, WedgeDisagreement, Witness,
                          find_isomorphism, orbit_tangent_rank, transform)
from .kostant import action_trace, derive_kk

logger = log.get_logger('cli')

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3
EXIT_INPUT = 4


class InputError(ValueError):
    pass


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _banner(title):
    return [title, '=' * len(title)]


def load_json(path):
    try:
        with open(path) as handle:
            text = handle.read()
    except (IOError, OSError) as e:
        raise InputError('cannot read %s: %s' % (path, e))
    try:
        return json.loads(text, object_pairs_hook=OrderedDict)
    except ValueError as e:
        if hasattr(e, 'lineno'):
            raise InputError('%s: malformed JSON at line %d column %d: %s' % (path, e.lineno, e.colno, e.msg))
        raise InputError('%s: malformed JSON: %s' % (path, e))


def load_constants(path=None, preset=None):
    if path is not None and preset is not None:
        raise InputError('--preset and --in are mutually exclusive')
    if preset is not None:
        try:
            return PRESETS[preset.lower()]
        except KeyError:
            raise InputError('unknown preset %s (expected one of %s)' % (preset, ', '.join(PRESETS)))
    if path is None:
        raise InputError('give either --preset or --in')
    try:
        return StructureConstants.from_json(load_json(path))
    except SchemaError as e:
        raise InputError('%s: %s' % (path, e))


def load_reduced(path):
    try:
        return ReducedParams.from_json(load_json(path))
    except SchemaError as e:
        raise InputError('%s: %s' % (path, e))


def _scalar_arg(text):
    try:
        return scalars.parse_scalar(text)
    except scalars.ScalarFormatError as e:
        raise argparse.ArgumentTypeError(str(e))


def _grid_arg(text):
    grid = [_scalar_arg(item) for item in text.split(',') if item.strip()]
    if not grid:
        raise argparse.ArgumentTypeError('empty grid %r' % text)
    for value in grid:
        if isinstance(value, scalars.GaussianRational):
            raise argparse.ArgumentTypeError('grid values must be real, got %s' % scalars.format_scalar(value))
    return grid


def _at_least(minimum, name):
    def parse(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError('%s must be an integer, got %r' % (name, text))
        if value < minimum:
            raise argparse.ArgumentTypeError('%s must be at least %d, got %d' % (name, minimum, value))
        return value
    return parse


def _constants_lines(k):
    frame = pd.DataFrame(list(k.to_json().items()), columns=['constant', 'value'])
    return frame.to_string(index=False).splitlines()


def _params_lines(p):
    frame = pd.DataFrame(list(p.to_json().items()), columns=['parameter', 'value'])
    return frame.to_string(index=False).splitlines()


def cmd_verify(args):
    k = load_constants(args.path, args.preset)
    report = evaluate_conditions(k)
    brackets = check_bracket_relations(k)
    result = report.to_json()
    result['brackets'] = brackets.to_json()
    kernel_dim = invariant_sheaf(k, args.window).dim if report.is_representation else None
    result['kernel_dim'] = kernel_dim
    code = EXIT_OK if report.is_representation and report.is_definite else EXIT_INVALID
    lines = _banner('Structural conditions') + report.to_frame().to_string(index=False).splitlines()
    lines += ['', 'representation: %s' % report.is_representation, 'definite: %s' % report.is_definite]
    if report.failing_ids():
        lines.append('failing: %s' % ', '.join(report.failing_ids()))
    if kernel_dim is not None:
        lines.append('invariant kernel dimension (window %d): %d' % (args.window, kernel_dim))
    return code, result, lines


def cmd_derive(args):
    if args.model == 'kostant':
        k, trace = derive_kk(), action_trace()
    else:
        k, trace = derive_ber(args.convention), action_list(args.convention)
    report = evaluate_conditions(k)
    result = OrderedDict([('model', args.model), ('constants', k.to_json()), ('actions', trace),
                          ('is_representation', report.is_representation), ('is_definite', report.is_definite)])
    if args.model == 'berezin':
        result['convention'] = args.convention
    lines = _banner('Derived actions (%s)' % args.model) + trace + [''] + \
        _banner('Structure constants') + _constants_lines(k)
    code = EXIT_OK if report.is_representation and report.is_definite else EXIT_INVALID
    return code, result, lines


def cmd_transform(args):
    k = load_constants(args.path, args.preset)
    try:
        params = AutomorphismParams(args.kind, args.x, args.y, args.u, args.v, args.mode)
    except InvalidAutomorphism as e:
        raise InputError(str(e))
    try:
        image = transform(params, k, strict=args.strict)
    except WedgeDisagreement as e:
        return EXIT_INVALID, OrderedDict([('error', str(e))]), ['wedge disagreement: %s' % e]
    report = evaluate_conditions(image)
    result = OrderedDict([('automorphism', params.to_json()), ('constants', image.to_json()),
                          ('is_representation', report.is_representation),
                          ('is_definite', report.is_definite)])
    lines = _banner('Transformed structure constants') + _constants_lines(image)
    return EXIT_OK, result, lines


def cmd_isomorphic(args):
    if args.paths:
        if len(args.paths) != 2 or args.preset or args.preset2:
            raise InputError('isomorphic takes two files or --preset and --preset2')
        src, dst = [load_constants(path) for path in args.paths]
    else:
        if not (args.preset and args.preset2):
            raise InputError('isomorphic takes two files or --preset and --preset2')
        src, dst = load_constants(preset=args.preset), load_constants(preset=args.preset2)
    result = find_isomorphism(src, dst, args.mode)
    if isinstance(result, Witness):
        lines = _banner('Isomorphic (%s mode)' % args.mode) + result.to_frame().to_string(index=False).splitlines()
        if result.extension:
            lines.append('witness lives over a quadratic extension')
        return EXIT_OK, result.to_json(), lines
    lines = _banner('Not isomorphic (%s mode)' % args.mode)
    for kind, conflicts in result.conflicts.items():
        lines.append('%s: %s' % (kind, result.reasons[kind]))
        lines.extend('  %s' % c for c in conflicts)
    return EXIT_INFEASIBLE, result.to_json(), lines


def _rank_point(args):
    if getattr(args, 'point', None):
        return load_reduced(args.point)
    if getattr(args, 'path', None) or getattr(args, 'preset', None):
        reduced = reduce(load_constants(args.path, args.preset))
        if isinstance(reduced, NotFactorable):
            raise ConstraintViolation(reduced.lemma, reduced.reason)
        return reduced
    return sample_valid(args.seed)


def cmd_classify(args):
    if args.action == 'sample':
        p = sample_valid(args.seed)
        result = OrderedDict([('seed', args.seed), ('params', p.to_json()), ('constants', expand(p).to_json())])
        return EXIT_OK, result, _banner('Sampled parameters (seed %d)' % args.seed) + _params_lines(p)
    if args.action == 'scan':
        report = lemma_scan(args.grid or settings.SCAN_GRID, progress=args.format == 'text',
                            workers=args.workers)
        code = EXIT_OK if not report.counterexamples else EXIT_INVALID
        return code, report.to_json(), _banner('Lemma scan') + report.to_frame().to_string(index=False).splitlines()
    if args.action == 'reduce':
        reduced = reduce(load_constants(args.path, args.preset))
        if isinstance(reduced, NotFactorable):
            result = OrderedDict([('not_factorable', reduced.lemma), ('reason', reduced.reason)])
            return EXIT_INVALID, result, ['not factorable (%s): %s' % (reduced.lemma, reduced.reason)]
        return EXIT_OK, OrderedDict([('params', reduced.to_json())]), _banner('Reduced parameters') + \
            _params_lines(reduced)
    report = variety_jacobian_rank(_rank_point(args))
    return EXIT_OK, report.to_json(), _banner('Jacobian rank') + report.to_frame().to_string(index=False).splitlines()


def cmd_rank(args):
    p = _rank_point(args)
    variety = variety_jacobian_rank(p)
    orbit = orbit_tangent_rank(expand(p), args.mode)
    quotient = variety.dimension - orbit.rank
    result = OrderedDict([('variety', variety.to_json()),
                          ('orbit', OrderedDict([('mode', args.mode), ('rank', orbit.rank),
                                                 ('quotient_dimension', quotient)]))])
    lines = _banner('Jacobian rank') + variety.to_frame().to_string(index=False).splitlines()
    lines.append('orbit tangent rank (%s mode): %d' % (args.mode, orbit.rank))
    lines.append('variety dimension modulo the orbit: %d' % quotient)
    return EXIT_OK, result, lines


def _add_source(parser):
    parser.add_argument('--preset', help='preset structure: %s' % ', '.join(PRESETS))
    parser.add_argument('--in', dest='path', help='structure constants JSON file')


def build_parser():
    common = ArgumentParser(add_help=False)
    common.add_argument('--format', choices=['text', 'json'], default=argparse.SUPPRESS)
    common.add_argument('--json', dest='format', action='store_const', const='json', default=argparse.SUPPRESS)
    common.add_argument('--mode', default=argparse.SUPPRESS, help='real or complex')

    parser = ArgumentParser(prog='superlab', description='Planed LRT Lie supergroup structures for gl(1|1)')
    parser.add_argument('--format', choices=['text', 'json'], default='text')
    parser.add_argument('--json', dest='format', action='store_const', const='json')
    parser.add_argument('--mode', default=None, help='real or complex (default: $SUPERLAB_MODE or real)')
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    verify = sub.add_parser('verify', parents=[common], help='evaluate the structural conditions')
    _add_source(verify)
    verify.add_argument('--window', type=_at_least(settings.MIN_WINDOW, 'window'),
                        default=settings.DEFAULT_WINDOW)
    verify.set_defaults(handler=cmd_verify)

    derive = sub.add_parser('derive', parents=[common], help='derive a structure from a model')
    derive.add_argument('model', choices=['kostant', 'berezin'])
    derive.add_argument('--convention', choices=settings.QUADRATIC_CONVENTIONS,
                        default=settings.QUADRATIC_CONVENTION)
    derive.set_defaults(handler=cmd_derive)

    trans = sub.add_parser('transform', parents=[common], help='apply an automorphism')
    _add_source(trans)
    trans.add_argument('--kind', choices=['plus', 'minus'], default='plus')
    for name in ['x', 'y', 'u', 'v']:
        trans.add_argument('--%s' % name, type=_scalar_arg, required=True)
    trans.add_argument('--strict', action='store_true', help='also transform the wedge constants directly')
    trans.set_defaults(handler=cmd_transform)

    iso = sub.add_parser('isomorphic', parents=[common], help='search for an isomorphism')
    iso.add_argument('paths', nargs='*')
    iso.add_argument('--preset')
    iso.add_argument('--preset2')
    iso.set_defaults(handler=cmd_isomorphic)

    classify = sub.add_parser('classify', parents=[common], help='reduced parameterization tools')
    classify.add_argument('action', choices=['sample', 'scan', 'rank', 'reduce'])
    _add_source(classify)
    classify.add_argument('--seed', type=int, default=0)
    classify.add_argument('--grid', type=_grid_arg, help='comma separated fractions')
    classify.add_argument('--workers', type=_at_least(1, 'workers'), default=settings.SCAN_WORKERS,
                          help='processes sharing the scan')
    classify.add_argument('--point', help='reduced parameters JSON file')
    classify.set_defaults(handler=cmd_classify)

    rank = sub.add_parser('rank', parents=[common], help='variety and orbit ranks')
    _add_source(rank)
    rank.add_argument('--seed', type=int, default=0)
    rank.add_argument('--point', help='reduced parameters JSON file')
    rank.set_defaults(handler=cmd_rank)
    return parser


def _render(fmt, result, lines):
    if fmt == 'json':
        return json.dumps(result, indent=2)
    return '\n'.join(lines)


def _requested_format(argv):
    # errors raised while parsing are still rendered in the requested format
    argv = list(argv)
    if '--json' in argv or '--format=json' in argv:
        return 'json'
    if '--format' in argv and argv[argv.index('--format') + 1:][:1] == ['json']:
        return 'json'
    return 'text'


def run(argv):
    """Run one invocation; returns (exit code, rendered report)."""
    fmt = _requested_format(argv)
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        args.mode = args.mode or settings.MODE
        if args.mode not in settings.MODES:
            raise InputError('unknown mode %s (expected one of %s)' % (args.mode, ', '.join(settings.MODES)))
        code, result, lines = args.handler(args)
    except (InputError, WindowTooSmall) as e:
        return EXIT_INPUT, _render(fmt, OrderedDict([('error', str(e))]), ['error: %s' % e])
    except (NotARepresentation, ConstraintViolation, SamplingExhausted) as e:
        return EXIT_INVALID, _render(fmt, OrderedDict([('error', str(e))]), ['invalid: %s' % e])
    return code, _render(fmt, result, lines)


def main():
    code, text = run(sys.argv[1:])
    print(text)
    sys.exit(code)


if __name__ == '__main__':
    main()
