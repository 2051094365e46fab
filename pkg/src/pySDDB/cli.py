# -*- coding: utf-8 -*-
"""
Command line interface of pySDDB.

    sddb spectrum series.csv --estimator ar --out spectrum.csv
    sddb factorize spectrum.csv --kmax 10 --format text
    sddb bootstrap series.csv --statistic rho2 --method ars --B 1000 --seed 7
    sddb simulate --model II --n 512 --seed 7 --out model2.csv
    sddb coverage desk.json --seed 7 --out coverage.csv

Exit codes: 0 ok, 2 input parse error, 3 invalid configuration or violated
precondition, 4 numeric failure.
"""

import argparse
import json
import logging
import os
import sys

import numpy as np
import pandas as pd

from . import __version__
from .bootstrap import (DEFAULT_SEED, bootstrap_distribution, bootstrap_scheme,
                        confidence_interval, generalized_mean_distribution,
                        method_config, normal_interval, rng_stream)
from .data_io import (is_spectrum_file, read_json, read_series, read_spectrum,
                      write_frame)
from .exceptions import ConfigError, InputParseError
from .factorization import factorize
from .simharness import (bundled_config, coefficient_table, coverage_study,
                         experiment_config, model_spec, render_coefficient_table,
                         simulate_model, wold_table)
from .spectral import estimate_spectrum, time_series, ESTIMATORS
from .spectral_density import DEFAULT_GRID_SIZE
from .statistics import statistic_from_name

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CONFIG = 3
EXIT_NUMERIC = 4

BUNDLED_CONFIGS = ['desk.json', 'smoke.json']

# tuning keywords each estimator accepts
ESTIMATOR_TUNING = {
    'lag-window': ['kernel', 'truncation'],
    'smoothed': ['bandwidth'],
    'ar': ['order', 'pmax'],
    'prewhiten': ['order', 'bandwidth', 'pmax'],
    'cepstrum': ['threshold'],
    'periodogram': [],
}


####################################
# argument conversion
####################################

def _bandwidth(text):
    if text is None or text == 'cv':
        return None
    try:
        value = float(text)
    except ValueError:
        raise ConfigError('--bandwidth', 'expected a number or cv, got '
                          '{}'.format(text))
    if not value > 0:
        raise ConfigError('--bandwidth', 'must be positive')
    return value


def _order(text):
    if text is None or text == 'aic':
        return None
    try:
        return int(text)
    except ValueError:
        raise ConfigError('--order', 'expected an integer or aic, got '
                          '{}'.format(text))


def estimator_tuning(estimator, args):
    """Tuning keywords of an estimator from the parsed flags."""
    if estimator not in ESTIMATORS:
        raise ConfigError('--estimator', 'unknown estimator {}, use one of '
                          '{}'.format(estimator, list(ESTIMATORS)))
    if args.trunc is not None and args.trunc < 1:
        raise ConfigError('--trunc', 'must be at least 1')
    available = {'kernel': args.kernel, 'truncation': args.trunc,
                 'bandwidth': _bandwidth(args.bandwidth),
                 'order': _order(args.order), 'pmax': args.pmax,
                 'threshold': args.threshold}
    return {key: available[key] for key in ESTIMATOR_TUNING[estimator]
            if available[key] is not None}


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, 'w') as out_file:
            out_file.write(text)


def _emit_frame(frame, args, float_format='%.6g'):
    if args.format == 'text':
        text = frame.to_string(index=False) + '\n'
    elif args.format == 'json':
        text = frame.to_json(orient='records', double_precision=15) + '\n'
    else:
        text = write_frame(frame, None, float_format=float_format)
    _emit(text, args.out)


def _series(path):
    return time_series(read_series(path))


####################################
# subcommands
####################################

def cmd_spectrum(args):
    series = _series(args.input)
    estimator = args.estimator[0]
    density = estimate_spectrum(series, estimator, grid=args.grid,
                                **estimator_tuning(estimator, args))
    logger.info('Estimated %s spectrum with tuning %s', density.family,
                density.tuning)
    # full precision so that factorizing the file matches the estimate
    _emit_frame(density.to_frame(), args, float_format='%.17g')
    return EXIT_OK


def cmd_factorize(args):
    if args.kmin < 0 or args.kmax < args.kmin:
        raise ConfigError('--kmax', 'need 0 <= kmin <= kmax')
    ks = np.arange(args.kmin, args.kmax + 1)
    if is_spectrum_file(args.input):
        density = read_spectrum(args.input)
        table = wold_table(factorize(density), ks, 'spectrum')
    else:
        series = _series(args.input)
        tuning = {estimator: estimator_tuning(estimator, args)
                  for estimator in args.estimator}
        table = coefficient_table(series, args.estimator, ks, grid=args.grid,
                                  tuning=tuning)
    if args.format == 'text':
        _emit(render_coefficient_table(table), args.out)
        return EXIT_OK
    if table['estimator'].nunique() == 1:
        table = table.drop(columns='estimator')
    _emit_frame(table, args)
    return EXIT_OK


def cmd_bootstrap(args):
    series = _series(args.input)
    estimator = args.estimator[0]
    config = method_config(method=args.method, estimator=estimator,
                           tuning=estimator_tuning(estimator, args),
                           innovations=args.innovations, B=args.B,
                           seed=args.seed, grid_size=args.grid)
    try:
        statistic = statistic_from_name(args.statistic)
    except (ValueError, OSError) as err:
        raise ConfigError('--statistic', str(err))
    alphas = args.alpha if args.alpha else [0.05]
    derive = getattr(statistic, 'derive', None)
    target = series if derive is None else time_series(derive(series))
    estimate = statistic(target)

    report = {'method': config.method, 'estimator': config.estimator,
              'innovations': config.innovations, 'statistic': statistic.name,
              'estimate': estimate, 'seed': config.seed, 'intervals': []}
    if config.method == 'nd':
        scheme = bootstrap_scheme(target, config)
        if not statistic.can_studentize:
            raise ConfigError('--method', 'nd needs a statistic with a '
                              'studentizer, {} has none'.format(statistic.name))
        se = scheme.standard_error(statistic, scheme.x)
        report.update({'B': None, 'mode': 'normal', 'standard_error': se})
        for alpha in alphas:
            lower, upper = normal_interval(estimate, se, alpha)
            report['intervals'].append({'alpha': alpha, 'level': 1 - alpha,
                                        'lower': lower, 'upper': upper})
    else:
        if args.studentized and not statistic.can_studentize:
            raise ConfigError('--studentized', 'statistic {} has no '
                              'studentizer'.format(statistic.name))
        if args.basic:
            studentize = False
        elif args.studentized:
            studentize = True
        else:
            studentize = None
        distribution = (bootstrap_distribution if derive is None
                        else generalized_mean_distribution)
        replicates = distribution(series, statistic, config,
                                  studentize=studentize)
        mode = 'studentized' if replicates.studentized else 'basic-root'
        report.update({'B': replicates.B, 'mode': mode,
                       'standard_error': replicates.original_se,
                       'center': replicates.center})
        for alpha in alphas:
            lower, upper = confidence_interval(replicates, alpha, mode)
            report['intervals'].append({'alpha': alpha, 'level': 1 - alpha,
                                        'lower': lower, 'upper': upper})
        if args.replicates is not None:
            replicates.export_replicates(args.replicates)

    if args.format == 'json':
        _emit(json.dumps(report, indent=2, sort_keys=True) + '\n', args.out)
    else:
        frame = pd.DataFrame(report['intervals'])
        frame.insert(0, 'estimate', estimate)
        _emit_frame(frame, args)
    return EXIT_OK


def cmd_simulate(args):
    spec = model_spec(args.model, n=args.n, innovations=args.innovations)
    series = simulate_model(spec, rng_stream(args.seed))
    _emit_frame(pd.DataFrame({'value': series.values}), args,
                float_format='%.17g')
    return EXIT_OK


def load_experiment(args):
    if args.seed is None:
        raise ConfigError('seed', 'coverage needs --seed')
    if os.path.exists(args.config):
        config = read_json(args.config)
    elif args.config in BUNDLED_CONFIGS:
        config = bundled_config(args.config)
    else:
        raise InputParseError(args.config, 0, 'no such file')
    if not isinstance(config, dict):
        raise ConfigError('config', 'expected a JSON object')
    config = dict(config, seed=args.seed)
    for name in ['R', 'B']:
        if getattr(args, name) is not None:
            config[name] = getattr(args, name)
    experiment = experiment_config.from_dict(config)
    if args.full_scale:
        experiment = experiment.full_scale()
    return experiment


def cmd_coverage(args):
    experiment = load_experiment(args)
    logger.info('Coverage study %s', experiment)
    report = coverage_study(experiment, progress=not args.no_progress,
                            flush_path=args.out if args.format == 'csv'
                            else None)
    if args.format == 'text':
        _emit(report.to_text(), args.out)
    else:
        _emit_frame(report.table, args)
    if args.text_out is not None:
        _emit(report.to_text(), args.text_out)
    return EXIT_OK


####################################
# parser
####################################

def _add_estimator_flags(parser):
    parser.add_argument('--estimator', action='append', default=None,
                        help='spectral estimator: {} (default prewhiten; '
                        'factorize accepts several)'.format(
                            ', '.join(ESTIMATORS)))
    parser.add_argument('--kernel', default=None,
                        help='lag window: bartlett, gaussian or trapezoid')
    parser.add_argument('--trunc', type=int, default=None,
                        help='lag window truncation T')
    parser.add_argument('--bandwidth', default=None,
                        help='smoothing bandwidth in radians or cv')
    parser.add_argument('--order', default=None,
                        help='AR order or aic')
    parser.add_argument('--pmax', type=int, default=None,
                        help='largest AR order considered by aic')
    parser.add_argument('--threshold', type=float, default=None,
                        help='cepstral threshold')
    parser.add_argument('--grid', type=int, default=DEFAULT_GRID_SIZE,
                        help='frequency grid size N (default %(default)s)')


def _add_output_flags(parser, formats, default):
    parser.add_argument('--out', default=None, help='output file, '
                        'default stdout')
    parser.add_argument('--format', choices=formats, default=default)


def build_parser():
    parser = argparse.ArgumentParser(
        prog='sddb', description='Spectral density driven bootstrap for '
        'time series.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    parser.add_argument('--verbose', action='store_true',
                        help='log progress at INFO level')
    parser.add_argument('--debug', action='store_true',
                        help='log tuning decisions at DEBUG level')
    subparsers = parser.add_subparsers(dest='command', required=True)

    spectrum = subparsers.add_parser('spectrum', help='estimate a spectrum')
    spectrum.add_argument('input', help='series CSV')
    _add_estimator_flags(spectrum)
    _add_output_flags(spectrum, ['csv', 'text', 'json'], 'csv')
    spectrum.set_defaults(handler=cmd_spectrum)

    factorization = subparsers.add_parser(
        'factorize', help='MA and AR coefficients of an estimated spectrum')
    factorization.add_argument('input', help='series CSV or spectrum CSV')
    _add_estimator_flags(factorization)
    factorization.add_argument('--kmin', type=int, default=0)
    factorization.add_argument('--kmax', type=int, default=10)
    _add_output_flags(factorization, ['csv', 'text', 'json'], 'csv')
    factorization.set_defaults(handler=cmd_factorize)

    bootstrap = subparsers.add_parser(
        'bootstrap', help='bootstrap confidence intervals')
    bootstrap.add_argument('input', help='series CSV')
    _add_estimator_flags(bootstrap)
    bootstrap.add_argument('--method', default='sddb',
                           help='sddb, sddb-ar, sddb-arma, ars, bb or nd')
    bootstrap.add_argument('--innovations', default='gaussian',
                           help='gaussian, threepoint or empirical')
    bootstrap.add_argument('--statistic', default='mean',
                           help='mean, rho<h>, moment<h> or '
                                'gencov:<spec.json>')
    studentization = bootstrap.add_mutually_exclusive_group()
    studentization.add_argument('--studentized', action='store_true',
                                help='studentized roots')
    studentization.add_argument('--basic', action='store_true',
                                help='basic (unstudentized) roots')
    bootstrap.add_argument('--B', type=int, default=1000,
                           help='bootstrap replicates (default %(default)s)')
    bootstrap.add_argument('--alpha', type=float, action='append',
                           help='interval level alpha, repeatable '
                           '(default 0.05)')
    bootstrap.add_argument('--seed', type=int, default=DEFAULT_SEED,
                           help='random seed (default %(default)s)')
    bootstrap.add_argument('--replicates', default=None,
                           help='write the replicates to this CSV file')
    _add_output_flags(bootstrap, ['json', 'csv', 'text'], 'json')
    bootstrap.set_defaults(handler=cmd_bootstrap)

    simulate = subparsers.add_parser('simulate',
                                     help='simulate a model series')
    simulate.add_argument('--model', default='I', help='I, II or III')
    simulate.add_argument('--n', type=int, default=128)
    simulate.add_argument('--innovations', default='t3',
                          help='t3 or gaussian')
    simulate.add_argument('--seed', type=int, default=DEFAULT_SEED)
    _add_output_flags(simulate, ['csv', 'text', 'json'], 'csv')
    simulate.set_defaults(handler=cmd_simulate)

    coverage = subparsers.add_parser('coverage',
                                     help='coverage simulation study')
    coverage.add_argument('config', help='experiment JSON, or desk.json / '
                          'smoke.json for the bundled ones')
    coverage.add_argument('--seed', type=int, default=None,
                          help='master seed (required)')
    coverage.add_argument('--R', type=int, default=None,
                          help='override the number of realizations')
    coverage.add_argument('--B', type=int, default=None,
                          help='override the number of replicates')
    coverage.add_argument('--full-scale', action='store_true',
                          help='R = 2000 realizations and B = 1000')
    coverage.add_argument('--no-progress', action='store_true')
    coverage.add_argument('--text-out', default=None,
                          help='also write the text tables to this file')
    _add_output_flags(coverage, ['csv', 'text', 'json'], 'csv')
    coverage.set_defaults(handler=cmd_coverage)
    return parser


def configure_logging(args):
    level = logging.WARNING
    if args.verbose:
        level = logging.INFO
    if args.debug:
        level = logging.DEBUG
    logging.basicConfig(level=level,
                        format='%(levelname)s %(name)s: %(message)s')


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, 'estimator', 1) is None:
        args.estimator = ['prewhiten']
    configure_logging(args)
    try:
        return args.handler(args)
    except InputParseError as err:
        logger.error('%s', err)
        return EXIT_PARSE
    except ValueError as err:
        # ConfigError and the precondition errors of the library
        logger.error('%s', err)
        return EXIT_CONFIG
    except ArithmeticError as err:
        logger.error('%s: %s', type(err).__name__, err)
        return EXIT_NUMERIC


if __name__ == '__main__':
    sys.exit(main())
