# -*- coding: utf-8 -*-
"""
Simulation design: data generating models, coverage studies and tables of
factorization coefficients.

Model I    X_t = 0.9 X_{t-1} + e_t
Model II   X_t = 1.34 X_{t-1} - 1.88 X_{t-2} + 1.32 X_{t-3} - 0.8 X_{t-4}
                 + e_t + 0.71 e_{t-1} + 0.25 e_{t-2}
Model III  X_t = sum_{k=0}^{10} binom(10, k) (-1)^k e_{t-k}

with e_t drawn from t(3)/sqrt(3), i.e. Student t innovations with three
degrees of freedom and unit variance.
"""

import json
import logging
import time
from dataclasses import dataclass, field, asdict, fields, replace
from functools import lru_cache
from importlib import resources

import numpy as np
import pandas as pd
from scipy.signal import convolve, correlate, freqz, lfilter
from scipy.special import comb
from tqdm import tqdm

from .bootstrap import (bootstrap_distributions, bootstrap_scheme,
                        confidence_interval, method_config, normal_interval,
                        rng_stream, as_generator, METHODS, INNOVATIONS)
from .exceptions import ConfigError
from .factorization import factorize, implied_autocovariance
from .spectral import (time_series, estimate_spectrum, frequency_grid,
                       ESTIMATORS)
from .spectral_density import spectral_density
from .statistics import statistic_from_name

logger = logging.getLogger(__name__)

TRUE_DENSITY_GRID = 2**15

# lfilter polynomials (b, a) of the models
MODEL_POLYNOMIALS = {
    'I': ([1.0], [1.0, -0.9]),
    'II': ([1.0, 0.71, 0.25], [1.0, -1.34, 1.88, -1.32, 0.8]),
    'III': ([comb(10, k, exact=True) * (-1)**k for k in range(11)], [1.0]),
}
MODEL_INNOVATIONS = ['t3', 'gaussian']


@dataclass
class model_spec:
    id: str = 'I'
    n: int = 128
    innovations: str = 't3'
    burn_in: int = 1000

    def __post_init__(self):
        self.id = str(self.id).upper()
        if self.id not in MODEL_POLYNOMIALS:
            raise ValueError('Model {} unknown, use one of {}.'.format(
                self.id, list(MODEL_POLYNOMIALS)))
        if self.n < 32:
            raise ValueError('Model series need n >= 32, got {}.'.format(
                self.n))
        if self.innovations not in MODEL_INNOVATIONS:
            raise ValueError('Innovations {} unknown, use one of {}.'.format(
                self.innovations, MODEL_INNOVATIONS))

    @property
    def ma_polynomial(self):
        return np.asarray(MODEL_POLYNOMIALS[self.id][0], dtype=float)

    @property
    def ar_polynomial(self):
        return np.asarray(MODEL_POLYNOMIALS[self.id][1], dtype=float)

    @property
    def is_finite_ma(self):
        return self.ar_polynomial.size == 1

    def true_density(self, grid=None):
        """sigma^2/(2 pi) |MA(e^{-i lambda})|^2 / |AR(e^{-i lambda})|^2, sigma^2 = 1."""
        grid = frequency_grid(TRUE_DENSITY_GRID) if grid is None else grid
        _, response = freqz(self.ma_polynomial, self.ar_polynomial,
                            worN=grid.N, whole=True)
        return spectral_density(np.abs(response)**2 / (2 * np.pi), grid=grid,
                                family='model')

    def wold_model(self):
        """
        Wold model of Models I and II from their true density.

        Model III has a unit root at frequency zero and no AR form.
        """
        if self.is_finite_ma:
            raise ValueError('Model {} has no AR representation.'.format(
                self.id))
        return _true_wold_model(self.id)


@lru_cache(maxsize=None)
def _true_wold_model(model_id):
    # Model II has AR roots of modulus close to one, keep all N/2 - 1 terms
    return factorize(model_spec(model_id).true_density())


def draw_innovations(m, size, rng):
    generator = as_generator(rng)
    if m.innovations == 't3':
        return generator.standard_t(3, size=size) / np.sqrt(3)
    return generator.standard_normal(size)


def simulate_model(m, rng):
    """
    One realization of length m.n.

    Models I and II are filtered recursively and lose their first
    m.burn_in values, Model III is the finite MA filter of n + 10
    innovations.

    Parameters
    ----------
    m : model_spec
    rng : rng_stream or Generator

    Returns
    -------
    time_series

    """
    if m.is_finite_ma:
        q = m.ma_polynomial.size - 1
        eps = draw_innovations(m, m.n + q, rng)
        return time_series(convolve(eps, m.ma_polynomial, mode='valid'))
    eps = draw_innovations(m, m.burn_in + m.n, rng)
    path = lfilter(m.ma_polynomial, m.ar_polynomial, eps)
    return time_series(path[m.burn_in:])


def true_autocovariance(m, maxlag):
    """Autocovariances of the model with unit innovation variance."""
    if m.is_finite_ma:
        c = m.ma_polynomial
        products = correlate(c, c, mode='full')[c.size - 1:]
        acov = np.zeros(maxlag + 1)
        upto = min(maxlag + 1, products.size)
        acov[:upto] = products[:upto]
        return acov
    return implied_autocovariance(m.wold_model(), maxlag)


def true_rho2(m):
    acov = true_autocovariance(m, 2)
    return float(acov[2] / acov[0])


def true_parameter(m, statistic):
    """Population value of a statistic under the model (mean zero)."""
    acov = true_autocovariance(m, max(statistic.max_lag, 1))
    return statistic.population_value(acov, 0.0)


####################################
# experiment configuration
####################################

DEFAULT_LEVELS = [0.2, 0.1, 0.05]


@dataclass
class experiment_config:
    """
    A coverage study.

    levels are the alpha values; coverage is reported at 1 - alpha. grid_size
    is the grid the bootstrap densities are factorized on.
    """
    seed: int = None
    models: list = field(default_factory=lambda: ['I', 'II', 'III'])
    n: int = 128
    methods: list = field(default_factory=lambda: ['sddb', 'ars', 'bb', 'nd'])
    statistics: list = field(default_factory=lambda: ['mean', 'rho2'])
    studentized: bool = True
    levels: list = field(default_factory=lambda: list(DEFAULT_LEVELS))
    R: int = 500
    B: int = 500
    estimator: str = 'prewhiten'
    tuning: dict = field(default_factory=dict)
    innovations: str = 'gaussian'
    model_innovations: str = 't3'
    grid_size: int = 2048
    studentizer_grid_size: int = 512

    def __post_init__(self):
        self.models = [str(model).upper() for model in self.models]
        self.methods = [str(method).lower() for method in self.methods]
        self.validate()

    def validate(self):
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError('seed', 'a non-negative integer seed is '
                              'required')
        for i, model in enumerate(self.models):
            if model not in MODEL_POLYNOMIALS:
                raise ConfigError('models[{}]'.format(i),
                                  'unknown model {}'.format(model))
        for i, method in enumerate(self.methods):
            if method not in METHODS:
                raise ConfigError('methods[{}]'.format(i), 'unknown method '
                                  '{}, use one of {}'.format(method, METHODS))
        for i, name in enumerate(self.statistics):
            try:
                statistic = statistic_from_name(name)
            except (ValueError, OSError) as err:
                raise ConfigError('statistics[{}]'.format(i), str(err))
            if hasattr(statistic, 'derive'):
                raise ConfigError('statistics[{}]'.format(i), '{} is '
                                  'bootstrapped through a derived series, '
                                  'use sddb bootstrap'.format(name))
            if ('nd' in self.methods and self.studentized and
                    not statistic.can_studentize):
                raise ConfigError('statistics[{}]'.format(i), 'nd needs a '
                                  'studentizer, {} has none'.format(name))
        for i, level in enumerate(self.levels):
            if not 0 < level < 1:
                raise ConfigError('levels[{}]'.format(i),
                                  'must lie in (0, 1), got {}'.format(level))
        for name in ['R', 'B']:
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ConfigError(name, 'must be a positive integer')
        if not isinstance(self.n, int) or self.n < 32:
            raise ConfigError('n', 'must be an integer >= 32')
        if self.estimator not in ESTIMATORS:
            raise ConfigError('estimator', 'unknown estimator {}'.format(
                self.estimator))
        if self.model_innovations not in MODEL_INNOVATIONS:
            raise ConfigError('model_innovations', 'use one of {}'.format(
                MODEL_INNOVATIONS))
        if self.innovations not in INNOVATIONS + ['threepoint', 'empirical']:
            raise ConfigError('innovations', 'use one of {}'.format(
                INNOVATIONS))
        # estimator, grids and tuning checks shared with the bootstrap
        for method in self.methods:
            self.method_config(method)

    def method_config(self, method):
        return method_config(
            method=method, estimator=self.estimator, tuning=dict(self.tuning),
            innovations=self.innovations, B=self.B, seed=self.seed,
            grid_size=self.grid_size,
            studentizer_grid_size=self.studentizer_grid_size)

    def full_scale(self):
        """The same study with R = 2000 realizations and B = 1000."""
        return replace(self, R=2000, B=1000)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, config):
        known = {f.name for f in fields(cls)}
        for key in config:
            if key not in known:
                raise ConfigError(key, 'unknown field')
        try:
            return cls(**config)
        except TypeError as err:
            raise ConfigError('config', str(err))

    @classmethod
    def from_json(cls, path):
        with open(path, 'r') as config_file:
            return cls.from_dict(json.load(config_file))


def bundled_config(name='desk.json'):
    """Load a configuration shipped with the package."""
    config = json.loads(
        resources.files(__package__).joinpath('configs', name).read_text())
    return config


####################################
# coverage study
####################################

class coverage_report:
    columns = ['model', 'method', 'statistic', 'level', 'coverage', 'se',
               'runtime_ms']

    def __init__(self, table, config):
        """
        Empirical coverage per (model, method, statistic, level).

        Parameters
        ----------
        table : DataFrame
            Columns model, method, statistic, level (nominal coverage
            1 - alpha), coverage (percent), se (Monte Carlo standard error in
            percent) and runtime_ms (mean time per realization).
        config : experiment_config

        Returns
        -------
        None.

        """
        self.table = table[self.columns].reset_index(drop=True)
        self.config = config

    def cell(self, model, method, statistic, level):
        rows = self.table[(self.table['model'] == model) &
                          (self.table['method'] == method) &
                          (self.table['statistic'] == statistic) &
                          np.isclose(self.table['level'], level)]
        if len(rows.index) != 1:
            raise KeyError((model, method, statistic, level))
        return rows.iloc[0]

    def export_csv(self, export_path):
        self.table.to_csv(export_path, index=False, float_format='%.6g')

    def export_config(self, export_path):
        with open(export_path, 'w') as config_file:
            json.dump(self.config.to_dict(), config_file, indent=2,
                      sort_keys=True)

    def to_text(self):
        """Coverage in percent, one block per statistic, methods as rows."""
        blocks = []
        for statistic, frame in self.table.groupby('statistic', sort=False):
            pivot = frame.pivot_table(index='method', columns=['model', 'level'],
                                      values='coverage', sort=False)
            pivot.columns = ['{} {:g}%'.format(model, 100 * level)
                             for model, level in pivot.columns]
            blocks.append('Coverage (%) of {}, n = {}, R = {}, B = {}\n{}'.format(
                statistic, self.config.n, self.config.R, self.config.B,
                pivot.to_string(float_format=lambda v: '{:.1f}'.format(v))))
        return '\n\n'.join(blocks) + '\n'


def _rows(hits, runtimes, config, model):
    rows = []
    R = config.R
    for (method, statistic), cell_hits in hits.items():
        for j, alpha in enumerate(config.levels):
            p = float(np.mean(cell_hits[:, j]))
            rows.append({'model': model, 'method': method,
                         'statistic': statistic, 'level': 1 - alpha,
                         'coverage': 100 * p,
                         'se': 100 * np.sqrt(p * (1 - p) / R),
                         'runtime_ms': 1000 * runtimes[method] / R})
    return rows


def coverage_study(config, progress=True, flush_path=None):
    """
    Empirical coverage of bootstrap confidence intervals.

    Realization r of model i is simulated from the stream (seed, (i, r)), the
    bootstrap of method k on it uses (seed, (i, r, k)). The normal
    approximation (nd) uses the studentizer's standard error, or the standard
    deviation of SDDB replicates when config.studentized is False.

    Parameters
    ----------
    config : experiment_config
    progress : bool, optional
        Show a progress bar over realizations. The default is True.
    flush_path : str or None, optional
        Rewrite the CSV report after every finished model. The default is
        None.

    Returns
    -------
    coverage_report

    """
    statistics = [statistic_from_name(name) for name in config.statistics]
    mode = 'studentized' if config.studentized else 'basic-root'
    rows = []
    for i, model in enumerate(config.models):
        spec = model_spec(model, n=config.n,
                          innovations=config.model_innovations)
        truths = {s.name: true_parameter(spec, s) for s in statistics}
        hits = {(method, s.name): np.zeros((config.R, len(config.levels)),
                                           dtype=bool)
                for method in config.methods for s in statistics}
        runtimes = {method: 0.0 for method in config.methods}

        for r in tqdm(range(config.R), desc='Model {}'.format(model),
                      disable=not progress):
            x = simulate_model(spec, rng_stream(config.seed, (i, r)))
            sddb_sets = None
            for k, method in enumerate(config.methods):
                start = time.perf_counter()
                stream = rng_stream(config.seed, (i, r, k))
                if method == 'nd':
                    intervals = _normal_intervals(x, statistics, config,
                                                  sddb_sets, stream)
                else:
                    replicate_sets = bootstrap_distributions(
                        x, statistics, config.method_config(method), rng=stream,
                        studentize=config.studentized)
                    if method == 'sddb':
                        sddb_sets = replicate_sets
                    intervals = {
                        name: [confidence_interval(
                            replicates, alpha,
                            mode if replicates.studentized else 'basic-root')
                            for alpha in config.levels]
                        for name, replicates in replicate_sets.items()}
                runtimes[method] += time.perf_counter() - start
                for s in statistics:
                    for j, (lower, upper) in enumerate(intervals[s.name]):
                        hits[(method, s.name)][r, j] = \
                            lower <= truths[s.name] <= upper

        model_rows = _rows(hits, runtimes, config, model)
        for row in model_rows:
            logger.info('Model %s %s %s %.0f%%: coverage %.1f (se %.1f)',
                        row['model'], row['method'], row['statistic'],
                        100 * row['level'], row['coverage'], row['se'])
        rows += model_rows
        if flush_path is not None:
            coverage_report(pd.DataFrame(rows), config).export_csv(flush_path)

    return coverage_report(pd.DataFrame(rows, columns=coverage_report.columns),
                           config)


def _normal_intervals(x, statistics, config, sddb_sets, stream):
    # normal quantiles around the estimate
    intervals = {}
    if config.studentized:
        scheme = bootstrap_scheme(x, config.method_config('nd'))
        for s in statistics:
            se = scheme.standard_error(s, scheme.x)
            intervals[s.name] = [normal_interval(s(x), se, alpha)
                                 for alpha in config.levels]
        return intervals
    if sddb_sets is None:
        sddb_sets = bootstrap_distributions(
            x, statistics, config.method_config('sddb'), rng=stream,
            studentize=False)
    for s in statistics:
        se = sddb_sets[s.name].standard_deviation()
        intervals[s.name] = [normal_interval(s(x), se, alpha)
                             for alpha in config.levels]
    return intervals


####################################
# coefficient tables
####################################

def coefficient_table(x, estimators, k_range=range(0, 11), grid=None,
                      tuning=None):
    """
    MA and AR coefficients of the factorized estimates of several estimators.

    Parameters
    ----------
    x : array-like or time_series
        At least 32 values.
    estimators : list of str
        Estimator names, see pySDDB.spectral.ESTIMATORS.
    k_range : iterable of int, optional
        The indices k reported. The default is 0..10.
    grid : frequency_grid, int or None, optional
        The default is None, the default grid.
    tuning : dict or None, optional
        Estimator name -> tuning keywords. The default is None.

    Returns
    -------
    DataFrame
        Columns estimator, k, c_k, b_k.

    """
    series = x if isinstance(x, time_series) else time_series(x)
    if series.n < 32:
        raise ValueError('Coefficient tables need n >= 32, got {}.'.format(
            series.n))
    tuning = {} if tuning is None else tuning
    ks = np.asarray(list(k_range), dtype=int)
    if ks.size and ks.min() < 0:
        raise ValueError('Coefficient indices must be non-negative.')
    frames = []
    for estimator in estimators:
        density = estimate_spectrum(series, estimator, grid=grid,
                                    **tuning.get(estimator, {}))
        frames.append(wold_table(factorize(density), ks, estimator))
    return pd.concat(frames, ignore_index=True)


def wold_table(w, ks, label):
    ma = np.zeros(ks.max() + 1 if ks.size else 0)
    ar = np.zeros_like(ma)
    upto_ma = min(ma.size, w.ma.size)
    upto_ar = min(ar.size, w.ar.size)
    ma[:upto_ma] = w.ma[:upto_ma]
    ar[:upto_ar] = w.ar[:upto_ar]
    return pd.DataFrame({'estimator': label, 'k': ks, 'c_k': ma[ks],
                         'b_k': ar[ks]})


def render_coefficient_table(table):
    """Text rendering rounded to two decimals: a c row and a b row per estimator."""
    lines = []
    ks = sorted(table['k'].unique())
    header = '{:<14}'.format('') + ''.join('{:>8}'.format(k) for k in ks)
    lines.append(header)
    for estimator, frame in table.groupby('estimator', sort=False):
        frame = frame.set_index('k').loc[ks]
        for column, label in [('c_k', 'c'), ('b_k', 'b')]:
            values = np.round(frame[column].to_numpy(), 2) + 0.0
            lines.append('{:<14}'.format('{} {}'.format(estimator, label)) +
                         ''.join('{:>8.2f}'.format(v) for v in values))
    return '\n'.join(lines) + '\n'
