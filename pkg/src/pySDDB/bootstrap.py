# -*- coding: utf-8 -*-
"""
Bootstrap pseudo series, replicate distributions and confidence intervals.

The spectral density driven bootstrap (SDDB) estimates a spectral density,
factorizes it into a Wold model and feeds i.i.d. innovations through the MA
form, the AR form or a mixed ARMA form. The AR-sieve bootstrap and the moving
block bootstrap are provided as competitors.

All randomness comes from rng_stream objects: a root seed plus an index
tuple, mapped onto numpy SeedSequence spawn keys. Replicate b of a
bootstrap_distribution uses the substream b, so results are reproducible
and do not depend on the order in which replicates are computed.
"""

import json
import logging
from dataclasses import dataclass, field, asdict, fields

import numpy as np
import pandas as pd
from scipy.signal import convolve, lfilter
from scipy.stats import norm

from .exceptions import (ConfigError, DegenerateSeries, ExplosivePath,
                         InvalidKurtosis, TooFewReplicates)
from .factorization import factorize, implied_autocovariance
from .spectral import (time_series, fit_ar, estimate_spectrum, estimate_like,
                       prewhitened_arma_models, frequency_grid, ESTIMATORS,
                       LAG_WINDOWS)
from .statistics import as_array

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240601
EXPLOSION_GUARD = 1e12
MIN_REPLICATES = 20


####################################
# random streams
####################################

class rng_stream:
    def __init__(self, seed, index=()):
        """
        Deterministic random stream (seed, index).

        Parameters
        ----------
        seed : int
            Non-negative root seed.
        index : int or tuple of int, optional
            Position of the stream below the root, e.g. (model, realization).
            The default is (), the root stream.

        Returns
        -------
        None.

        """
        if int(seed) != seed or seed < 0:
            raise ValueError('Seed must be a non-negative integer.')
        self.seed = int(seed)
        self.index = tuple(int(i) for i in np.atleast_1d(index))

    def __repr__(self):
        return 'rng_stream(seed={}, index={})'.format(self.seed, self.index)

    def seed_sequence(self):
        return np.random.SeedSequence(self.seed, spawn_key=self.index)

    def generator(self):
        """A fresh Generator at the start of this stream."""
        return np.random.Generator(np.random.PCG64(self.seed_sequence()))

    def substream(self, i):
        return rng_stream(self.seed, self.index + (int(i),))


def as_generator(rng):
    if isinstance(rng, rng_stream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


####################################
# innovation laws
####################################

class innovation_generator:
    kinds = ['gaussian', 'three-point', 'empirical-residual']
    aliases = {'normal': 'gaussian', 'threepoint': 'three-point',
               'empirical': 'empirical-residual',
               'residual': 'empirical-residual'}

    def __init__(self, kind='gaussian', sigma2=1.0, kurtosis=None,
                 residuals=None):
        """
        Law of the i.i.d. bootstrap innovations.

        Parameters
        ----------
        kind : str, optional
            'gaussian', 'three-point' or 'empirical-residual'. The default is
            'gaussian'.
        sigma2 : float, optional
            Innovation variance. Ignored for 'empirical-residual', whose
            variance is the one of the centered residual pool. The default
            is 1.0.
        kurtosis : float or None, optional
            Standardized fourth moment kappa4/sigma^4 >= 1 of the three-point
            law. The default is None.
        residuals : array-like or None, optional
            Residual pool of 'empirical-residual'; it is centered. The
            default is None.

        Returns
        -------
        None.

        """
        kind = self.aliases.get(kind, kind)
        if kind not in self.kinds:
            raise ValueError('Innovation law {} unknown, use one of {}.'.format(
                kind, self.kinds))
        self.kind = kind
        self.kurtosis = None
        self.pool = None

        if kind == 'empirical-residual':
            if residuals is None or len(residuals) == 0:
                raise ValueError('Empirical innovations need residuals.')
            self.pool = as_array(residuals) - np.mean(residuals)
            sigma2 = float(np.mean(self.pool**2))
            if sigma2 == 0:
                raise DegenerateSeries('Residual pool has zero variance.')
        elif not sigma2 > 0:
            raise ValueError('Innovation variance must be positive.')
        if kind == 'three-point':
            if kurtosis is None:
                raise ValueError('The three-point law needs a kurtosis.')
            if kurtosis < 1:
                raise InvalidKurtosis(
                    'Three-point law needs kurtosis >= 1, got {:.4g}.'.format(
                        kurtosis))
            self.kurtosis = float(kurtosis)
        self.sigma2 = float(sigma2)

    def __repr__(self):
        return 'innovation_generator({}, sigma2={:.6g})'.format(
            self.kind, self.sigma2)

    def support(self):
        """Values and probabilities of the three-point law."""
        if self.kind != 'three-point':
            raise ValueError('Only the three-point law has a finite support.')
        scale = np.sqrt(self.sigma2 * self.kurtosis)
        tail = 1 / (2 * self.kurtosis)
        return (np.array([-scale, 0.0, scale]),
                np.array([tail, 1 - 2 * tail, tail]))

    def moments(self):
        """Mean, variance and fourth moment of the law."""
        if self.kind == 'gaussian':
            return 0.0, self.sigma2, 3 * self.sigma2**2
        if self.kind == 'three-point':
            values, probabilities = self.support()
            return (float(np.dot(probabilities, values)),
                    float(np.dot(probabilities, values**2)),
                    float(np.dot(probabilities, values**4)))
        return (float(self.pool.mean()), float(np.mean(self.pool**2)),
                float(np.mean(self.pool**4)))

    def draw(self, n, rng):
        generator = as_generator(rng)
        if self.kind == 'gaussian':
            return generator.normal(0.0, np.sqrt(self.sigma2), size=n)
        if self.kind == 'three-point':
            values, probabilities = self.support()
            return generator.choice(values, size=n, p=probabilities)
        return generator.choice(self.pool, size=n, replace=True)

    def rescaled(self, sigma2):
        """Same law with innovation variance sigma2."""
        if self.kind == 'empirical-residual':
            factor = np.sqrt(sigma2 / self.sigma2)
            return innovation_generator(self.kind, residuals=self.pool * factor)
        return innovation_generator(self.kind, sigma2=sigma2,
                                    kurtosis=self.kurtosis)


def gen_innovations(g, n, rng):
    """n i.i.d. draws from the innovation law g."""
    return g.draw(n, rng)


def residual_moments(x, order='aic', pmax=None):
    """
    Variance and clamped fourth moment of the centered AR residuals.

    Returns
    -------
    tuple of float
        sigma2_hat and kappa4_hat = max(mean(e^4), sigma2_hat^2).

    """
    fit = fit_ar(x, order=order, pmax=pmax)
    residuals = fit.residuals - fit.residuals.mean()
    sigma2 = float(np.mean(residuals**2))
    if sigma2 == 0:
        raise DegenerateSeries('AR residuals have zero variance.')
    kappa4 = max(float(np.mean(residuals**4)), sigma2**2)
    return sigma2, kappa4


def estimate_kappa4(x, order='aic', pmax=None):
    """
    Fourth moment of the innovations from AR residuals, at least sigma^4.
    """
    return residual_moments(x, order=order, pmax=pmax)[1]


def standardized_kurtosis(x, order='aic', pmax=None):
    """kappa4_hat / sigma2_hat^2, >= 1."""
    sigma2, kappa4 = residual_moments(x, order=order, pmax=pmax)
    return kappa4 / sigma2**2


####################################
# pseudo series generators
####################################

def _check_path(path, guard):
    if not np.all(np.isfinite(path)) or np.max(np.abs(path)) > guard:
        raise ExplosivePath(
            'Pseudo series exceeded {:.0e}; the AR form is not stable.'.format(
                guard))


def _burn_in(p, burn_in):
    return 1000 + 10 * p if burn_in is None else int(burn_in)


def sddb_generate_ma(w, n, g, mean=0.0, rng=None):
    """
    X_t = mean + sum_{k=0}^{M} c_k eps_{t-k} from n+M innovations.

    Parameters
    ----------
    w : wold_model
    n : int
    g : innovation_generator
    mean : float, optional
        The default is 0.0.
    rng : rng_stream, Generator or None, optional
        The default is None (unseeded).

    Returns
    -------
    time_series

    """
    M = w.ma.size - 1
    eps = g.draw(n + M, rng)
    return time_series(convolve(eps, w.ma, mode='valid') + mean)


def sddb_generate_ar(w, n, g, mean=0.0, rng=None, burn_in=None,
                     guard=EXPLOSION_GUARD):
    """
    X_t = sum_{k=1}^{M} b_k X_{t-k} + eps_t after a burn-in, plus mean.

    Parameters
    ----------
    w : wold_model
    n : int
    g : innovation_generator
    mean : float, optional
        The default is 0.0.
    rng : rng_stream, Generator or None, optional
    burn_in : int or None, optional
        Discarded start. None uses 1000 + 10*M. The default is None.
    guard : float, optional
        Largest absolute value allowed anywhere on the path. The default is
        1e12.

    Returns
    -------
    time_series

    """
    phi = w.ar_parameters()
    burn = _burn_in(phi.size, burn_in)
    eps = g.draw(burn + n, rng)
    path = lfilter([1.0], np.concatenate(([1.0], -phi)), eps)
    _check_path(path, guard)
    return time_series(path[burn:] + mean)


def sddb_generate_arma(ma_model, phi, n, g, mean=0.0, rng=None, burn_in=None,
                       guard=EXPLOSION_GUARD):
    """
    Mixed form: AR(p) recursion driven by MA-filtered innovations.

    X_t = sum_j phi_j X_{t-j} + sum_k c_k eps_{t-k}, where c comes from
    ma_model (typically the factorized residual density of a pre-whitened
    estimate) and phi from the pre-whitening AR fit.
    """
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    M = ma_model.ma.size - 1
    burn = _burn_in(phi.size, burn_in)
    eps = g.draw(burn + n + M, rng)
    driving = convolve(eps, ma_model.ma, mode='valid')
    path = lfilter([1.0], np.concatenate(([1.0], -phi)), driving)
    _check_path(path, guard)
    return time_series(path[burn:] + mean)


def ar_sieve_bootstrap(x, rng=None, order='aic', pmax=None, burn_in=None):
    """
    AR-sieve pseudo series: the Yule-Walker AR fit driven by resampled,
    centered residuals.
    """
    series = x if isinstance(x, time_series) else time_series(x)
    fit = fit_ar(series, order=order, pmax=pmax)
    g = innovation_generator('empirical-residual', residuals=fit.residuals)
    return sddb_generate_ar(fit.wold_model(), series.n, g, series.mean(), rng,
                            burn_in=burn_in)


def moving_block_bootstrap(x, block_length=None, rng=None):
    """
    Concatenation of blocks x_{s+1..s+l} with uniform starts s in 0..n-l,
    truncated to n values.

    Parameters
    ----------
    x : array-like or time_series
    block_length : int or None, optional
        l, 1 <= l <= n. None uses ceil(n^(1/3)). The default is None.
    rng : rng_stream, Generator or None, optional

    Returns
    -------
    time_series

    """
    values = as_array(x)
    n = values.size
    if block_length is None:
        block_length = default_block_length(n)
    l = int(block_length)
    if not 1 <= l <= n:
        raise ValueError('Block length {} outside of 1..{}.'.format(l, n))
    generator = as_generator(rng)
    starts = generator.integers(0, n - l + 1, size=-(-n // l))
    index = (starts[:, None] + np.arange(l)[None, :]).ravel()[:n]
    return time_series(values[index])


def default_block_length(n):
    return int(np.ceil(n ** (1 / 3)))


####################################
# method configuration
####################################

METHODS = ['sddb', 'sddb-ar', 'sddb-arma', 'ars', 'bb', 'nd']
INNOVATIONS = ['gaussian', 'three-point', 'empirical-residual']


@dataclass
class method_config:
    """
    A bootstrap method with its estimator and innovation choices.

    method is one of 'sddb' (MA form), 'sddb-ar', 'sddb-arma', 'ars', 'bb'
    and 'nd'. tuning holds estimator keywords (kernel, truncation,
    bandwidth, order, pmax, threshold, bias_correction).
    """
    method: str = 'sddb'
    estimator: str = 'prewhiten'
    tuning: dict = field(default_factory=dict)
    innovations: str = 'gaussian'
    B: int = 1000
    seed: int = DEFAULT_SEED
    grid_size: int = 8192
    studentizer_grid_size: int = 512
    block_length: int = None
    burn_in: int = None

    def __post_init__(self):
        self.method = str(self.method).lower()
        self.innovations = innovation_generator.aliases.get(
            self.innovations, self.innovations)
        self.validate()

    def validate(self, prefix=''):
        if self.method not in METHODS:
            raise ConfigError(prefix + 'method', 'unknown method {}, use one '
                              'of {}'.format(self.method, METHODS))
        if self.estimator not in ESTIMATORS:
            raise ConfigError(prefix + 'estimator', 'unknown estimator {}, use '
                              'one of {}'.format(self.estimator,
                                                 list(ESTIMATORS)))
        if self.innovations not in INNOVATIONS:
            raise ConfigError(prefix + 'innovations', 'unknown law {}, use one '
                              'of {}'.format(self.innovations, INNOVATIONS))
        if 'kernel' in self.tuning and self.tuning['kernel'] not in LAG_WINDOWS:
            raise ConfigError(prefix + 'tuning.kernel', 'unknown lag window '
                              '{}'.format(self.tuning['kernel']))
        for name in ['B', 'grid_size', 'studentizer_grid_size']:
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ConfigError(prefix + name, 'must be a positive integer')
        for name in ['grid_size', 'studentizer_grid_size']:
            try:
                frequency_grid(getattr(self, name))
            except ValueError as err:
                raise ConfigError(prefix + name, str(err))
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError(prefix + 'seed', 'must be a non-negative integer')
        if self.block_length is not None and self.block_length < 1:
            raise ConfigError(prefix + 'block_length', 'must be at least 1')

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, config, prefix=''):
        known = {f.name for f in fields(cls)}
        for key in config:
            if key not in known:
                raise ConfigError(prefix + key, 'unknown field')
        return cls(**config)

    @classmethod
    def from_json(cls, path):
        with open(path, 'r') as config_file:
            return cls.from_dict(json.load(config_file))


####################################
# bootstrap worlds
####################################

class bootstrap_scheme:
    def __init__(self, x, config):
        """
        The bootstrap world of one data set under one method.

        Estimates and factorizes the spectral density (SDDB variants), fits
        the AR sieve (ars) or fixes the block length (bb). A studentizer
        template, the configured estimator on the small studentizer grid, is
        estimated for every method; bootstrap series reuse its tuning.

        Parameters
        ----------
        x : array-like or time_series
        config : method_config

        Returns
        -------
        None.

        """
        self.x = x if isinstance(x, time_series) else time_series(x)
        self.config = config
        self.density = None
        self.model = None
        self.ma_model = None
        self.phi = None
        self.generator = None
        self.template = estimate_spectrum(
            self.x, config.estimator,
            grid=frequency_grid(config.studentizer_grid_size), **config.tuning)
        self._prepare()

    def _innovations(self, sigma2):
        kind = self.config.innovations
        if kind == 'gaussian':
            return innovation_generator('gaussian', sigma2=sigma2)
        if kind == 'three-point':
            return innovation_generator(
                'three-point', sigma2=sigma2,
                kurtosis=standardized_kurtosis(self.x))
        residuals = fit_ar(self.x).residuals
        return innovation_generator(
            'empirical-residual', residuals=residuals).rescaled(sigma2)

    def _prepare(self):
        method = self.config.method
        if method.startswith('sddb'):
            self.density = estimate_spectrum(
                self.x, self.config.estimator,
                grid=frequency_grid(self.config.grid_size),
                **self.config.tuning)
            self.model = factorize(self.density)
            sigma2 = self.model.sigma2
            if method == 'sddb-arma':
                if self.config.estimator != 'prewhiten':
                    raise ConfigError('estimator', 'sddb-arma needs the '
                                      'prewhiten estimator')
                self.ma_model, self.phi = prewhitened_arma_models(self.density)
                sigma2 = self.ma_model.sigma2
            self.generator = self._innovations(sigma2)
            logger.debug('SDDB model %s with %s innovations', self.model,
                         self.generator.kind)
        elif method == 'ars':
            fit = fit_ar(self.x, order=self.config.tuning.get('order', 'aic'),
                         pmax=self.config.tuning.get('pmax'))
            self.model = fit.wold_model()
            self.generator = innovation_generator('empirical-residual',
                                                  residuals=fit.residuals)
        elif method == 'bb':
            if self.config.block_length is None:
                self.block_length = default_block_length(self.x.n)
            else:
                self.block_length = self.config.block_length

    def generate(self, rng):
        """One pseudo series of the length of the data."""
        method = self.config.method
        n = self.x.n
        mean = self.x.mean()
        if method == 'sddb':
            return sddb_generate_ma(self.model, n, self.generator, mean, rng)
        elif method in ['sddb-ar', 'ars']:
            return sddb_generate_ar(self.model, n, self.generator, mean, rng,
                                    burn_in=self.config.burn_in)
        elif method == 'sddb-arma':
            return sddb_generate_arma(self.ma_model, self.phi, n,
                                      self.generator, mean, rng,
                                      burn_in=self.config.burn_in)
        elif method == 'bb':
            return moving_block_bootstrap(self.x, self.block_length, rng)
        else:
            raise ValueError('Method {} generates no pseudo series.'.format(
                method))

    def bootstrap_parameter(self, statistic):
        """
        The value of the statistic's parameter in the bootstrap world.

        Model based methods use the autocovariances of the generating Wold
        model and the sample mean, the block bootstrap uses the statistic of
        the data.
        """
        if self.model is None:
            return statistic(self.x)
        acov = implied_autocovariance(self.model, statistic.max_lag)
        return statistic.population_value(acov, self.x.mean())

    def studentizer_density(self, x):
        """The template estimator rerun on x with frozen tuning."""
        return self.template if x is self.x else estimate_like(x, self.template)

    def standard_error(self, statistic, x, f_hat=None):
        """Studentizer of statistic at x, see studentizer_density."""
        if f_hat is None:
            f_hat = self.studentizer_density(x)
        kurtosis = standardized_kurtosis(x) if statistic.needs_kurtosis else 3.0
        return statistic.standard_error(x, f_hat, kurtosis=kurtosis)


####################################
# replicate sets
####################################

class bootstrap_replicate_set:
    def __init__(self, values, original, method, statistic, seed, center=None,
                 standard_errors=None, original_se=None):
        """
        Replicates T*_1..T*_B of a statistic.

        Parameters
        ----------
        values : array-like
            The B replicates.
        original : float
            The statistic of the data.
        method : str
        statistic : str
            Statistic name.
        seed : int
        center : float or None, optional
            The statistic's parameter in the bootstrap world, the center of
            the bootstrap roots. None uses original. The default is None.
        standard_errors : array-like or None, optional
            Studentizer of each replicate. The default is None.
        original_se : float or None, optional
            Studentizer of the data. The default is None.

        Returns
        -------
        None.

        """
        self.values = np.asarray(values, dtype=float)
        self.original = float(original)
        self.method = method
        self.statistic = statistic
        self.seed = seed
        self.center = self.original if center is None else float(center)
        self.standard_errors = (None if standard_errors is None else
                                np.asarray(standard_errors, dtype=float))
        self.original_se = None if original_se is None else float(original_se)

    @property
    def B(self):
        return self.values.size

    @property
    def studentized(self):
        return self.standard_errors is not None and self.original_se is not None

    def __repr__(self):
        return 'bootstrap_replicate_set({}, {}, B={})'.format(
            self.method, self.statistic, self.B)

    def standard_deviation(self):
        return float(np.std(self.values, ddof=1))

    def to_frame(self):
        frame = pd.DataFrame({'replicate': np.arange(1, self.B + 1),
                              'value': self.values})
        if self.standard_errors is not None:
            frame['se'] = self.standard_errors
        return frame

    def export_replicates(self, export_path):
        self.to_frame().to_csv(export_path, index=False, float_format='%.6g')


def default_studentized(statistic):
    return getattr(statistic, 'default_studentized', False)


def bootstrap_distributions(x, statistics, config, B=None, rng=None,
                            studentize=None, progress=None):
    """
    Replicate sets of several statistics from the same pseudo series.

    Parameters
    ----------
    x : array-like or time_series
    statistics : list
        Statistic objects (see pySDDB.statistics).
    config : method_config
    B : int or None, optional
        Number of replicates. None uses config.B. The default is None.
    rng : rng_stream or None, optional
        Replicate b uses rng.substream(b). None uses rng_stream(config.seed).
        The default is None.
    studentize : bool or None, optional
        Compute the studentizer of every replicate. None decides per
        statistic (mean and autocorrelations are studentized). The default
        is None.
    progress : callable or None, optional
        Wraps the replicate range, e.g. tqdm. The default is None.

    Returns
    -------
    dict
        Statistic name -> bootstrap_replicate_set.

    """
    series = x if isinstance(x, time_series) else time_series(x)
    B = config.B if B is None else int(B)
    if B < 1:
        raise ValueError('B must be positive.')
    rng = rng_stream(config.seed) if rng is None else rng
    if config.method == 'nd':
        raise ValueError('The normal approximation has no replicates.')

    scheme = bootstrap_scheme(series, config)
    studentized = {
        s.name: getattr(s, 'can_studentize', False) and (
            default_studentized(s) if studentize is None else studentize)
        for s in statistics}
    values = {s.name: np.empty(B) for s in statistics}
    ses = {s.name: np.full(B, np.nan) for s in statistics}

    replicates = range(B) if progress is None else progress(range(B))
    for b in replicates:
        pseudo = scheme.generate(rng.substream(b))
        f_star = (scheme.studentizer_density(pseudo)
                  if any(studentized.values()) else None)
        for s in statistics:
            values[s.name][b] = s(pseudo)
            if studentized[s.name]:
                ses[s.name][b] = scheme.standard_error(s, pseudo, f_star)

    result = {}
    for s in statistics:
        original_se = (scheme.standard_error(s, series) if studentized[s.name]
                       else None)
        result[s.name] = bootstrap_replicate_set(
            values[s.name], s(series), config.method, s.name, rng.seed,
            center=scheme.bootstrap_parameter(s),
            standard_errors=ses[s.name] if studentized[s.name] else None,
            original_se=original_se)
    return result


def bootstrap_distribution(x, statistic, config, B=None, rng=None,
                           studentize=None, progress=None):
    """Replicate set of one statistic, see bootstrap_distributions."""
    return bootstrap_distributions(x, [statistic], config, B=B, rng=rng,
                                   studentize=studentize,
                                   progress=progress)[statistic.name]


def generalized_mean_distribution(x, statistic, config, B=None, rng=None,
                                  studentize=None, progress=None):
    """
    Replicate set of a generalized_mean statistic.

    The configured scheme runs on the derived series Y = statistic.derive(x)
    and every replicate is h of the mean of a pseudo Y series. Arguments as
    in bootstrap_distributions.
    """
    y = statistic.derive(x)
    logger.debug('Bootstrap of %s on a derived series of length %d',
                 statistic.name, y.size)
    return bootstrap_distribution(y, statistic, config, B=B, rng=rng,
                                  studentize=studentize, progress=progress)


####################################
# confidence intervals
####################################

CI_MODES = ['basic-root', 'studentized']


def confidence_interval(replicates, alpha, mode='basic-root'):
    """
    Equal-tailed bootstrap confidence interval of level 1 - alpha.

    Basic roots are T* - center, studentized roots (T* - center)/se*. The
    quantiles q_lo, q_hi of the roots at alpha/2 and 1 - alpha/2 (linear
    interpolation) give [T - s q_hi, T - s q_lo] with s = 1 or the
    studentizer of the data.

    Parameters
    ----------
    replicates : bootstrap_replicate_set
    alpha : float
        0 < alpha < 1.
    mode : str, optional
        'basic-root' or 'studentized'. The default is 'basic-root'.

    Returns
    -------
    tuple of float
        Lower and upper bound.

    """
    if not 0 < alpha < 1:
        raise ValueError('alpha must be in (0, 1), got {}.'.format(alpha))
    if replicates.B < MIN_REPLICATES:
        raise TooFewReplicates('Need at least {} replicates, got {}.'.format(
            MIN_REPLICATES, replicates.B))
    if mode == 'basic-root':
        roots = replicates.values - replicates.center
        scale = 1.0
    elif mode == 'studentized':
        if not replicates.studentized:
            raise ValueError('Replicates carry no standard errors.')
        roots = ((replicates.values - replicates.center) /
                 replicates.standard_errors)
        scale = replicates.original_se
    else:
        raise ValueError('Interval mode {} unknown, use one of {}.'.format(
            mode, CI_MODES))
    q_lo, q_hi = np.quantile(roots, [alpha / 2, 1 - alpha / 2])
    return (replicates.original - scale * q_hi,
            replicates.original - scale * q_lo)


def normal_interval(estimate, standard_error, alpha):
    """estimate -/+ z_{1-alpha/2} standard_error."""
    if not 0 < alpha < 1:
        raise ValueError('alpha must be in (0, 1), got {}.'.format(alpha))
    z = norm.ppf(1 - alpha / 2)
    return estimate - z * standard_error, estimate + z * standard_error


__all__ = ['rng_stream', 'innovation_generator', 'gen_innovations',
           'estimate_kappa4', 'standardized_kurtosis', 'residual_moments',
           'sddb_generate_ma', 'sddb_generate_ar', 'sddb_generate_arma',
           'ar_sieve_bootstrap', 'moving_block_bootstrap', 'method_config',
           'bootstrap_scheme', 'bootstrap_replicate_set',
           'bootstrap_distribution', 'bootstrap_distributions',
           'generalized_mean_distribution',
           'confidence_interval', 'normal_interval']
