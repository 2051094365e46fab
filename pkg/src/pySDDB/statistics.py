# -*- coding: utf-8 -*-
"""
Statistics approximated by the bootstrap and their studentizations.

Covers the sample mean, sample autocovariances and autocorrelations, the
generalized autocovariance statistics (smooth functions of weighted
quadratic forms of the centered observations) and generalized mean
statistics. The statistic classes at the end bundle a statistic with its
studentizer and with its value under a known second-order structure, which
is what the bootstrap and the coverage harness need.
"""

import json
import logging

import numpy as np
from statsmodels.tsa.stattools import acovf

from .exceptions import CombinerDomain, FloorViolation, ZeroVariance

logger = logging.getLogger(__name__)

TAU_FLOOR = 1e-8
BARTLETT_TOLERANCE = 1e-10


def as_array(x):
    """The samples of a time_series, pandas Series or array-like."""
    return np.asarray(getattr(x, 'values', x), dtype=float)


def sample_mean(x):
    return float(np.mean(as_array(x)))


def sample_autocovariance(x, h):
    """
    gamma_hat(h) = 1/n sum_{t=1}^{n-h} (x_t - mean)(x_{t+h} - mean).
    """
    x = as_array(x)
    n = x.size
    if not 0 <= h < n:
        raise ValueError('Lag h={} outside of 0..{}.'.format(h, n - 1))
    centered = x - x.mean()
    return float(np.dot(centered[:n - h], centered[h:]) / n)


def sample_autocorrelation(x, h):
    """rho_hat(h) = gamma_hat(h)/gamma_hat(0)."""
    gamma0 = sample_autocovariance(x, 0)
    if gamma0 == 0:
        raise ZeroVariance('Autocorrelation of a series with zero variance.')
    return sample_autocovariance(x, h) / gamma0


def autocovariances(x, maxlag):
    """
    Sample autocovariances gamma_hat(0..maxlag) with divisor n.

    Parameters
    ----------
    x : array-like or time_series
    maxlag : int
        Largest lag, < n.

    Returns
    -------
    ndarray

    """
    x = as_array(x)
    if not 0 <= maxlag < x.size:
        raise ValueError('maxlag={} outside of 0..{}.'.format(
            maxlag, x.size - 1))
    return acovf(x, adjusted=False, demean=True, fft=True, nlag=maxlag)


def autocorrelations(x, maxlag):
    acov = autocovariances(x, maxlag)
    if acov[0] == 0:
        raise ZeroVariance('Autocorrelation of a series with zero variance.')
    return acov / acov[0]


####################################
# generalized autocovariance class
####################################

def _identity(values, coefficients=None):
    return values[0]


def _ratio(values, coefficients=None):
    if values[1] == 0:
        raise CombinerDomain('ratio combiner: denominator is zero.')
    return values[0] / values[1]


def _linear(values, coefficients=None):
    if coefficients is None:
        coefficients = np.ones(len(values))
    return float(np.dot(coefficients, values))


def _identity_gradient(values, coefficients=None):
    return np.array([1.0])


def _ratio_gradient(values, coefficients=None):
    if values[1] == 0:
        raise CombinerDomain('ratio combiner: denominator is zero.')
    return np.array([1 / values[1], -values[0] / values[1]**2])


def _linear_gradient(values, coefficients=None):
    if coefficients is None:
        return np.ones(len(values))
    return np.asarray(coefficients, dtype=float)


# name: (function, gradient, number of arguments or None for any)
COMBINERS = {
    'identity': (_identity, _identity_gradient, 1),
    'ratio': (_ratio, _ratio_gradient, 2),
    'linear': (_linear, _linear_gradient, None),
}


class weighted_covariance_spec:
    def __init__(self, weights, combiner='identity', coefficients=None):
        """
        Weights d_p(h) and a combiner g of a generalized autocovariance.

        Parameters
        ----------
        weights : list of dict
            One dict {lag: weight} per component p. Lags may be negative,
            the support is finite.
        combiner : str, optional
            Name of the combiner g from COMBINERS: 'identity' (P = 1),
            'ratio' (P = 2) or 'linear'. The default is 'identity'.
        coefficients : list of float or None, optional
            Coefficients of the 'linear' combiner. None means all ones. The
            default is None.

        Returns
        -------
        None.

        """
        if combiner not in COMBINERS:
            raise ValueError('Combiner {} unknown, use one of {}.'.format(
                combiner, list(COMBINERS)))
        weights = [{int(lag): float(weight) for lag, weight in d.items()}
                   for d in weights]
        if not weights:
            raise ValueError('At least one weight sequence is needed.')
        arity = COMBINERS[combiner][2]
        if arity is not None and arity != len(weights):
            raise ValueError('Combiner {} takes {} components, got {}.'.format(
                combiner, arity, len(weights)))
        if coefficients is not None and len(coefficients) != len(weights):
            raise ValueError('Need one linear coefficient per component.')
        for d in weights:
            if not all(np.isfinite(list(d.values()))):
                raise ValueError('Weights must be finite.')

        self.weights = weights
        self.combiner = combiner
        self.coefficients = coefficients

    @property
    def P(self):
        return len(self.weights)

    @property
    def max_lag(self):
        return max((abs(lag) for d in self.weights for lag in d), default=0)

    def combine(self, values):
        function = COMBINERS[self.combiner][0]
        try:
            result = function(np.asarray(values, dtype=float),
                              self.coefficients)
        except ZeroDivisionError as err:
            raise CombinerDomain(str(err))
        if not np.isfinite(result):
            raise CombinerDomain('Combiner {} is not finite at {}.'.format(
                self.combiner, values))
        return float(result)

    def gradient(self, values):
        return COMBINERS[self.combiner][1](
            np.asarray(values, dtype=float), self.coefficients)

    @classmethod
    def from_dict(cls, spec):
        """
        Build from {'weights': [{'2': 1.0}, {'0': 1.0}], 'combiner': 'ratio'}.
        """
        return cls(spec['weights'], combiner=spec.get('combiner', 'identity'),
                   coefficients=spec.get('coefficients'))

    @classmethod
    def from_json(cls, path):
        with open(path, 'r') as spec_file:
            return cls.from_dict(json.load(spec_file))

    def to_dict(self):
        spec = {'weights': [{str(lag): weight for lag, weight in d.items()}
                            for d in self.weights],
                'combiner': self.combiner}
        if self.coefficients is not None:
            spec['coefficients'] = list(self.coefficients)
        return spec


def quadratic_forms(x, spec):
    """
    T_p = 1/n sum_t sum_h d_p(h) (x_t - mean)(x_{t+h} - mean), p = 1..P.
    """
    x = as_array(x)
    n = x.size
    centered = x - x.mean()
    forms = np.zeros(spec.P)
    for p, d in enumerate(spec.weights):
        for lag, weight in d.items():
            h = abs(lag)
            if h < n:
                forms[p] += weight * np.dot(centered[:n - h], centered[h:]) / n
    return forms


def generalized_autocovariance(x, spec):
    """
    g(T_1, ..., T_P) for a weighted_covariance_spec.

    Parameters
    ----------
    x : array-like or time_series
    spec : weighted_covariance_spec

    Returns
    -------
    float

    """
    return spec.combine(quadratic_forms(x, spec))


def derived_series(x, window_map, m=1):
    """
    Y_t = window_map(x_t, ..., x_{t+m-1}), t = 1..n-m+1.

    window_map receives a (n-m+1, m) array of windows and returns one row of
    results per window.
    """
    x = as_array(x)
    if not 1 <= m < x.size:
        raise ValueError('Window length m must satisfy 1 <= m < n.')
    windows = np.lib.stride_tricks.sliding_window_view(x, m)
    return np.asarray(window_map(windows), dtype=float)


def generalized_mean_statistic(x, window_map, combiner=None, m=1):
    """
    h(mean of Y_t) for the derived series Y_t of window_map.

    Parameters
    ----------
    x : array-like or time_series
    window_map : callable
        Maps the (n-m+1, m) window array to Y, shape (n-m+1,) or
        (n-m+1, k).
    combiner : callable or None, optional
        h: R^k -> R. None is the identity (k = 1). The default is None.
    m : int, optional
        Window length, m < n. The default is 1.

    Returns
    -------
    float

    """
    y = derived_series(x, window_map, m)
    y_mean = y.mean(axis=0)
    if combiner is None:
        return float(y_mean)
    try:
        result = combiner(y_mean)
    except ZeroDivisionError as err:
        raise CombinerDomain(str(err))
    if not np.all(np.isfinite(result)):
        raise CombinerDomain('Combiner is not finite at {}.'.format(y_mean))
    return result


####################################
# studentizers
####################################

def studentize_mean(x, f_hat, center=0.0, delta=1e-12):
    """
    sqrt(n) (mean - center) / sqrt(2 pi f_hat(0)).

    center is 0 for roots of the original data and the original sample mean
    for bootstrap roots.
    """
    x = as_array(x)
    f0 = f_hat.value_at_zero()
    if f0 < delta:
        logger.debug('studentize_mean: n=%d, f_hat(0)=%g', x.size, f0)
        raise FloorViolation('f_hat(0)={:.3g} below {:.3g}.'.format(f0, delta))
    return np.sqrt(x.size) * (x.mean() - center) / np.sqrt(2 * np.pi * f0)


def bartlett_se_autocorrelation(acf, h, n, tol=BARTLETT_TOLERANCE):
    """
    Bartlett standard error of rho_hat(h).

    sqrt(w_hh/n) with w_hh = sum_{k>=1} [rho(k+h) + rho(k-h) - 2 rho(h) rho(k)]^2.

    Parameters
    ----------
    acf : array-like
        Autocorrelations rho(0), rho(1), ... implied by a spectral density.
        Entries after the last one with |rho| >= tol are treated as zero.
    h : int
        Lag of the autocorrelation.
    n : int
        Sample size.
    tol : float, optional
        Truncation tolerance. The default is 1e-10.

    Returns
    -------
    float

    """
    acf = np.asarray(acf, dtype=float)
    if h == 0:
        return 0.0
    significant = np.nonzero(np.abs(acf) >= tol)[0]
    last = significant[-1] if significant.size else 0
    rho = np.zeros(last + 2 * h + 2)
    rho[:last + 1] = acf[:last + 1]
    rho_h = rho[h] if h < rho.size else 0.0
    K = min(last + h, 10 * n)
    k = np.arange(1, K + 1)
    terms = rho[k + h] + rho[np.abs(k - h)] - 2 * rho_h * rho[k]
    return float(np.sqrt(np.sum(terms**2) / n))


def symmetrized_weights(weights):
    """
    {h: (d(h) + d(-h))/2} over the lags and their reflections.

    quadratic_forms folds every lag to |h|, so a statistic only sees the
    symmetrized weights.
    """
    symmetric = {}
    for lag, weight in weights.items():
        symmetric[lag] = symmetric.get(lag, 0.0) + weight / 2
        symmetric[-lag] = symmetric.get(-lag, 0.0) + weight / 2
    return symmetric


def transfer_of_weights(weights, frequencies):
    """D(lambda) = sum_h d(h) exp(i h lambda)."""
    transfer = np.zeros(frequencies.size, dtype=complex)
    for lag, weight in weights.items():
        transfer += weight * np.exp(1j * lag * frequencies)
    return transfer


def tau_squared(f_hat, weights, kappa4, sigma2, floor=TAU_FLOOR):
    """
    Asymptotic variance of a P = 1 generalized autocovariance.

    tau^2 = (kappa4/sigma^4 - 3) (int f D)^2 + 4 pi int |f D|^2 over
    [0, 2 pi], both integrals on the grid of f_hat, clamped below at floor.

    Parameters
    ----------
    f_hat : spectral_density
    weights : dict
        {lag: d(h)} with finite support.
    kappa4 : float
        Fourth moment of the innovations.
    sigma2 : float
        Innovation variance.
    floor : float, optional
        Lower clamp. The default is 1e-8.

    Returns
    -------
    float

    """
    transfer = transfer_of_weights(weights, f_hat.frequencies)
    step = 2 * np.pi / f_hat.N
    product = f_hat.values * transfer
    first = np.real(np.sum(product)) * step
    second = np.sum(np.abs(product)**2) * step
    tau2 = (kappa4 / sigma2**2 - 3) * first**2 + 4 * np.pi * second
    return float(max(floor, tau2))


####################################
# statistics used by the bootstrap
####################################

class mean_statistic:
    name = 'mean'
    max_lag = 0
    default_studentized = True
    needs_kurtosis = False
    can_studentize = True

    def __call__(self, x):
        return sample_mean(x)

    def population_value(self, acov, mean):
        return float(mean)

    def standard_error(self, x, f_hat, **kwargs):
        """sqrt(2 pi f_hat(0) / n), the scale of studentize_mean."""
        n = as_array(x).size
        f0 = f_hat.value_at_zero()
        if f0 < kwargs.get('delta', 1e-12):
            raise FloorViolation('f_hat(0)={:.3g} too small.'.format(f0))
        return float(np.sqrt(2 * np.pi * f0 / n))


class autocorrelation_statistic:
    default_studentized = True
    needs_kurtosis = False
    can_studentize = True

    def __init__(self, lag=2):
        if lag < 0:
            raise ValueError('Lag must be non-negative.')
        self.lag = int(lag)
        self.max_lag = self.lag
        self.name = 'rho{}'.format(self.lag)

    def __call__(self, x):
        return sample_autocorrelation(x, self.lag)

    def population_value(self, acov, mean):
        return float(acov[self.lag] / acov[0])

    def standard_error(self, x, f_hat, **kwargs):
        """Bartlett standard error from the autocorrelations of f_hat."""
        n = as_array(x).size
        acov = f_hat.autocovariances(f_hat.N // 2 - 1)
        return bartlett_se_autocorrelation(acov / acov[0], self.lag, n)


class gencov_statistic:
    default_studentized = False

    def __init__(self, spec, name='gencov'):
        self.spec = spec
        self.name = name
        self.max_lag = spec.max_lag
        self.needs_kurtosis = spec.P == 1
        self.can_studentize = spec.P == 1

    def __call__(self, x):
        return generalized_autocovariance(x, self.spec)

    def population_value(self, acov, mean):
        forms = [sum(weight * acov[abs(lag)] for lag, weight in d.items())
                 for d in self.spec.weights]
        return self.spec.combine(forms)

    def standard_error(self, x, f_hat, kurtosis=3.0, **kwargs):
        """
        tau/sqrt(n) for P = 1, None otherwise (raw roots only).

        kurtosis is the standardized fourth moment kappa4/sigma^4 of the
        innovations; the identity combiner's gradient is 1.
        """
        if self.spec.P != 1:
            return None
        n = as_array(x).size
        weights = symmetrized_weights(self.spec.weights[0])
        tau2 = tau_squared(f_hat, weights, kurtosis, 1.0)
        slope = self.spec.gradient([0.0])[0]
        return float(abs(slope) * np.sqrt(tau2 / n))


class generalized_mean(mean_statistic):
    def __init__(self, window_map, combiner=None, m=1, name='genmean'):
        """
        h(mean of Y_t) bootstrapped through the derived series Y.

        The statistic is evaluated on Y = derive(x), not on x: the bootstrap
        resamples Y and applies h to the mean of every pseudo series. Y must
        be scalar valued (k = 1).

        Parameters
        ----------
        window_map : callable
            See derived_series.
        combiner : callable or None, optional
            Scalar h. None is the identity, the only case with a
            studentizer. The default is None.
        m : int, optional
            Window length. The default is 1.
        name : str, optional
            The default is 'genmean'.

        Returns
        -------
        None.

        """
        self.window_map = window_map
        self.combiner = combiner
        self.m = int(m)
        self.name = name
        self.can_studentize = combiner is None
        self.default_studentized = combiner is None

    def derive(self, x):
        y = derived_series(x, self.window_map, self.m)
        if y.ndim != 1:
            raise ValueError('The bootstrap needs a scalar derived series, '
                             'got shape {}.'.format(y.shape))
        return y

    def __call__(self, y):
        return self.population_value(None, sample_mean(y))

    def population_value(self, acov, mean):
        if self.combiner is None:
            return float(mean)
        try:
            result = self.combiner(mean)
        except ZeroDivisionError as err:
            raise CombinerDomain(str(err))
        if not np.isfinite(result):
            raise CombinerDomain('Combiner is not finite at {}.'.format(mean))
        return float(result)


def lag_moment(h):
    """Uncentered lag-h moment, the mean of Y_t = x_t x_{t+h}."""
    if h < 0:
        raise ValueError('Lag must be non-negative.')
    return generalized_mean(lambda w: w[:, 0] * w[:, -1], m=h + 1,
                            name='moment{}'.format(h))


def statistic_from_name(name):
    """
    Statistic object from its command line name.

    'mean', 'rho<h>' (e.g. 'rho2'), 'moment<h>' (uncentered lag-h moment,
    bootstrapped through x_t x_{t+h}) or 'gencov:<path to spec json>'.
    """
    if name == 'mean':
        return mean_statistic()
    if name.startswith('rho') and name[3:].isdigit():
        return autocorrelation_statistic(int(name[3:]))
    if name.startswith('moment') and name[6:].isdigit():
        return lag_moment(int(name[6:]))
    if name.startswith('gencov:'):
        return gencov_statistic(weighted_covariance_spec.from_json(name[7:]))
    raise ValueError('Statistic {} unknown.'.format(name))
