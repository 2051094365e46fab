# -*- coding: utf-8 -*-
"""
Nonparametric and parametric spectral density estimators.

All estimators return a strictly positive, symmetric spectral_density on a
frequency_grid: values below max(1e-6 * max, 1e-12) are clamped. The tuning
that was actually used (selected orders, cross-validated bandwidths) is
stored in the density's tuning dict so that the same estimator can be rerun
with frozen tuning on bootstrap series, see estimate_like.
"""

import logging

import numpy as np
from scipy.signal import lfilter
from scipy.signal.windows import bartlett, gaussian
from statsmodels.tsa.stattools import levinson_durbin

from .exceptions import DegenerateSeries
from .factorization import factorize, wold_model
from .spectral_density import (frequency_grid, spectral_density,
                               positivity_floor, DEFAULT_GRID_SIZE)
from .statistics import as_array, autocovariances, autocorrelations

logger = logging.getLogger(__name__)

MIN_SERIES_LENGTH = 8
LAG_WINDOWS = ['bartlett', 'gaussian', 'trapezoid']


class time_series:
    def __init__(self, x, centered=False):
        """
        Finite sequence of real observations x_1..x_n.

        Parameters
        ----------
        x : array-like
            The observations. At least 8 finite values.
        centered : bool, optional
            Whether the values were mean-centered already. Metadata only. The
            default is False.

        Returns
        -------
        None.

        """
        values = as_array(x)
        if values.ndim != 1:
            raise ValueError('A time series must be one dimensional.')
        if values.size < MIN_SERIES_LENGTH:
            raise ValueError('A time series needs at least {} values, got '
                             '{}.'.format(MIN_SERIES_LENGTH, values.size))
        if not np.all(np.isfinite(values)):
            raise ValueError('Time series values must be finite.')
        self.values = values
        self.centered = centered

    @property
    def n(self):
        return self.values.size

    def __len__(self):
        return self.values.size

    def __repr__(self):
        return 'time_series(n={})'.format(self.n)

    def mean(self):
        return float(self.values.mean())

    def centered_values(self):
        return self.values - self.values.mean()


def _as_series(x):
    return x if isinstance(x, time_series) else time_series(x)


def _as_grid(grid):
    if grid is None:
        return frequency_grid(DEFAULT_GRID_SIZE)
    if isinstance(grid, frequency_grid):
        return grid
    return frequency_grid(grid)


def _finish(values, grid, family, tuning):
    # exact reflection symmetry, then the positivity clamp
    values = 0.5 * (values + values[grid.mirror_index()])
    floor = positivity_floor(values)
    values = np.maximum(values, floor)
    return spectral_density(values, grid=grid, family=family, tuning=tuning,
                            floor=floor)


####################################
# periodograms
####################################

def periodogram(x, grid=None):
    """
    Raw periodogram I(lambda_j) = |sum_t (x_t - mean) e^{-i t lambda_j}|^2
    / (2 pi n) on the grid.

    The DFT is zero-padded to N points, or folded onto N points when N < n.

    Parameters
    ----------
    x : array-like or time_series
    grid : frequency_grid, int or None, optional
        None uses the default grid of 8192 points. The default is None.

    Returns
    -------
    ndarray

    """
    series = _as_series(x)
    grid = _as_grid(grid)
    centered = series.centered_values()
    n = series.n
    if n > grid.N:
        # exp(-i t lambda_j) is N-periodic in t
        padded = np.zeros(-(-n // grid.N) * grid.N)
        padded[:n] = centered
        centered = padded.reshape(-1, grid.N).sum(axis=0)
    transform = np.fft.fft(centered, grid.N)
    return np.abs(transform)**2 / (2 * np.pi * n)


def periodogram_estimate(x, grid=None):
    """The clamped raw periodogram as a spectral_density."""
    grid = _as_grid(grid)
    return _finish(periodogram(x, grid), grid, 'periodogram-raw', {})


def fourier_periodogram(x):
    """
    Periodogram at the Fourier frequencies 2 pi k/n of the data.

    Returns
    -------
    tuple of ndarray
        Frequencies and periodogram ordinates for k = 1..n-1. The zero
        frequency ordinate vanishes after centering and is left out.

    """
    series = _as_series(x)
    n = series.n
    ordinates = np.abs(np.fft.fft(series.centered_values()))**2 / (2 * np.pi * n)
    frequencies = 2 * np.pi * np.arange(n) / n
    return frequencies[1:], ordinates[1:]


####################################
# lag window estimator
####################################

def lag_window(kernel, truncation):
    """
    Weights w(h/T) for h = 0..T.

    bartlett is 1 - |u|, gaussian is exp(-u^2 / (2 (1/3)^2)), trapezoid is 1
    for |u| <= 1/2 falling linearly to 0 at |u| = 1.
    """
    T = int(truncation)
    if T < 1:
        raise ValueError('Truncation must be at least 1.')
    if kernel == 'bartlett':
        return bartlett(2 * T + 1)[T:]
    elif kernel == 'gaussian':
        return gaussian(2 * T + 1, std=T / 3)[T:]
    elif kernel == 'trapezoid':
        u = np.arange(T + 1) / T
        return np.clip(2 * (1 - u), 0, 1)
    else:
        raise ValueError('Lag window {} unknown, use one of {}.'.format(
            kernel, LAG_WINDOWS))


def lag_window_estimate(x, kernel='bartlett', truncation=None, grid=None):
    """
    Lag window estimator f(lambda) = 1/(2 pi) sum_{|h|<=T} w(h/T)
    gamma_hat(h) e^{-i h lambda}.

    Parameters
    ----------
    x : array-like or time_series
    kernel : str, optional
        'bartlett', 'gaussian' or 'trapezoid'. The default is 'bartlett'.
    truncation : int or None, optional
        T with 1 <= T < n and T < N/2. None selects 2*m with m from
        politis_truncation. The default is None.
    grid : frequency_grid, int or None, optional
        The default is None, the default grid.

    Returns
    -------
    spectral_density

    """
    series = _as_series(x)
    grid = _as_grid(grid)
    if autocovariances(series.values, 0)[0] == 0:
        raise DegenerateSeries('Lag window estimate of a constant series.')
    if truncation is None:
        truncation = min(2 * politis_truncation(series), series.n - 1)
    T = int(truncation)
    if not 1 <= T < series.n:
        raise ValueError('Truncation T={} outside of 1..{}.'.format(
            T, series.n - 1))
    if T >= grid.N // 2:
        raise ValueError('Truncation T={} needs a grid with N > {}.'.format(
            T, 2 * T))

    weighted = lag_window(kernel, T) * autocovariances(series.values, T)
    coefs = np.zeros(grid.N)
    coefs[:T + 1] = weighted
    coefs[grid.N - T:] = weighted[:0:-1]
    values = np.real(np.fft.fft(coefs)) / (2 * np.pi)
    if np.any(values <= 0):
        logger.debug('Lag window estimate clamped at %d of %d frequencies',
                    int(np.sum(values <= 0)), grid.N)
    return _finish(values, grid, 'lag-window',
                   {'kernel': kernel, 'truncation': T})


def politis_truncation(x, c=2.0, K=None):
    """
    Data-driven bandwidth m from the empirical autocorrelations.

    m is the smallest lag after which K consecutive |rho_hat| stay below
    c*sqrt(log10(n)/n), with K = max(5, ceil(sqrt(log10 n))). The result is
    clipped to [1, n/4].

    Parameters
    ----------
    x : array-like or time_series
        At least 32 values.
    c : float, optional
        The default is 2.0.
    K : int or None, optional
        The default is None, the rule above.

    Returns
    -------
    int

    """
    series = _as_series(x)
    n = series.n
    if n < 32:
        raise ValueError('Bandwidth selection needs n >= 32, got {}.'.format(n))
    bound = c * np.sqrt(np.log10(n) / n)
    if K is None:
        K = max(5, int(np.ceil(np.sqrt(np.log10(n)))))
    cap = n // 4
    maxlag = min(cap + K, n - 1)
    small = np.abs(autocorrelations(series.values, maxlag)) < bound
    for m in range(cap + 1):
        if np.all(small[m + 1:m + K + 1]):
            return max(m, 1)
    return cap


####################################
# smoothed periodogram
####################################

def _circular_distance(a, b):
    d = np.abs(a[:, None] - b[None, :]) % (2 * np.pi)
    return np.minimum(d, 2 * np.pi - d)


def _kernel_smooth(out_frequencies, in_frequencies, ordinates, bandwidth,
                   leave_out=False, chunk=512):
    # Gaussian Nadaraya-Watson average on the circle; leave_out drops the
    # ordinate at the same index (out and in frequencies coincide then)
    result = np.empty(out_frequencies.size)
    for start in range(0, out_frequencies.size, chunk):
        stop = min(start + chunk, out_frequencies.size)
        d = _circular_distance(out_frequencies[start:stop], in_frequencies)
        exponent = -0.5 * (d / bandwidth)**2
        if leave_out:
            rows = np.arange(stop - start)
            exponent[rows, rows + start] = -np.inf
        exponent -= exponent.max(axis=1, keepdims=True)
        weights = np.exp(exponent)
        result[start:stop] = weights @ ordinates / weights.sum(axis=1)
    return result


def smoothed_periodogram(x, bandwidth=None, grid=None, kernel='gaussian'):
    """
    Kernel-smoothed periodogram.

    The periodogram ordinates at the data's Fourier frequencies (zero
    frequency excluded) are averaged with Gaussian weights of the circular
    distance to each grid frequency.

    Parameters
    ----------
    x : array-like or time_series
    bandwidth : float or None, optional
        Kernel standard deviation in radians, > 0. None selects it with
        crossvalidate_bandwidth. The default is None.
    grid : frequency_grid, int or None, optional
        The default is None, the default grid.
    kernel : str, optional
        Only 'gaussian'. The default is 'gaussian'.

    Returns
    -------
    spectral_density

    """
    if kernel != 'gaussian':
        raise ValueError('Smoothing kernel {} unknown, use gaussian.'.format(
            kernel))
    series = _as_series(x)
    grid = _as_grid(grid)
    if bandwidth is None:
        bandwidth = crossvalidate_bandwidth(series)
    if not bandwidth > 0:
        raise ValueError('Bandwidth must be positive.')
    frequencies, ordinates = fourier_periodogram(series)
    if np.all(ordinates == 0):
        raise DegenerateSeries('Periodogram of a constant series.')
    values = _kernel_smooth(grid.frequencies, frequencies, ordinates,
                            bandwidth)
    return _finish(values, grid, 'smoothed-periodogram',
                   {'bandwidth': float(bandwidth), 'kernel': kernel})


def crossvalidate_bandwidth(x, candidates=None):
    """
    Smoothing bandwidth by leave-one-out Whittle likelihood.

    Minimizes sum_j I_j / f_{-j} + log f_{-j} over the candidates, where
    f_{-j} is the smoothed periodogram at the j-th Fourier frequency without
    the j-th ordinate. Ties go to the smaller bandwidth.

    Parameters
    ----------
    x : array-like or time_series
    candidates : array-like or None, optional
        Bandwidths in radians. None uses 16 values geometrically spaced
        between 2 pi/n and pi/2. The default is None.

    Returns
    -------
    float

    """
    series = _as_series(x)
    if candidates is None:
        candidates = np.geomspace(2 * np.pi / series.n, np.pi / 2, 16)
    candidates = np.sort(np.asarray(candidates, dtype=float))
    frequencies, ordinates = fourier_periodogram(series)
    if np.all(ordinates == 0):
        raise DegenerateSeries('Periodogram of a constant series.')

    scores = np.empty(candidates.size)
    for i, bandwidth in enumerate(candidates):
        fitted = _kernel_smooth(frequencies, frequencies, ordinates,
                                bandwidth, leave_out=True)
        if np.any(fitted <= 0):
            scores[i] = np.inf
            continue
        scores[i] = np.sum(ordinates / fitted + np.log(fitted))
    best = candidates[int(np.argmin(scores))]
    logger.debug('Cross-validated bandwidth %.4g from scores %s', best, scores)
    return float(best)


####################################
# autoregressive estimators
####################################

class ar_fit:
    def __init__(self, phi, sigma2, residuals, mean):
        """
        Yule-Walker AR(p) fit.

        Parameters
        ----------
        phi : array-like
            phi_1..phi_p, possibly empty.
        sigma2 : float
            Yule-Walker innovation variance.
        residuals : ndarray
            e_t = (x_t - mean) - sum_j phi_j (x_{t-j} - mean), t > p.
        mean : float
            Sample mean of the fitted series.

        Returns
        -------
        None.

        """
        self.phi = np.atleast_1d(np.asarray(phi, dtype=float))
        self.sigma2 = float(sigma2)
        self.residuals = np.asarray(residuals, dtype=float)
        self.mean = float(mean)

    @property
    def order(self):
        return self.phi.size

    def __repr__(self):
        return 'ar_fit(p={}, sigma2={:.6g})'.format(self.order, self.sigma2)

    def inverse_gain(self, grid):
        """|1 - sum_j phi_j e^{-i j lambda}|^{-2} on the grid."""
        polynomial = np.zeros(grid.N)
        polynomial[0] = 1.0
        polynomial[1:self.order + 1] = -self.phi[:grid.N - 1]
        return 1 / np.abs(np.fft.fft(polynomial))**2

    def wold_model(self, M=None):
        return wold_model.from_ar(self.phi, self.sigma2, M=M)


def _levinson(acov, pmax):
    # innovation variances sigma2[p] and coefficient lists for p = 0..pmax
    sigma2 = np.empty(pmax + 1)
    sigma2[0] = acov[0]
    coefs = [np.zeros(0)]
    if pmax == 0:
        return sigma2, coefs
    with np.errstate(divide='ignore', invalid='ignore'):
        _, _, _, sig, phi = levinson_durbin(acov[:pmax + 1], nlags=pmax,
                                            isacov=True)
    # statsmodels leaves sig[0] at zero
    sigma2[1:] = sig[1:]
    coefs += [phi[1:p + 1, p].copy() for p in range(1, pmax + 1)]
    return sigma2, coefs


def default_max_order(n):
    """min(20, ceil(10 log10 n)), kept below n/2."""
    return int(min(20, np.ceil(10 * np.log10(n)), (n - 1) // 2))


def select_order_aic(x, pmax=None):
    """
    AR order minimizing n log(sigma2_p) + 2p over p = 0..pmax.

    Parameters
    ----------
    x : array-like or time_series
    pmax : int or None, optional
        Largest order, < n/2. None uses min(20, ceil(10 log10 n)). The
        default is None.

    Returns
    -------
    int
        The selected order; ties go to the smaller order.

    """
    series = _as_series(x)
    n = series.n
    pmax = default_max_order(n) if pmax is None else int(pmax)
    if not 0 <= pmax < n / 2:
        raise ValueError('pmax={} outside of 0..{}.'.format(pmax, (n - 1) // 2))
    acov = autocovariances(series.values, pmax)
    if acov[0] == 0:
        raise DegenerateSeries('AR fit of a series with zero variance.')
    sigma2, _ = _levinson(acov, pmax)
    with np.errstate(divide='ignore', invalid='ignore'):
        aic = np.where(sigma2 > 0, n * np.log(sigma2) + 2 * np.arange(pmax + 1),
                       np.inf)
    aic[~np.isfinite(aic)] = np.inf
    return int(np.argmin(aic))


def fit_ar(x, order='aic', pmax=None):
    """
    Yule-Walker AR fit with a fixed order or the AIC order.

    Parameters
    ----------
    x : array-like or time_series
    order : int or 'aic', optional
        The default is 'aic'.
    pmax : int or None, optional
        Largest order considered by AIC. The default is None.

    Returns
    -------
    ar_fit

    """
    series = _as_series(x)
    if order == 'aic':
        p = select_order_aic(series, pmax)
    else:
        p = int(order)
        if not 0 <= p < series.n / 2:
            raise ValueError('AR order {} outside of 0..{}.'.format(
                p, (series.n - 1) // 2))
    acov = autocovariances(series.values, p)
    if acov[0] == 0:
        raise DegenerateSeries('AR fit of a series with zero variance.')
    sigma2, coefs = _levinson(acov, p)
    if not sigma2[p] > 0:
        raise DegenerateSeries(
            'Yule-Walker innovation variance {:.3g} at order {}.'.format(
                sigma2[p], p))
    phi = coefs[p]
    residuals = lfilter(np.concatenate(([1.0], -phi)), [1.0],
                        series.centered_values())[p:]
    logger.debug('AR(%d) fit with sigma2 %.6g', p, sigma2[p])
    return ar_fit(phi, sigma2[p], residuals, series.mean())


def ar_spectral_estimate(x, order='aic', grid=None, pmax=None):
    """
    Parametric AR spectral density sigma2/(2 pi) |1 - sum phi_j
    e^{-i j lambda}|^{-2}.

    Returns
    -------
    tuple
        The spectral_density and the ar_fit.

    """
    grid = _as_grid(grid)
    fit = fit_ar(x, order=order, pmax=pmax)
    values = fit.sigma2 / (2 * np.pi) * fit.inverse_gain(grid)
    density = _finish(values, grid, 'ar-parametric', {'order': fit.order})
    density.components['ar_fit'] = fit
    return density, fit


def prewhitened_estimate(x, grid=None, order='aic', bandwidth=None, pmax=None):
    """
    AR pre-whitening followed by a smoothed periodogram of the residuals.

    f(lambda) = f_e(lambda) |1 - sum phi_j e^{-i j lambda}|^{-2}, where f_e
    is the smoothed residual periodogram.

    Parameters
    ----------
    x : array-like or time_series
    grid : frequency_grid, int or None, optional
    order : int or 'aic', optional
        The pre-whitening AR order. The default is 'aic'.
    bandwidth : float or None, optional
        Residual smoothing bandwidth; None cross-validates. The default is
        None.
    pmax : int or None, optional

    Returns
    -------
    spectral_density
        components hold 'ar_fit' and 'residual_density'.

    """
    grid = _as_grid(grid)
    fit = fit_ar(x, order=order, pmax=pmax)
    residual_density = smoothed_periodogram(fit.residuals, bandwidth=bandwidth,
                                            grid=grid)
    values = residual_density.values * fit.inverse_gain(grid)
    density = _finish(values, grid, 'pre-whitened',
                      {'order': fit.order,
                       'bandwidth': residual_density.tuning['bandwidth']})
    density.components['ar_fit'] = fit
    density.components['residual_density'] = residual_density
    return density


def prewhitened_arma_models(f):
    """
    ARMA split of a pre-whitened estimate.

    Returns
    -------
    tuple
        The wold_model of the residual density (MA part, with its innovation
        variance) and the pre-whitening AR coefficients phi.

    """
    if f.family != 'pre-whitened' or 'residual_density' not in f.components:
        raise ValueError('ARMA split needs a pre-whitened estimate, got {}.'
                         .format(f.family))
    return factorize(f.components['residual_density']), \
        f.components['ar_fit'].phi


####################################
# cepstral thresholding
####################################

def _cepstrum_on_grid(a, N):
    # log f(lambda_j) = sum_k a_k e^{i k lambda_j} with k in (-n/2, n/2], the
    # Nyquist coefficient split evenly between +-n/2
    n = a.size
    k = np.arange(n)
    signed = np.where(k <= n // 2, k, k - n)
    coefs = a.copy()
    if n % 2 == 0:
        signed = np.append(signed, -(n // 2))
        coefs[n // 2] *= 0.5
        coefs = np.append(coefs, coefs[n // 2])
    folded = np.zeros(N)
    np.add.at(folded, signed % N, coefs)
    return np.real(np.fft.fft(folded))


def cepstral_threshold_estimate(x, grid=None, threshold=None,
                                bias_correction=True):
    """
    Cepstral thresholding estimator.

    The cepstrum of the clamped log periodogram at the Fourier frequencies
    2 pi k/n is hard-thresholded and transformed back. The zero frequency
    ordinate is replaced by the first one.

    Parameters
    ----------
    x : array-like or time_series
    grid : frequency_grid, int or None, optional
    threshold : float or None, optional
        Coefficients a_k, k >= 1, with |a_k| below threshold are set to 0.
        None uses 2*sqrt(2/n). The default is None.
    bias_correction : bool, optional
        Add Euler's constant to a_0, removing the mean of the log of an
        exponential periodogram ordinate. The default is True.

    Returns
    -------
    spectral_density

    """
    series = _as_series(x)
    grid = _as_grid(grid)
    n = series.n
    if threshold is None:
        threshold = 2 * np.sqrt(2 / n)
    ordinates = np.abs(np.fft.fft(series.centered_values()))**2 / (2 * np.pi * n)
    if np.all(ordinates == 0):
        raise DegenerateSeries('Periodogram of a constant series.')
    ordinates[0] = ordinates[1]
    ordinates = np.maximum(ordinates, positivity_floor(ordinates))

    cepstrum = np.real(np.fft.fft(np.log(ordinates))) / n
    if bias_correction:
        cepstrum[0] += np.euler_gamma
    kept = np.abs(cepstrum) >= threshold
    kept[0] = True
    cepstrum[~kept] = 0.0
    logger.debug('Cepstral threshold %.4g keeps %d of %d coefficients',
                 threshold, int(kept.sum()), n)
    values = np.exp(_cepstrum_on_grid(cepstrum, grid.N))
    return _finish(values, grid, 'cepstral-threshold',
                   {'threshold': float(threshold),
                    'bias_correction': bool(bias_correction)})


####################################
# dispatch
####################################

# command line names of the estimators and their families
ESTIMATORS = {
    'lag-window': 'lag-window',
    'smoothed': 'smoothed-periodogram',
    'ar': 'ar-parametric',
    'prewhiten': 'pre-whitened',
    'cepstrum': 'cepstral-threshold',
    'periodogram': 'periodogram-raw',
}


def estimate_spectrum(x, estimator='prewhiten', grid=None, **tuning):
    """
    Estimate a spectral density by estimator name.

    Parameters
    ----------
    x : array-like or time_series
    estimator : str, optional
        One of 'lag-window', 'smoothed', 'ar', 'prewhiten', 'cepstrum' and
        'periodogram'. The default is 'prewhiten'.
    grid : frequency_grid, int or None, optional
    **tuning
        Estimator specific keywords: kernel and truncation (lag-window),
        bandwidth (smoothed, prewhiten), order and pmax (ar, prewhiten),
        threshold and bias_correction (cepstrum). None values are dropped.

    Returns
    -------
    spectral_density

    """
    tuning = {key: value for key, value in tuning.items() if value is not None}
    if estimator == 'lag-window':
        return lag_window_estimate(x, grid=grid, **tuning)
    elif estimator == 'smoothed':
        return smoothed_periodogram(x, grid=grid, **tuning)
    elif estimator == 'ar':
        return ar_spectral_estimate(x, grid=grid, **tuning)[0]
    elif estimator == 'prewhiten':
        return prewhitened_estimate(x, grid=grid, **tuning)
    elif estimator == 'cepstrum':
        return cepstral_threshold_estimate(x, grid=grid, **tuning)
    elif estimator == 'periodogram':
        return periodogram_estimate(x, grid=grid)
    else:
        raise ValueError('Estimator {} unknown, use one of {}.'.format(
            estimator, list(ESTIMATORS)))


def estimator_name(family):
    for name, estimator_family in ESTIMATORS.items():
        if estimator_family == family:
            return name
    raise ValueError('Family {} has no estimator.'.format(family))


def estimate_like(x, template, grid=None):
    """
    Rerun the estimator of template on x with its tuning frozen.

    Selected AR orders and bandwidths are reused instead of being selected
    again, the grid defaults to the template's grid.
    """
    grid = template.grid if grid is None else grid
    return estimate_spectrum(x, estimator_name(template.family), grid=grid,
                             **template.tuning)
