# -*- coding: utf-8 -*-
"""
Factorization of a spectral density into Wold MA and AR coefficients.

The cepstral coefficients a_k of log f drive two recursions, one for the
coefficients c_k of the one-sided MA (Wold) representation and one for the
coefficients b_k of the AR representation. The innovation variance is
2*pi*exp(a_0).
"""

import logging

import numpy as np
import pandas as pd
from scipy.signal import correlate, lfilter

from .exceptions import NonPositiveDensity, GridTooCoarse
from .spectral_density import spectral_density

logger = logging.getLogger(__name__)

TRIM_TOLERANCE = 1e-10


class cepstral_sequence:
    def __init__(self, a):
        """
        Fourier coefficients a_0..a_K of log f.

        Parameters
        ----------
        a : array-like
            Real coefficients, a[k] = a_k. a_{-k} = a_k is implied.

        Returns
        -------
        None.

        """
        a = np.asarray(a, dtype=float)
        if a.ndim != 1 or a.size == 0:
            raise ValueError('Cepstral coefficients must be a non-empty 1D '
                             'sequence.')
        if not np.all(np.isfinite(a)):
            raise ValueError('Cepstral coefficients must be finite.')
        self.a = a

    @property
    def K(self):
        return self.a.size - 1

    def __getitem__(self, k):
        return self.a[k]

    def __len__(self):
        return self.a.size


class wold_model:
    def __init__(self, ma, ar, sigma2):
        """
        The generative object of the bootstrap.

        Parameters
        ----------
        ma : array-like
            MA coefficients c_0..c_M with c_0 = 1.
        ar : array-like
            AR coefficients b_0..b_M' with b_0 = -1. The AR representation is
            X_t = sum_{k>=1} b_k X_{t-k} + eps_t.
        sigma2 : float
            Innovation variance, > 0.

        Returns
        -------
        None.

        """
        ma = np.atleast_1d(np.asarray(ma, dtype=float))
        ar = np.atleast_1d(np.asarray(ar, dtype=float))
        if ma[0] != 1:
            raise ValueError('MA coefficients must start with c_0 = 1.')
        if ar[0] != -1:
            raise ValueError('AR coefficients must start with b_0 = -1.')
        if not (np.all(np.isfinite(ma)) and np.all(np.isfinite(ar))):
            raise ValueError('Wold coefficients must be finite.')
        if not sigma2 > 0:
            raise ValueError('Innovation variance must be positive.')

        self.ma = ma
        self.ar = ar
        self.sigma2 = float(sigma2)

    @property
    def M(self):
        return max(self.ma.size, self.ar.size) - 1

    def __repr__(self):
        return 'wold_model(len(ma)={}, len(ar)={}, sigma2={:.6g})'.format(
            self.ma.size, self.ar.size, self.sigma2)

    @classmethod
    def from_ar(cls, phi, sigma2, M=None, trim=True):
        """
        Exact Wold model of a causal AR(p) process.

        The AR coefficients are phi themselves, the MA coefficients are the
        impulse response of 1/(1 - sum phi_j z^j).

        Parameters
        ----------
        phi : array-like
            AR parameters phi_1..phi_p, possibly empty.
        sigma2 : float
            Innovation variance.
        M : int or None, optional
            Length of the MA sequence. None uses max(4096, 10*p) and trims
            the negligible tail. The default is None.
        trim : bool, optional
            Drop the negligible MA tail. The default is True.

        Returns
        -------
        wold_model

        """
        phi = np.atleast_1d(np.asarray(phi, dtype=float))
        if M is None:
            M = max(4096, 10 * phi.size)
        impulse = np.zeros(M + 1)
        impulse[0] = 1.0
        ma = lfilter([1.0], np.concatenate(([1.0], -phi)), impulse)
        if trim:
            ma = trim_tail(ma)
        return cls(ma, np.concatenate(([-1.0], phi)), sigma2)

    def trimmed(self, tol=TRIM_TOLERANCE):
        return wold_model(trim_tail(self.ma, tol), trim_tail(self.ar, tol),
                          self.sigma2)

    def ar_parameters(self):
        """phi_k = b_k for k >= 1, the coefficients used in AR recursions."""
        return self.ar[1:]

    def to_frame(self):
        """Coefficient table with columns k, c_k, b_k (zero padded)."""
        size = self.M + 1
        ma = np.zeros(size)
        ar = np.zeros(size)
        ma[:self.ma.size] = self.ma
        ar[:self.ar.size] = self.ar
        return pd.DataFrame({'k': np.arange(size), 'c_k': ma, 'b_k': ar})


def trim_tail(coefs, tol=TRIM_TOLERANCE):
    """
    Drop trailing coefficients whose cumulative absolute tail is below tol.

    The leading coefficient is always kept.
    """
    coefs = np.asarray(coefs, dtype=float)
    tail = np.cumsum(np.abs(coefs)[::-1])[::-1]
    keep = np.nonzero(tail >= tol)[0]
    last = keep[-1] if keep.size else 0
    return coefs[:max(last, 0) + 1]


def cepstral_coefficients(f, K=None):
    """
    Fourier coefficients of log f by the discrete transform on the grid.

    Parameters
    ----------
    f : spectral_density
        Strictly positive density.
    K : int or None, optional
        Largest index returned, K < N/2. None means N/2 - 1. The default is
        None.

    Returns
    -------
    cepstral_sequence

    """
    N = f.N
    if K is None:
        K = N // 2 - 1
    if K < 0:
        raise ValueError('K must be non-negative.')
    if K >= N // 2:
        raise GridTooCoarse(
            'K={} cepstral coefficients need a grid with N > {}, got '
            'N={}.'.format(K, 2 * K, N))
    if not f.is_positive():
        raise NonPositiveDensity(
            'Spectral density has {} grid values <= 0 (min {:.3g}).'.format(
                int(np.sum(f.values <= 0)), float(np.min(f.values))))

    a = np.real(np.fft.fft(np.log(f.values))) / N
    return cepstral_sequence(a[:K + 1])


def _cepstral_recursion(a, M, sign):
    # c_{k+1} = sum_{j=0}^{k} (1 - j/(k+1)) a_{k+1-j} c_j with c_0 = 1; the AR
    # recursion is the same with a -> -a and a final sign flip (b_0 = -1)
    a = np.asarray(a, dtype=float)
    if M < 1:
        raise ValueError('M must be at least 1.')
    if a.size < M + 1:
        raise ValueError(
            'Need cepstral coefficients up to index {}, got {}.'.format(
                M, a.size - 1))
    a = sign * a
    coefs = np.zeros(M + 1)
    coefs[0] = 1.0
    for k in range(M):
        j = np.arange(k + 1)
        weights = 1.0 - j / (k + 1.0)
        coefs[k + 1] = np.dot(weights * a[k + 1:0:-1], coefs[:k + 1])
    return coefs


def ma_coefficients(a, M):
    """
    MA (Wold) coefficients c_0..c_M from cepstral coefficients.

    Parameters
    ----------
    a : cepstral_sequence or array-like
        Cepstral coefficients with indices up to M.
    M : int
        Number of coefficients after c_0, M >= 1.

    Returns
    -------
    ndarray
        c_0 = 1, c_1, ..., c_M.

    """
    a = a.a if isinstance(a, cepstral_sequence) else a
    return _cepstral_recursion(a, M, 1.0)


def ar_coefficients(a, M):
    """
    AR coefficients b_0..b_M from cepstral coefficients, b_0 = -1.

    Parameters
    ----------
    a : cepstral_sequence or array-like
        Cepstral coefficients with indices up to M.
    M : int
        Number of coefficients after b_0, M >= 1.

    Returns
    -------
    ndarray
        b_0 = -1, b_1, ..., b_M.

    """
    a = a.a if isinstance(a, cepstral_sequence) else a
    return -_cepstral_recursion(a, M, -1.0)


def innovation_variance(a0):
    """sigma^2 = 2*pi*exp(a_0)."""
    if not np.isfinite(a0):
        raise ValueError('a0 must be finite.')
    return 2 * np.pi * np.exp(a0)


def factorize(f, M=None, trim=True, tol=TRIM_TOLERANCE):
    """
    Wold model of a strictly positive spectral density.

    Parameters
    ----------
    f : spectral_density
        Strictly positive density on its grid.
    M : int or None, optional
        Number of MA and AR coefficients after the leading one, M < N/2.
        None uses N/2 - 1. The default is None.
    trim : bool, optional
        Drop trailing coefficients whose cumulative absolute tail is below
        tol. The default is True.
    tol : float, optional
        Trimming tolerance. The default is 1e-10.

    Returns
    -------
    wold_model

    """
    if M is None:
        M = f.N // 2 - 1
    a = cepstral_coefficients(f, K=M)
    model = wold_model(ma_coefficients(a, M), ar_coefficients(a, M),
                       innovation_variance(a[0]))
    if trim:
        model = model.trimmed(tol)
        logger.debug('Trimmed Wold model to %d MA and %d AR coefficients',
                     model.ma.size, model.ar.size)
    return model


def reconstruct_density(w, grid):
    """
    Spectral density of the Wold model on a grid.

    f(lambda_j) = sigma^2/(2*pi) * |sum_k c_k exp(-i*k*lambda_j)|^2.

    Parameters
    ----------
    w : wold_model
    grid : frequency_grid

    Returns
    -------
    spectral_density

    """
    ma = w.ma
    if ma.size > grid.N:
        # exp(-i k lambda_j) is N-periodic in k
        padded = np.zeros(-(-ma.size // grid.N) * grid.N)
        padded[:ma.size] = ma
        ma = padded.reshape(-1, grid.N).sum(axis=0)
    transfer = np.fft.fft(ma, grid.N)
    values = w.sigma2 / (2 * np.pi) * np.abs(transfer)**2
    return spectral_density(values, grid=grid, family='reconstructed')


def implied_autocovariance(w, maxlag):
    """
    Autocovariances gamma(h) = sigma^2 * sum_j c_j c_{j+h}, h = 0..maxlag.
    """
    if maxlag < 0:
        raise ValueError('maxlag must be non-negative.')
    ma = w.ma
    M = ma.size - 1
    products = correlate(ma, ma, mode='full')[M:]
    acov = np.zeros(maxlag + 1)
    upto = min(maxlag, M) + 1
    acov[:upto] = w.sigma2 * products[:upto]
    return acov


def convolution_check(w, K):
    """
    sum_{j=0}^{k} (-b_j) c_{k-j} for k = 0..K.

    Equals 1 at k = 0 and 0 afterwards when C(z)^-1 = B(z).
    """
    ma = np.zeros(K + 1)
    ar = np.zeros(K + 1)
    ma[:min(K + 1, w.ma.size)] = w.ma[:K + 1]
    ar[:min(K + 1, w.ar.size)] = w.ar[:K + 1]
    return np.convolve(-ar, ma)[:K + 1]
