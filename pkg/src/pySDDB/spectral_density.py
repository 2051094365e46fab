# -*- coding: utf-8 -*-
"""
Provides the frequency grid and the spectral density container.

Every estimator in pySDDB returns a spectral_density and every
factorization starts from one.
"""

import numpy as np
import pandas as pd

DEFAULT_GRID_SIZE = 8192


def positivity_floor(values):
    """
    Lower clamp used by all estimators.

    Parameters
    ----------
    values : ndarray
        Unclamped spectral density values.

    Returns
    -------
    float
        max(1e-6 * max(values), 1e-12).

    """
    return max(1e-6 * float(np.max(values)), 1e-12)


class frequency_grid:
    def __init__(self, N=DEFAULT_GRID_SIZE):
        """
        Initialize the symmetric Fourier grid lambda_j = 2*pi*j/N.

        Parameters
        ----------
        N : int, optional
            The number of grid points. Must be even and at least 4. Powers of
            two are fastest. The default is 8192.

        Returns
        -------
        None.

        """
        if int(N) != N or N < 4 or N % 2:
            raise ValueError(
                'Grid size N must be an even integer >= 4, got {}.'.format(N))
        self.N = int(N)
        self.frequencies = 2 * np.pi * np.arange(self.N) / self.N

    def __len__(self):
        return self.N

    def __eq__(self, other):
        return isinstance(other, frequency_grid) and other.N == self.N

    def __hash__(self):
        return hash(self.N)

    def __repr__(self):
        return 'frequency_grid(N={})'.format(self.N)

    def mirror_index(self):
        """Index j -> N-j (mod N), the reflection lambda -> 2*pi - lambda."""
        return (-np.arange(self.N)) % self.N


class spectral_density:
    families = ['periodogram-raw', 'lag-window', 'smoothed-periodogram',
                'ar-parametric', 'pre-whitened', 'cepstral-threshold',
                'model', 'reconstructed', 'imported']

    def __init__(self, values, grid=None, family='model', tuning=None,
                 floor=0.0):
        """
        Initialize a spectral density given on a frequency grid.

        Parameters
        ----------
        values : array-like
            Density values at the grid frequencies 2*pi*j/N, j = 0..N-1.
        grid : frequency_grid or None, optional
            The grid. None builds a grid from the number of values. The
            default is None.
        family : str, optional
            The estimator family the values come from. The default is
            'model', i.e. a known (not estimated) density.
        tuning : dict or None, optional
            Family specific tuning parameters (provenance only). The default
            is None.
        floor : float, optional
            The lower clamp applied to the values. 0 means no clamp was
            applied. The default is 0.0.

        Returns
        -------
        None.

        """
        values = np.asarray(values, dtype=float)
        if values.ndim != 1:
            raise ValueError('Spectral density values must be one dimensional.')
        if grid is None:
            grid = frequency_grid(values.size)
        if values.size != grid.N:
            raise ValueError('Got {} values for a grid of size {}.'.format(
                values.size, grid.N))
        if not np.all(np.isfinite(values)):
            raise ValueError('Spectral density values must be finite.')
        if family not in self.families:
            raise ValueError('Spectral density family {} unknown.'.format(
                family))

        self.values = values
        self.grid = grid
        self.family = family
        self.tuning = {} if tuning is None else dict(tuning)
        self.floor = float(floor)
        # family specific by-products, e.g. the AR part of a pre-whitened fit
        self.components = {}

    @property
    def frequencies(self):
        return self.grid.frequencies

    @property
    def N(self):
        return self.grid.N

    def is_positive(self):
        return bool(np.all(self.values > 0))

    def is_symmetric(self, rtol=1e-10):
        mirrored = self.values[self.grid.mirror_index()]
        return bool(np.allclose(self.values, mirrored, rtol=rtol, atol=0))

    def value_at_zero(self):
        return float(self.values[0])

    def scaled(self, factor):
        """Return a copy with all values multiplied by factor > 0."""
        if factor <= 0:
            raise ValueError('Scaling factor must be positive.')
        scaled_density = spectral_density(
            self.values * factor, grid=self.grid, family=self.family,
            tuning=self.tuning, floor=self.floor * factor)
        scaled_density.components = dict(self.components)
        return scaled_density

    def autocovariances(self, maxlag):
        """
        Autocovariances of a process having this density.

        gamma(h) = int f(lambda) exp(i*h*lambda) d lambda, evaluated with the
        rectangle rule on the grid.

        Parameters
        ----------
        maxlag : int
            Largest lag returned. Must be below N/2.

        Returns
        -------
        ndarray
            gamma(0), ..., gamma(maxlag).

        """
        if maxlag >= self.N // 2:
            raise ValueError(
                'maxlag {} needs a grid finer than N={}.'.format(
                    maxlag, self.N))
        acov = 2 * np.pi * np.real(np.fft.ifft(self.values))
        return acov[:maxlag + 1]

###############################
# import and export methods
###############################

    def to_frame(self):
        return pd.DataFrame({'lambda': self.frequencies, 'value': self.values})

    def export_spectrum(self, export_path):
        # full precision, a spectrum file must factorize like the in-memory
        # density
        self.to_frame().to_csv(export_path, index=False, float_format='%.17g')

    @classmethod
    def from_frame(cls, frame, family='imported'):
        """
        Build a density from a DataFrame with 'lambda' and 'value' columns.

        The lambda column must be the full grid 2*pi*j/N, j = 0..N-1.
        """
        grid = frequency_grid(len(frame.index))
        lambdas = frame['lambda'].to_numpy(dtype=float)
        if not np.allclose(lambdas, grid.frequencies, atol=1e-6):
            raise ValueError(
                'lambda column is not the Fourier grid 2*pi*j/N.')
        values = frame['value'].to_numpy(dtype=float)
        return cls(values, grid=grid, family=family)
