# -*- coding: utf-8 -*-
"""
Tests of the spectral density estimators.
"""

import unittest

import numpy as np
from numpy.testing import assert_allclose
from scipy.signal import lfilter

from src.pySDDB.bootstrap import rng_stream
from src.pySDDB.exceptions import DegenerateSeries
from src.pySDDB.factorization import factorize
from src.pySDDB.simharness import model_spec, simulate_model
from src.pySDDB.spectral import (
    time_series, periodogram, periodogram_estimate, fourier_periodogram,
    lag_window, lag_window_estimate, politis_truncation, smoothed_periodogram,
    crossvalidate_bandwidth, fit_ar, select_order_aic, default_max_order,
    ar_spectral_estimate, prewhitened_estimate, prewhitened_arma_models,
    cepstral_threshold_estimate, estimate_spectrum, estimate_like,
    estimator_name, ESTIMATORS)
from src.pySDDB.spectral_density import frequency_grid, positivity_floor
from src.pySDDB.statistics import autocovariances


def ar1_series(n, phi=0.9, seed=0):
    eps = np.random.default_rng(seed).standard_normal(n + 500)
    return lfilter([1.0], [1.0, -phi], eps)[500:]


def ma1_series(n, theta=0.5, seed=0):
    eps = np.random.default_rng(seed).standard_normal(n + 1)
    return eps[1:] + theta * eps[:-1]


class TestTimeSeries(unittest.TestCase):

    def test_validation(self):
        with self.assertRaises(ValueError):
            time_series(np.ones(7))
        with self.assertRaises(ValueError):
            time_series([1, 2, 3, 4, 5, 6, 7, np.inf])
        with self.assertRaises(ValueError):
            time_series(np.ones((4, 4)))

    def test_centering(self):
        x = time_series(np.arange(10.0))
        self.assertEqual(x.n, 10)
        self.assertEqual(x.mean(), 4.5)
        assert_allclose(x.centered_values(), np.arange(10.0) - 4.5)


class TestPeriodogram(unittest.TestCase):

    def test_constant(self):
        assert_allclose(periodogram(np.full(16, 3.0), 32), 0.0)

    def test_alternating(self):
        x = np.tile([1.0, -1.0], 4)
        values = periodogram(x, 16)
        self.assertAlmostEqual(values[8], 8 / (2 * np.pi), places=12)
        self.assertAlmostEqual(values[8], 1.2732, places=4)

    def test_parseval(self):
        x = ma1_series(64)
        values = periodogram(x, 64)
        self.assertAlmostEqual(2 * np.pi / 64 * np.sum(values),
                               autocovariances(x, 0)[0], places=12)
        self.assertAlmostEqual(values[0], 0.0, places=20)

    def test_folding(self):
        x = ar1_series(100)
        assert_allclose(periodogram(x, 16), periodogram(x, 400)[::25],
                        rtol=1e-10, atol=1e-12)

    def test_estimate(self):
        f = periodogram_estimate(ma1_series(64), 128)
        self.assertEqual(f.family, 'periodogram-raw')
        self.assertTrue(f.floor > 0)
        self.assertTrue(np.all(f.values >= f.floor))
        self.assertTrue(f.is_symmetric())

    def test_fourier_ordinates(self):
        frequencies, ordinates = fourier_periodogram(ma1_series(32))
        self.assertEqual(frequencies.size, 31)
        assert_allclose(frequencies, 2 * np.pi * np.arange(1, 32) / 32)
        assert_allclose(ordinates, periodogram(ma1_series(32), 32)[1:])


class TestLagWindow(unittest.TestCase):

    def test_windows(self):
        assert_allclose(lag_window('bartlett', 4), [1, 0.75, 0.5, 0.25, 0])
        assert_allclose(lag_window('trapezoid', 4), [1, 1, 1, 0.5, 0])
        assert_allclose(lag_window('gaussian', 3),
                        np.exp(-4.5 * (np.arange(4) / 3)**2))
        with self.assertRaises(ValueError):
            lag_window('parzen', 4)
        with self.assertRaises(ValueError):
            lag_window('bartlett', 0)

    def test_preconditions(self):
        x = ma1_series(64)
        with self.assertRaises(ValueError):
            lag_window_estimate(x, truncation=0)
        with self.assertRaises(ValueError):
            lag_window_estimate(x, truncation=64)
        with self.assertRaises(ValueError):
            lag_window_estimate(x, truncation=10, grid=16)

    def test_constant_series(self):
        with self.assertRaises(DegenerateSeries):
            lag_window_estimate(np.full(64, 2.0), truncation=4)
        with self.assertRaises(DegenerateSeries):
            lag_window_estimate(np.full(64, 2.0))

    def test_definition(self):
        x = ma1_series(128)
        T = 6
        f = lag_window_estimate(x, 'bartlett', T, grid=64)
        gamma = autocovariances(x, T)
        w = lag_window('bartlett', T)
        lam = f.frequencies
        h = np.arange(1, T + 1)
        expected = (gamma[0] + 2 * np.sum(
            (w[1:] * gamma[1:])[None, :] * np.cos(lam[:, None] * h[None, :]),
            axis=1)) / (2 * np.pi)
        assert_allclose(f.values, np.maximum(expected, f.floor), rtol=1e-10)
        self.assertEqual(f.tuning, {'kernel': 'bartlett', 'truncation': 6})

    def test_finite_ma(self):
        x = ma1_series(512, seed=3)
        T = 5
        f = lag_window_estimate(x, 'bartlett', T, grid=8192)
        self.assertTrue(np.all(f.values > f.floor))
        w = factorize(f, trim=False)
        self.assertLess(np.max(np.abs(w.ma[T + 1:])), 1e-8)

    def test_default_truncation(self):
        x = ar1_series(256)
        f = lag_window_estimate(x, 'trapezoid')
        self.assertEqual(f.tuning['truncation'], 2 * politis_truncation(x))

    def test_white_noise_flat(self):
        x = np.random.default_rng(5).standard_normal(8192)
        f = lag_window_estimate(x, 'bartlett', 10, grid=256)
        gamma0 = autocovariances(x, 0)[0]
        assert_allclose(f.values, gamma0 / (2 * np.pi), rtol=0.25)


class TestPolitis(unittest.TestCase):

    def test_short_series(self):
        with self.assertRaises(ValueError):
            politis_truncation(np.random.default_rng(0).standard_normal(31))

    def test_bounds(self):
        x = 5 + np.random.default_rng(1).standard_normal(32)
        self.assertTrue(1 <= politis_truncation(x) <= 8)

    def test_iid_versus_persistent(self):
        small = 0
        for seed in range(20):
            iid = np.random.default_rng(seed).standard_normal(512)
            m_iid = politis_truncation(iid)
            small += m_iid <= 3
            self.assertGreater(politis_truncation(ar1_series(512, seed=seed)),
                               m_iid)
        self.assertGreater(small, 10)


class TestSmoothedPeriodogram(unittest.TestCase):

    def test_total_smoothing(self):
        x = ma1_series(128)
        _, ordinates = fourier_periodogram(x)
        f = smoothed_periodogram(x, bandwidth=1e3, grid=64)
        assert_allclose(f.values, ordinates.mean(), rtol=1e-3)

    def test_no_smoothing(self):
        x = ma1_series(64)
        _, ordinates = fourier_periodogram(x)
        f = smoothed_periodogram(x, bandwidth=1e-3 * 2 * np.pi / 64, grid=64)
        floor = positivity_floor(ordinates)
        assert_allclose(f.values[1:], np.maximum(ordinates, floor),
                        rtol=1e-10)
        self.assertEqual(f.family, 'smoothed-periodogram')

    def test_model_II_peak(self):
        x = simulate_model(model_spec('II', n=512), rng_stream(3))
        f = smoothed_periodogram(x, grid=1024)
        upper = f.frequencies <= np.pi
        peak = f.frequencies[upper][np.argmax(f.values[upper])]
        self.assertLess(abs(peak - 1.5), 0.2)
        self.assertIn('bandwidth', f.tuning)

    def test_errors(self):
        with self.assertRaises(DegenerateSeries):
            smoothed_periodogram(np.ones(32), bandwidth=0.1)
        with self.assertRaises(ValueError):
            smoothed_periodogram(ma1_series(32), bandwidth=0.0)
        with self.assertRaises(ValueError):
            smoothed_periodogram(ma1_series(32), bandwidth=0.1,
                                 kernel='epanechnikov')


class TestCrossvalidation(unittest.TestCase):

    def test_single_candidate(self):
        self.assertEqual(crossvalidate_bandwidth(ma1_series(64), [0.3]), 0.3)

    def test_flat_spectrum_prefers_smoothing(self):
        larger = 0
        for seed in range(10):
            x = np.random.default_rng(seed).standard_normal(256)
            larger += crossvalidate_bandwidth(x, [0.02, 1.0]) == 1.0
        self.assertGreater(larger, 5)

    def test_default_candidates(self):
        x = ar1_series(128)
        bandwidth = crossvalidate_bandwidth(x)
        candidates = np.geomspace(2 * np.pi / 128, np.pi / 2, 16)
        self.assertTrue(np.any(np.isclose(candidates, bandwidth)))
        self.assertEqual(crossvalidate_bandwidth(x), bandwidth)


class TestAutoregressive(unittest.TestCase):

    def test_max_order(self):
        self.assertEqual(default_max_order(128), 20)
        self.assertEqual(default_max_order(32), 15)

    def test_aic(self):
        x = ar1_series(512, seed=2)
        self.assertGreaterEqual(select_order_aic(x), 1)
        self.assertEqual(select_order_aic(x, pmax=0), 0)
        with self.assertRaises(ValueError):
            select_order_aic(x, pmax=256)
        self.assertLess(abs(fit_ar(x, order=1).phi[0] - 0.9), 0.1)

    def test_white_noise_order(self):
        zeros = 0
        for seed in range(100):
            x = np.random.default_rng(seed).standard_normal(256)
            zeros += select_order_aic(x) == 0
        self.assertGreater(zeros, 40)

    def test_degenerate(self):
        with self.assertRaises(DegenerateSeries):
            select_order_aic(np.full(64, 2.0))
        with self.assertRaises(DegenerateSeries):
            fit_ar(np.full(64, 2.0), order=1)

    def test_fit(self):
        x = ar1_series(256, phi=0.5)
        fit = fit_ar(x, order=1)
        self.assertEqual(fit.order, 1)
        self.assertEqual(fit.residuals.size, 255)
        centered = x - x.mean()
        assert_allclose(fit.residuals, centered[1:] - fit.phi[0] * centered[:-1],
                        rtol=1e-12, atol=1e-12)
        white = fit_ar(x, order=0)
        self.assertEqual(white.order, 0)
        self.assertAlmostEqual(white.sigma2, autocovariances(x, 0)[0],
                               places=12)

    def test_inverse_gain(self):
        fit = fit_ar(ar1_series(64), order=1)
        fit.phi = np.array([0.5])
        gain = fit.inverse_gain(frequency_grid(4))
        assert_allclose(gain[[0, 2]], [4.0, 1 / 2.25])

    def test_estimate_and_factorization(self):
        x = ar1_series(512, seed=4)
        f, fit = ar_spectral_estimate(x, grid=8192)
        self.assertEqual(f.family, 'ar-parametric')
        self.assertIs(f.components['ar_fit'], fit)
        self.assertEqual(f.tuning['order'], fit.order)
        self.assertTrue(np.all(f.values > f.floor))
        w = factorize(f, trim=False)
        p = fit.order
        assert_allclose(w.ar[1:p + 1], fit.phi, atol=1e-8)
        assert_allclose(w.ar[p + 1:200], 0, atol=1e-8)
        self.assertAlmostEqual(w.sigma2, fit.sigma2, places=8)


class TestPrewhitening(unittest.TestCase):

    def test_product(self):
        x = ar1_series(256, seed=6)
        f = prewhitened_estimate(x, grid=512, order=1, bandwidth=0.2)
        fit = f.components['ar_fit']
        residual_density = f.components['residual_density']
        expected = residual_density.values * fit.inverse_gain(f.grid)
        assert_allclose(f.values, np.maximum(expected, f.floor), rtol=1e-12)
        self.assertEqual(f.family, 'pre-whitened')
        self.assertEqual(f.tuning, {'order': 1, 'bandwidth': 0.2})

    def test_arma_split(self):
        x = simulate_model(model_spec('II', n=512), rng_stream(8))
        f = prewhitened_estimate(x, grid=1024)
        ma_model, phi = prewhitened_arma_models(f)
        assert_allclose(phi, f.components['ar_fit'].phi)
        self.assertGreater(ma_model.sigma2, 0)
        self.assertEqual(ma_model.ma[0], 1.0)
        with self.assertRaises(ValueError):
            prewhitened_arma_models(estimate_spectrum(x, 'ar', grid=64))


class TestCepstralThreshold(unittest.TestCase):

    def floored_ordinates(self, x):
        n = x.size
        ordinates = np.abs(np.fft.fft(x - x.mean()))**2 / (2 * np.pi * n)
        ordinates[0] = ordinates[1]
        return np.maximum(ordinates, positivity_floor(ordinates))

    def test_zero_threshold_reproduces_periodogram(self):
        x = ar1_series(64, seed=7)
        f = cepstral_threshold_estimate(x, grid=64, threshold=0.0,
                                        bias_correction=False)
        assert_allclose(f.values, self.floored_ordinates(x), rtol=1e-8)

    def test_infinite_threshold_is_constant(self):
        x = ar1_series(64, seed=7)
        f = cepstral_threshold_estimate(x, grid=128, threshold=1e9,
                                        bias_correction=False)
        geometric_mean = np.exp(np.mean(np.log(self.floored_ordinates(x))))
        assert_allclose(f.values, geometric_mean, rtol=1e-10)
        corrected = cepstral_threshold_estimate(x, grid=128, threshold=1e9)
        assert_allclose(corrected.values,
                        geometric_mean * np.exp(np.euler_gamma), rtol=1e-10)

    def test_default_threshold(self):
        f = cepstral_threshold_estimate(ar1_series(128), grid=256)
        self.assertAlmostEqual(f.tuning['threshold'], 2 * np.sqrt(2 / 128))
        self.assertTrue(f.tuning['bias_correction'])
        self.assertTrue(f.is_positive())

    def test_degenerate(self):
        with self.assertRaises(DegenerateSeries):
            cepstral_threshold_estimate(np.zeros(32))


class TestDispatch(unittest.TestCase):

    def test_all_estimators(self):
        x = ar1_series(128, seed=9)
        for name, family in ESTIMATORS.items():
            f = estimate_spectrum(x, name, grid=256)
            self.assertEqual(f.family, family)
            self.assertEqual(estimator_name(f.family), name)
            self.assertGreater(f.floor, 0)
            self.assertTrue(np.all(f.values >= f.floor))
            self.assertTrue(f.is_symmetric())

    def test_scale_equivariance(self):
        x = ar1_series(128, seed=10)
        for name in ESTIMATORS:
            f = estimate_spectrum(x, name, grid=256)
            g = estimate_spectrum(3 * x, name, grid=256)
            assert_allclose(g.values, 9 * f.values, rtol=1e-8,
                            err_msg=name)

    def test_estimate_like(self):
        x = ar1_series(128, seed=11)
        for name in ['smoothed', 'prewhiten', 'ar', 'lag-window', 'cepstrum']:
            f = estimate_spectrum(x, name, grid=256)
            g = estimate_like(x, f)
            assert_allclose(g.values, f.values, rtol=1e-12, err_msg=name)
            self.assertEqual(g.tuning, f.tuning)

        y = ar1_series(128, seed=12)
        f = estimate_spectrum(x, 'prewhiten', grid=256)
        g = estimate_like(y, f, grid=64)
        self.assertEqual(g.N, 64)
        self.assertEqual(g.tuning, f.tuning)

    def test_none_tuning_dropped(self):
        x = ar1_series(128, seed=13)
        f = estimate_spectrum(x, 'prewhiten', grid=128, order=None,
                              bandwidth=None)
        self.assertEqual(f.family, 'pre-whitened')

    def test_unknown(self):
        with self.assertRaises(ValueError):
            estimate_spectrum(ar1_series(64), 'multitaper')
        with self.assertRaises(ValueError):
            estimator_name('model')


if __name__ == '__main__':
    unittest.main()
