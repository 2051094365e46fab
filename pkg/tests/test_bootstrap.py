# -*- coding: utf-8 -*-
"""
Tests of the random streams, innovation laws, pseudo series generators and
bootstrap confidence intervals.
"""

import os
import tempfile
import unittest

import numpy as np
import pandas as pd
from numpy.testing import assert_allclose, assert_array_equal
from scipy.signal import lfilter
from scipy.stats import norm

from src.pySDDB.bootstrap import (
    rng_stream, as_generator, innovation_generator, gen_innovations,
    estimate_kappa4, standardized_kurtosis, residual_moments,
    sddb_generate_ma, sddb_generate_ar, sddb_generate_arma,
    ar_sieve_bootstrap, moving_block_bootstrap, default_block_length,
    method_config, bootstrap_scheme, bootstrap_replicate_set,
    bootstrap_distribution, bootstrap_distributions,
    generalized_mean_distribution, confidence_interval, normal_interval)
from src.pySDDB.exceptions import (ConfigError, DegenerateSeries,
                                   ExplosivePath, InvalidKurtosis,
                                   TooFewReplicates)
from src.pySDDB.factorization import (factorize, implied_autocovariance,
                                      wold_model)
from src.pySDDB.simharness import model_spec, simulate_model
from src.pySDDB.spectral import (ar_spectral_estimate, estimate_spectrum,
                                 fit_ar)
from src.pySDDB.statistics import (autocovariances, autocorrelation_statistic,
                                   generalized_mean, lag_moment,
                                   mean_statistic, sample_autocorrelation)

SLOW = os.environ.get('SDDB_SLOW_TESTS') == '1'


def ar1_series(n, phi=0.6, seed=0):
    eps = np.random.default_rng(seed).standard_normal(n + 500)
    return lfilter([1.0], [1.0, -phi], eps)[500:]


def small_config(method='sddb', estimator='prewhiten', **kwargs):
    kwargs.setdefault('B', 25)
    return method_config(method, estimator, grid_size=512,
                         studentizer_grid_size=128, **kwargs)


class TestRandomStreams(unittest.TestCase):

    def test_determinism(self):
        first = rng_stream(5, (1, 2)).generator().random(4)
        assert_array_equal(first, rng_stream(5, (1, 2)).generator().random(4))
        assert_array_equal(first,
                           rng_stream(5, 1).substream(2).generator().random(4))
        self.assertFalse(np.array_equal(
            first, rng_stream(5, (1, 3)).generator().random(4)))
        self.assertFalse(np.array_equal(
            first, rng_stream(6, (1, 2)).generator().random(4)))

    def test_validation(self):
        with self.assertRaises(ValueError):
            rng_stream(-1)
        with self.assertRaises(ValueError):
            rng_stream(1.5)
        self.assertEqual(rng_stream(3).index, ())
        self.assertEqual(rng_stream(3, 4).index, (4,))

    def test_as_generator(self):
        generator = np.random.default_rng(0)
        self.assertIs(as_generator(generator), generator)
        assert_array_equal(as_generator(11).random(3),
                           np.random.default_rng(11).random(3))


class TestInnovations(unittest.TestCase):

    def test_three_point_law(self):
        g = innovation_generator('threepoint', sigma2=2.0, kurtosis=4.0)
        self.assertEqual(g.kind, 'three-point')
        values, probabilities = g.support()
        assert_allclose(values, [-np.sqrt(8), 0, np.sqrt(8)])
        assert_allclose(probabilities, [0.125, 0.75, 0.125])
        mean, variance, fourth = g.moments()
        self.assertAlmostEqual(mean, 0.0)
        self.assertAlmostEqual(variance, 2.0)
        self.assertAlmostEqual(fourth, 16.0)

    def test_three_point_rademacher(self):
        g = innovation_generator('three-point', sigma2=1.0, kurtosis=1.0)
        _, probabilities = g.support()
        assert_allclose(probabilities, [0.5, 0.0, 0.5])
        draws = g.draw(200, rng_stream(2))
        assert_allclose(np.abs(draws), 1.0)

    def test_three_point_errors(self):
        with self.assertRaises(InvalidKurtosis):
            innovation_generator('three-point', kurtosis=0.5)
        with self.assertRaises(ValueError):
            innovation_generator('three-point')
        with self.assertRaises(ValueError):
            innovation_generator('gaussian').support()
        with self.assertRaises(ValueError):
            innovation_generator('laplace')
        with self.assertRaises(ValueError):
            innovation_generator('gaussian', sigma2=0.0)

    def test_sample_moments(self):
        n = 100000
        g = innovation_generator('three-point', sigma2=1.0, kurtosis=3.0)
        draws = gen_innovations(g, n, rng_stream(1))
        self.assertLess(abs(draws.mean()), 5 / np.sqrt(n))
        self.assertLess(abs(np.mean(draws**2) - 1), 5 * np.sqrt(2 / n))

        gauss = innovation_generator('gaussian', sigma2=4.0)
        draws = gauss.draw(n, rng_stream(1))
        self.assertLess(abs(np.mean(draws**2) - 4), 5 * np.sqrt(32 / n))

    def test_empirical_pool(self):
        g = innovation_generator('residual', residuals=[1.0, 2.0, 3.0, 6.0])
        self.assertEqual(g.kind, 'empirical-residual')
        assert_allclose(g.pool, [-2.0, -1.0, 0.0, 3.0])
        self.assertEqual(g.moments(), (0.0, 3.5, 24.5))
        draws = g.draw(50, rng_stream(0))
        self.assertTrue(np.all(np.isin(draws, g.pool)))

        doubled = g.rescaled(7.0)
        self.assertAlmostEqual(doubled.sigma2, 7.0)
        assert_allclose(doubled.pool, g.pool * np.sqrt(2))
        with self.assertRaises(DegenerateSeries):
            innovation_generator('empirical', residuals=[2.0, 2.0, 2.0])
        with self.assertRaises(ValueError):
            innovation_generator('empirical')

    def test_rescaled_parametric(self):
        g = innovation_generator('three-point', sigma2=1.0, kurtosis=2.5)
        h = g.rescaled(3.0)
        self.assertEqual(h.sigma2, 3.0)
        self.assertEqual(h.kurtosis, 2.5)


class TestKurtosis(unittest.TestCase):

    def test_gaussian(self):
        x = np.random.default_rng(0).standard_normal(4000)
        self.assertLess(abs(standardized_kurtosis(x) - 3), 0.3)

    def test_rademacher(self):
        x = np.random.default_rng(1).choice([-1.0, 1.0], size=4000)
        kurtosis = standardized_kurtosis(x, order=0)
        self.assertGreaterEqual(kurtosis, 1.0)
        self.assertLess(kurtosis, 1.1)

    def test_consistency(self):
        x = ar1_series(500)
        sigma2, kappa4 = residual_moments(x)
        self.assertAlmostEqual(estimate_kappa4(x), kappa4)
        self.assertAlmostEqual(standardized_kurtosis(x), kappa4 / sigma2**2)
        self.assertGreaterEqual(kappa4, sigma2**2)


class TestGenerators(unittest.TestCase):

    def test_white_ma_form(self):
        w = wold_model([1.0], [-1.0], 1.0)
        g = innovation_generator('gaussian')
        x = sddb_generate_ma(w, 100, g, mean=2.0, rng=rng_stream(1))
        assert_allclose(x.values, g.draw(100, rng_stream(1)) + 2.0,
                        rtol=1e-12, atol=1e-12)

    def test_ma1_autocovariances(self):
        w = wold_model([1.0, 0.5], [-1.0], 1.0)
        g = innovation_generator('gaussian')
        x = sddb_generate_ma(w, 200000, g, rng=rng_stream(3))
        self.assertEqual(x.n, 200000)
        assert_allclose(autocovariances(x.values, 2), [1.25, 0.5, 0.0],
                        atol=0.03)

    def test_white_ar_form(self):
        w = wold_model([1.0], [-1.0], 1.0)
        g = innovation_generator('gaussian')
        x = sddb_generate_ar(w, 100, g, mean=-1.0, rng=rng_stream(1))
        draws = g.draw(1100, rng_stream(1))
        assert_allclose(x.values, draws[1000:] - 1.0, rtol=1e-12, atol=1e-12)

    def test_ar1_form(self):
        w = wold_model.from_ar([0.9], 1.0)
        g = innovation_generator('gaussian')
        x = sddb_generate_ar(w, 100000, g, rng=rng_stream(4))
        self.assertLess(abs(sample_autocorrelation(x.values, 1) - 0.9), 0.01)

    def test_explosive(self):
        w = wold_model([1.0], [-1.0, 1.5], 1.0)
        g = innovation_generator('gaussian')
        with self.assertRaises(ExplosivePath):
            with np.errstate(over='ignore', invalid='ignore'):
                sddb_generate_ar(w, 100, g, rng=rng_stream(0))

    def test_arma_form(self):
        # white residual model: the mixed form is the AR recursion
        white = wold_model([1.0], [-1.0], 1.0)
        ar1 = wold_model.from_ar([0.5], 1.0)
        g = innovation_generator('gaussian')
        mixed = sddb_generate_arma(white, [0.5], 64, g, rng=rng_stream(9),
                                   burn_in=200)
        pure = sddb_generate_ar(ar1, 64, g, rng=rng_stream(9), burn_in=200)
        assert_allclose(mixed.values, pure.values, rtol=1e-12, atol=1e-12)

    def test_ar_sieve_equals_ar_form(self):
        x = ar1_series(256)
        fit = fit_ar(x)
        pool = innovation_generator('empirical-residual',
                                    residuals=fit.residuals)
        sieve = ar_sieve_bootstrap(x, rng_stream(4), burn_in=500)
        direct = sddb_generate_ar(fit.wold_model(), 256, pool, x.mean(),
                                  rng_stream(4), burn_in=500)
        assert_allclose(sieve.values, direct.values, rtol=1e-12)

        # the factorized AR spectral estimate yields the same recursion
        f, _ = ar_spectral_estimate(x, grid=8192)
        w = factorize(f)
        assert_allclose(w.ar[1:fit.order + 1], fit.phi, atol=1e-8)
        via_density = sddb_generate_ar(w, 256, pool, x.mean(), rng_stream(4),
                                       burn_in=500)
        assert_allclose(via_density.values, sieve.values, rtol=1e-6,
                        atol=1e-8)


class TestMovingBlockBootstrap(unittest.TestCase):

    def test_full_block(self):
        x = ar1_series(40)
        assert_array_equal(moving_block_bootstrap(x, 40, rng_stream(0)).values,
                           x)

    def test_unit_blocks(self):
        x = ar1_series(40)
        y = moving_block_bootstrap(x, 1, rng_stream(0)).values
        self.assertEqual(y.size, 40)
        self.assertTrue(np.all(np.isin(y, x)))

    def test_blocks_are_contiguous(self):
        x = np.arange(10.0)
        y = moving_block_bootstrap(x, 3, rng_stream(1)).values
        self.assertEqual(y.size, 10)
        for start in [0, 3, 6]:
            assert_array_equal(np.diff(y[start:start + 3]), [1.0, 1.0])

    def test_block_length(self):
        self.assertEqual(default_block_length(128), 6)
        self.assertEqual(default_block_length(100), 5)
        x = ar1_series(40)
        for l in [0, 41]:
            with self.assertRaises(ValueError):
                moving_block_bootstrap(x, l, rng_stream(0))


class TestMethodConfig(unittest.TestCase):

    def test_fields(self):
        cases = [({'method': 'sieve'}, 'method'),
                 ({'estimator': 'multitaper'}, 'estimator'),
                 ({'innovations': 'laplace'}, 'innovations'),
                 ({'tuning': {'kernel': 'parzen'}}, 'tuning.kernel'),
                 ({'B': 0}, 'B'),
                 ({'grid_size': 1001}, 'grid_size'),
                 ({'studentizer_grid_size': 2}, 'studentizer_grid_size'),
                 ({'seed': -3}, 'seed'),
                 ({'block_length': 0}, 'block_length')]
        for kwargs, field in cases:
            with self.assertRaises(ConfigError) as context:
                method_config(**kwargs)
            self.assertEqual(context.exception.field, field)
            self.assertTrue(str(context.exception).startswith(field + ':'))

    def test_from_dict(self):
        config = method_config.from_dict({'method': 'SDDB-AR',
                                          'innovations': 'threepoint',
                                          'B': 50})
        self.assertEqual(config.method, 'sddb-ar')
        self.assertEqual(config.innovations, 'three-point')
        self.assertEqual(method_config.from_dict(config.to_dict()), config)
        with self.assertRaises(ConfigError) as context:
            method_config.from_dict({'methd': 'sddb'})
        self.assertEqual(context.exception.field, 'methd')

    def test_arma_needs_prewhitening(self):
        with self.assertRaises(ConfigError) as context:
            bootstrap_scheme(ar1_series(128), small_config('sddb-arma', 'ar'))
        self.assertEqual(context.exception.field, 'estimator')


class TestBootstrapDistribution(unittest.TestCase):

    def test_determinism(self):
        x = ar1_series(128)
        config = small_config('sddb', 'ar', B=30, seed=7)
        first = bootstrap_distribution(x, mean_statistic(), config)
        second = bootstrap_distribution(x, mean_statistic(), config)
        assert_array_equal(first.values, second.values)
        assert_array_equal(first.standard_errors, second.standard_errors)
        other = bootstrap_distribution(x, mean_statistic(),
                                       small_config('sddb', 'ar', B=30,
                                                    seed=8))
        self.assertFalse(np.array_equal(first.values, other.values))

    def test_replicate_order(self):
        x = ar1_series(128)
        config = small_config('bb', B=30)
        longer = bootstrap_distribution(x, mean_statistic(), config)
        one = bootstrap_distribution(x, mean_statistic(), config, B=1)
        self.assertEqual(one.B, 1)
        self.assertEqual(one.values[0], longer.values[0])

    def test_all_methods(self):
        x = ar1_series(128)
        statistics = [mean_statistic(), autocorrelation_statistic(2)]
        for method, innovations in [('sddb', 'gaussian'),
                                    ('sddb-ar', 'three-point'),
                                    ('sddb-arma', 'empirical-residual'),
                                    ('ars', 'gaussian'), ('bb', 'gaussian')]:
            config = small_config(method, innovations=innovations)
            result = bootstrap_distributions(x, statistics, config)
            self.assertEqual(set(result), {'mean', 'rho2'})
            for replicates in result.values():
                self.assertEqual(replicates.B, 25)
                self.assertTrue(np.all(np.isfinite(replicates.values)))
                self.assertTrue(replicates.studentized)
                self.assertTrue(np.all(replicates.standard_errors > 0))
                self.assertEqual(replicates.method, method)
                lower, upper = confidence_interval(replicates, 0.1,
                                                   'studentized')
                self.assertLessEqual(lower, upper)
            self.assertAlmostEqual(result['mean'].original, x.mean())

    def test_normal_approximation_has_no_replicates(self):
        with self.assertRaises(ValueError):
            bootstrap_distribution(ar1_series(64), mean_statistic(),
                                   small_config('nd'))

    def test_standard_deviation_of_mean(self):
        x = np.random.default_rng(3).standard_normal(200)
        config = small_config('sddb', 'ar', tuning={'order': 0}, B=2000)
        replicates = bootstrap_distribution(x, mean_statistic(), config,
                                            studentize=False)
        self.assertFalse(replicates.studentized)
        self.assertAlmostEqual(replicates.center, x.mean())
        expected = np.sqrt(autocovariances(x, 0)[0] / x.size)
        self.assertLess(abs(replicates.standard_deviation() / expected - 1),
                        0.1)

    def test_replicate_frame(self):
        x = ar1_series(64)
        replicates = bootstrap_distribution(x, mean_statistic(),
                                            small_config('bb', B=20))
        frame = replicates.to_frame()
        self.assertEqual(list(frame.columns), ['replicate', 'value', 'se'])
        self.assertEqual(frame['replicate'].tolist(), list(range(1, 21)))
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'replicates.csv')
            replicates.export_replicates(path)
            self.assertEqual(len(pd.read_csv(path)), 20)


class TestGeneralizedMeanDistribution(unittest.TestCase):

    def test_lag_moment(self):
        x = ar1_series(128)
        y = x[:-1] * x[1:]
        statistic = lag_moment(1)
        config = small_config('sddb', 'ar', B=25, seed=5)
        replicates = generalized_mean_distribution(x, statistic, config)
        self.assertEqual(replicates.B, 25)
        self.assertAlmostEqual(replicates.original, y.mean(), places=12)
        self.assertAlmostEqual(replicates.center, y.mean(), places=12)
        self.assertTrue(replicates.studentized)
        self.assertTrue(np.all(np.isfinite(replicates.values)))

        # the scheme runs on the derived series
        direct = bootstrap_distribution(y, statistic, config)
        assert_array_equal(replicates.values, direct.values)
        lower, upper = confidence_interval(replicates, 0.1, 'studentized')
        self.assertLessEqual(lower, upper)

    def test_combiner(self):
        x = ar1_series(128)
        statistic = generalized_mean(lambda w: w[:, 0]**2, combiner=np.sqrt)
        self.assertFalse(statistic.can_studentize)
        replicates = generalized_mean_distribution(x, statistic,
                                                   small_config('bb', B=20))
        self.assertFalse(replicates.studentized)
        self.assertAlmostEqual(replicates.original,
                               np.sqrt(np.mean(x**2)), places=12)
        self.assertTrue(np.all(replicates.values > 0))

    def test_vector_valued(self):
        statistic = generalized_mean(
            lambda w: np.column_stack([w[:, 0], w[:, 0]**2]))
        with self.assertRaises(ValueError):
            generalized_mean_distribution(ar1_series(64), statistic,
                                          small_config('bb', B=20))


class TestConfidenceIntervals(unittest.TestCase):

    def test_degenerate(self):
        replicates = bootstrap_replicate_set(np.ones(50), 1.0, 'sddb', 'mean', 0)
        self.assertEqual(confidence_interval(replicates, 0.05), (1.0, 1.0))

    def test_gaussian_roots(self):
        B = 10000
        roots = 2.0 * norm.ppf((np.arange(B) + 0.5) / B)
        replicates = bootstrap_replicate_set(5.0 + roots, 5.0, 'sddb', 'mean',
                                             0)
        lower, upper = confidence_interval(replicates, 0.05)
        self.assertLess(abs((5.0 - lower) / (1.96 * 2.0) - 1), 0.03)
        self.assertLess(abs((upper - 5.0) / (1.96 * 2.0) - 1), 0.03)

    def test_basic_root_uses_center(self):
        values = np.linspace(0.0, 1.0, 101)
        replicates = bootstrap_replicate_set(values, 3.0, 'ars', 'rho2', 0,
                                             center=0.5)
        q_lo, q_hi = np.quantile(values - 0.5, [0.05, 0.95])
        assert_allclose(confidence_interval(replicates, 0.1),
                        (3.0 - q_hi, 3.0 - q_lo))

    def test_studentized(self):
        rng = np.random.default_rng(0)
        values = rng.standard_normal(200)
        ses = rng.uniform(0.5, 1.5, 200)
        replicates = bootstrap_replicate_set(values, 0.3, 'sddb', 'mean', 0,
                                             center=0.1, standard_errors=ses,
                                             original_se=0.8)
        q_lo, q_hi = np.quantile((values - 0.1) / ses, [0.025, 0.975])
        assert_allclose(confidence_interval(replicates, 0.05, 'studentized'),
                        (0.3 - 0.8 * q_hi, 0.3 - 0.8 * q_lo))

    def test_errors(self):
        few = bootstrap_replicate_set(np.zeros(19), 0.0, 'sddb', 'mean', 0)
        with self.assertRaises(TooFewReplicates):
            confidence_interval(few, 0.05)
        replicates = bootstrap_replicate_set(np.zeros(20), 0.0, 'sddb', 'mean',
                                             0)
        for alpha in [0.0, 1.0]:
            with self.assertRaises(ValueError):
                confidence_interval(replicates, alpha)
        with self.assertRaises(ValueError):
            confidence_interval(replicates, 0.05, 'percentile')
        with self.assertRaises(ValueError):
            confidence_interval(replicates, 0.05, 'studentized')

    def test_normal_interval(self):
        lower, upper = normal_interval(0.0, 1.0, 0.05)
        self.assertAlmostEqual(upper, 1.959964, places=5)
        self.assertAlmostEqual(lower, -1.959964, places=5)
        with self.assertRaises(ValueError):
            normal_interval(0.0, 1.0, 1.5)


def autocovariance_se(acov, h, n):
    """Monte Carlo SE of gamma_hat(h) for a Gaussian linear process."""
    L = acov.size - 1
    full = np.concatenate([acov[:0:-1], acov])
    k = np.arange(-L + h, L - h + 1)
    terms = full[k + L]**2 + full[k + h + L] * full[k - h + L]
    return np.sqrt(np.sum(terms) / n)


@unittest.skipUnless(SLOW, 'set SDDB_SLOW_TESTS=1 to run')
class TestLongPseudoSeries(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        x = simulate_model(model_spec('I', n=512, innovations='gaussian'),
                           rng_stream(2))
        cls.model = factorize(estimate_spectrum(x, 'prewhiten', grid=8192))
        cls.acov = implied_autocovariance(cls.model, 600)
        cls.g = innovation_generator('gaussian', sigma2=cls.model.sigma2)
        cls.n = 10**6

    def test_ma_form_autocovariances(self):
        x = sddb_generate_ma(self.model, self.n, self.g, rng=rng_stream(11))
        sample = autocovariances(x.values, 5)
        for h in range(6):
            se = autocovariance_se(self.acov, h, self.n)
            self.assertLess(abs(sample[h] - self.acov[h]), 3 * se, h)

    def test_ma_and_ar_forms_agree(self):
        ma = sddb_generate_ma(self.model, self.n, self.g, rng=rng_stream(12))
        ar = sddb_generate_ar(self.model, self.n, self.g, rng=rng_stream(13))
        difference = autocovariances(ma.values, 5) - autocovariances(ar.values,
                                                                     5)
        for h in range(6):
            se = np.sqrt(2) * autocovariance_se(self.acov, h, self.n)
            self.assertLess(abs(difference[h]), 3 * se, h)
        self.assertLess(abs(sample_autocorrelation(ar.values, 1) -
                            self.acov[1] / self.acov[0]), 0.01)


if __name__ == '__main__':
    unittest.main()
