__version__ = '0.1.0'

from .spectral_density import frequency_grid, spectral_density
from .factorization import (cepstral_sequence, wold_model, factorize,
                            cepstral_coefficients, ma_coefficients,
                            ar_coefficients, innovation_variance,
                            reconstruct_density, implied_autocovariance)
from .spectral import time_series, estimate_spectrum
from .bootstrap import (rng_stream, innovation_generator, method_config,
                        bootstrap_distribution, confidence_interval)
from .simharness import model_spec, experiment_config, coverage_study
