# -*- coding: utf-8 -*-
"""
Errors raised by pySDDB.

Errors describing invalid input or violated preconditions derive from
ValueError, numeric failures during a computation derive from
ArithmeticError. The command line interface maps the two families onto
different exit codes.
"""


class SDDBError(Exception):
    """Base class of all pySDDB errors."""


class NonPositiveDensity(SDDBError, ValueError):
    """A spectral density has grid values <= 0 where positivity is needed."""


class GridTooCoarse(SDDBError, ValueError):
    """More cepstral coefficients requested than the grid resolves."""


class DegenerateSeries(SDDBError, ValueError):
    """The series has zero sample variance (or zero residual variance)."""


class InvalidKurtosis(SDDBError, ValueError):
    """Standardized fourth moment below one for the three-point law."""


class TooFewReplicates(SDDBError, ValueError):
    """Not enough bootstrap replicates for a confidence interval."""


class ZeroVariance(SDDBError, ValueError):
    """Autocorrelation requested for a series with zero variance."""


class FloorViolation(SDDBError, ValueError):
    """A studentizer variance estimate fell below its lower bound."""


class ConfigError(SDDBError, ValueError):
    """Invalid configuration. The message starts with the field path."""

    def __init__(self, field, message):
        self.field = field
        super().__init__('{}: {}'.format(field, message))


class InputParseError(SDDBError, ValueError):
    """An input file could not be parsed. Carries the 1-based line number."""

    def __init__(self, path, line, message):
        self.path = path
        self.line = line
        super().__init__('{}:{}: {}'.format(path, line, message))


class ExplosivePath(SDDBError, ArithmeticError):
    """An AR-form pseudo series exceeded the overflow guard."""


class CombinerDomain(SDDBError, ArithmeticError):
    """A statistic combiner was evaluated outside of its domain."""
