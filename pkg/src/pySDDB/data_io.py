# -*- coding: utf-8 -*-
"""
Reading series, spectra and JSON configurations from files.

A series file holds one value per line with an optional header line, or
two columns t,value where t must increase strictly and is dropped. A
spectrum file is the output of spectral_density.export_spectrum, a CSV with
the header lambda,value.
"""

import json
import logging
import re

import numpy as np
import pandas as pd

from .exceptions import InputParseError
from .spectral_density import spectral_density

logger = logging.getLogger(__name__)

SPECTRUM_HEADER = ['lambda', 'value']


def _read_rows(path):
    # raw rows as strings, with their 1-based line numbers; only empty fields
    # count as missing, 'nan' or 'NA' must fail as non-numbers
    try:
        frame = pd.read_csv(path, header=None, dtype=str,
                            skip_blank_lines=False, skipinitialspace=True,
                            keep_default_na=False, na_values=[''])
    except FileNotFoundError:
        raise InputParseError(path, 0, 'no such file')
    except pd.errors.EmptyDataError:
        raise InputParseError(path, 1, 'file is empty')
    except pd.errors.ParserError as err:
        found = re.search(r'line (\d+)', str(err))
        raise InputParseError(path, int(found.group(1)) if found else 0,
                              'inconsistent number of fields')
    frame.index = frame.index + 1
    return frame.dropna(how='all')


def _to_float(text, path, line):
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise InputParseError(path, line, 'not a number: {!r}'.format(text))
    if not np.isfinite(value):
        raise InputParseError(path, line, 'value is not finite')
    return value


def _is_header(row):
    for text in row:
        try:
            float(text)
        except (TypeError, ValueError):
            return True
    return False


def is_spectrum_file(path):
    rows = _read_rows(path)
    if rows.empty:
        return False
    first = [str(text).strip() for text in rows.iloc[0].tolist()]
    return first == SPECTRUM_HEADER


def read_series(path):
    """
    Observations from a one or two column CSV file.

    Parameters
    ----------
    path : str
        File path.

    Returns
    -------
    ndarray
        The observations.

    """
    rows = _read_rows(path)
    if rows.empty:
        raise InputParseError(path, 1, 'no observations')
    if rows.shape[1] > 2:
        raise InputParseError(path, int(rows.index[0]),
                              'expected one value or t,value per line')
    if _is_header(rows.iloc[0].tolist()):
        rows = rows.iloc[1:]

    values = []
    previous_t = None
    for line, row in rows.iterrows():
        fields = row.tolist()
        if rows.shape[1] == 2:
            if any(pd.isna(text) for text in fields):
                raise InputParseError(path, line, 'expected t,value')
            t = _to_float(fields[0], path, line)
            if previous_t is not None and t <= previous_t:
                raise InputParseError(path, line,
                                      't does not increase ({} after {})'
                                      .format(t, previous_t))
            previous_t = t
            values.append(_to_float(fields[1], path, line))
        else:
            values.append(_to_float(fields[0], path, line))
    if not values:
        raise InputParseError(path, int(rows.index[-1]) if len(rows.index)
                              else 1, 'no observations')
    logger.debug('Read %d observations from %s', len(values), path)
    return np.asarray(values)


def read_spectrum(path):
    """A spectral_density from a lambda,value CSV file."""
    rows = _read_rows(path)
    header = [str(text).strip() for text in rows.iloc[0].tolist()]
    if header != SPECTRUM_HEADER:
        raise InputParseError(path, int(rows.index[0]),
                              'expected the header lambda,value')
    lambdas = []
    values = []
    for line, row in rows.iloc[1:].iterrows():
        lambdas.append(_to_float(row.iloc[0], path, line))
        values.append(_to_float(row.iloc[1], path, line))
    frame = pd.DataFrame({'lambda': lambdas, 'value': values})
    try:
        return spectral_density.from_frame(frame)
    except ValueError as err:
        raise InputParseError(path, int(rows.index[-1]), str(err))


def read_json(path):
    """Parsed JSON content; syntax errors carry their line number."""
    with open(path, 'r') as json_file:
        try:
            return json.load(json_file)
        except json.JSONDecodeError as err:
            raise InputParseError(path, err.lineno, err.msg)


def write_frame(frame, out=None, float_format='%.6g'):
    """CSV to a path, or returned as text when out is None."""
    if out is None:
        return frame.to_csv(index=False, float_format=float_format)
    frame.to_csv(out, index=False, float_format=float_format)
    return None
