# -*- coding: utf-8 -*-
"""
srgmrelease.utils
~~~~~~~~~~~~~~~~~

Miscellaneous utility functions.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import errno
import hashlib
import io
import json
import logging
import math
import os

import numpy as np
import six


log = logging.getLogger(__name__)


#: Significant digits used for every float written to a report.
SIGNIFICANT_DIGITS = 10


def round_sig(value, digits=SIGNIFICANT_DIGITS):
    """Round a float to a fixed number of significant digits. Non-finite values are returned unchanged."""
    value = float(value)
    if not math.isfinite(value) or value == 0:
        return value
    return float('%.*g' % (digits, value))


def format_float(value, digits=SIGNIFICANT_DIGITS):
    """Format a float for CSV output."""
    return '%.*g' % (digits, float(value))


def normalize_floats(obj, digits=SIGNIFICANT_DIGITS):
    """Return a copy of a JSON-like structure with every float rounded to ``digits`` significant digits."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (float, np.floating)):
        return round_sig(obj, digits)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, dict):
        return {six.text_type(k): normalize_floats(v, digits) for k, v in six.iteritems(obj)}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [normalize_floats(v, digits) for v in obj]
    return obj


def dumps(obj, exact=False):
    """Serialize a report to a byte-stable JSON string: sorted keys, fixed float precision.

    With ``exact`` floats keep their full precision, for values that are read back into a computation.
    """
    if not exact:
        obj = normalize_floats(obj)
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + '\n'


def write_json(obj, path, exact=False):
    """Write a report to ``path`` using :func:`dumps`."""
    ensure_dir(os.path.dirname(os.path.abspath(path)))
    with io.open(path, 'w', encoding='utf8', newline='\n') as f:
        f.write(dumps(obj, exact=exact))


def read_json(path):
    with io.open(path, encoding='utf8') as f:
        return json.load(f)


def sha256sum(path):
    """Return the hex SHA-256 digest of a file."""
    digest = hashlib.sha256()
    with io.open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(1024 * 1024), b''):
            digest.update(chunk)
    return digest.hexdigest()


def ensure_dir(path):
    """Ensure a directory exists."""
    try:
        os.makedirs(path)
    except OSError as e:
        if e.errno != errno.EEXIST:
            raise
