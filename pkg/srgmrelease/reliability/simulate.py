# -*- coding: utf-8 -*-
"""
srgmrelease.reliability.simulate
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

NHPP event simulation by thinning, used as a testing oracle for the mean value functions and the estimators.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import csv
import logging
import math

import numpy as np

from ..errors import DomainError


log = logging.getLogger(__name__)


def simulate_nhpp(model, horizon, seed):
    """Simulate failure times of an NHPP on [0, horizon].

    Candidate points of a homogeneous process with rate equal to the supremum of the intensity on [0, horizon] are
    drawn and each is kept with probability intensity(t) / supremum. The same seed always gives the same times.

    :param model: Any of the model parameter variants.
    :param float horizon: Positive end of the observation window.
    :param int seed: Seed for :func:`numpy.random.default_rng`.
    :returns: Sorted event times as a float array.
    """
    horizon = float(horizon)
    if not horizon > 0 or not math.isfinite(horizon):
        raise DomainError('Simulation horizon must be positive and finite, got %s' % horizon)
    rng = np.random.default_rng(seed)
    bound = model.supremum_intensity(horizon)
    count = rng.poisson(bound * horizon)
    candidates = np.sort(rng.uniform(0.0, horizon, size=count))
    accept = rng.uniform(0.0, 1.0, size=count) * bound <= model.intensity(candidates)
    events = candidates[accept]
    log.debug('Thinning kept %s of %s candidates on [0, %s]', len(events), count, horizon)
    return events


def replicate_counts(model, horizon, replications, seed):
    """Event counts of ``replications`` independent runs, seeded ``seed``, ``seed + 1``, ..."""
    return np.array([len(simulate_nhpp(model, horizon, seed + i)) for i in range(replications)])


def write_event_csv(times, f):
    """Write event times to an open text file, one per row under a ``time`` header."""
    writer = csv.writer(f, lineterminator='\n')
    writer.writerow(['time'])
    for t in times:
        writer.writerow(['%.10g' % t])
