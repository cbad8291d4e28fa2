# -*- coding: utf-8 -*-
"""
test_reliability_simulate
~~~~~~~~~~~~~~~~~~~~~~~~~

Test NHPP simulation by thinning.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import io
import logging
import math
import unittest

import numpy as np

from srgmrelease.errors import DomainError
from srgmrelease.reliability import GoParams, OhbaParams, MusaOkumotoParams, replicate_counts, simulate_nhpp, write_event_csv


logging.basicConfig(level=logging.DEBUG)
log = logging.getLogger(__name__)


class TestSimulate(unittest.TestCase):

    def test_deterministic(self):
        """Test the same seed gives the same event times."""
        go = GoParams(a=100, b=0.1)
        self.assertEqual(simulate_nhpp(go, 30, 42).tolist(), simulate_nhpp(go, 30, 42).tolist())

    def test_seed_matters(self):
        go = GoParams(a=100, b=0.1)
        self.assertNotEqual(simulate_nhpp(go, 30, 1).tolist(), simulate_nhpp(go, 30, 2).tolist())

    def test_sorted_within_horizon(self):
        times = simulate_nhpp(OhbaParams(n=80, phi=0.4), 10, 3)
        self.assertTrue(np.all(np.diff(times) >= 0))
        self.assertTrue(np.all((times >= 0) & (times <= 10)))

    def test_horizon_zero(self):
        """Test a zero horizon is rejected."""
        with self.assertRaises(DomainError):
            simulate_nhpp(GoParams(a=100, b=0.1), 0, 0)

    def test_horizon_infinite(self):
        with self.assertRaises(DomainError):
            simulate_nhpp(GoParams(a=100, b=0.1), float('inf'), 0)

    def test_write_event_csv(self):
        f = io.StringIO()
        write_event_csv([0.5, 1.0 / 3], f)
        self.assertEqual(f.getvalue(), 'time\n0.5\n0.3333333333\n')


class TestMonteCarlo(unittest.TestCase):
    """Mean event count over many replications matches the mean value function."""

    replications = 2000

    def _check(self, model, horizon):
        counts = replicate_counts(model, horizon, self.replications, seed=1000)
        expected = model.mean_value(horizon)
        se = math.sqrt(expected / self.replications)
        log.debug('%s: mean %s, expected %s, se %s', model, counts.mean(), expected, se)
        self.assertLess(abs(counts.mean() - expected), 3 * se)

    def test_go(self):
        self._check(GoParams(a=100, b=0.1), 20)

    def test_ohba(self):
        self._check(OhbaParams(n=80, phi=0.4), 5)

    def test_mo(self):
        self._check(MusaOkumotoParams(lambda0=10, theta=0.5), 10)


class TestTransformedTimes(unittest.TestCase):
    """Event times mapped through m(t) form a unit-rate Poisson process."""

    seeds = 200

    def _check(self, model, horizon):
        # Each seed's mean gap u_N / N has expectation 1 - exp(-m(horizon)) given at least one event
        means = []
        for seed in range(self.seeds):
            times = simulate_nhpp(model, horizon, seed)
            if len(times):
                means.append(np.mean(np.diff(np.concatenate(([0.0], model.mean_value(times))))))
        means = np.array(means)
        se = means.std(ddof=1) / math.sqrt(len(means))
        log.debug('%s: mean transformed gap %s, se %s', model, means.mean(), se)
        self.assertLess(abs(means.mean() - 1.0), 3 * se)

    def test_go(self):
        self._check(GoParams(a=100, b=0.1), 30)

    def test_ohba(self):
        self._check(OhbaParams(n=80, phi=0.4), 15)

    def test_mo(self):
        self._check(MusaOkumotoParams(lambda0=10, theta=0.5), 1000)


if __name__ == '__main__':
    unittest.main()
