# -*- coding: utf-8 -*-
"""
srgmrelease.release.cost
~~~~~~~~~~~~~~~~~~~~~~~~

Expected total cost of testing and operation.

For a release (testing) time T and a life cycle of length t::

    C(T) = c1 m(T) + c2 [m(t) - m(T)] + c3 T

and, when faults of the previous version n(T) surface during current testing at cost c4 each::

    C(T) = c1 m(T) + c2 [m(t) - m(T) - n(T)] + c3 T + c4 n(T)

The multi-version form subtracts the previous version's count from the current version's operational residual
exactly as stated; it is evaluated as c1 m(T) + c2 [m(t) - m(T)] + c3 T + (c4 - c2) n(T), the same expression
regrouped so that n = 0 and c4 = c2 both reproduce the single-version cost bit for bit.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import functools
import logging

import numpy as np

from ..errors import DomainError, InvariantError
from ..model import BaseModel, FloatType
from ..reliability.models import mean_value


log = logging.getLogger(__name__)


class CostParams(BaseModel):
    """Cost coefficients and life cycle length.

    ``c1`` and ``c2`` are the costs of fixing a fault in testing and in operation (c2 > c1), ``c3`` the testing
    cost per unit time, ``c4`` the cost per previous-version fault surfacing during current testing, and
    ``lifecycle_t`` the software life cycle length.
    """
    c1 = FloatType(required=True)
    c2 = FloatType(required=True)
    c3 = FloatType(required=True)
    c4 = FloatType(default=0.0)
    lifecycle_t = FloatType(required=True)

    def validate(self):
        for name in ('c1', 'c3', 'c4'):
            if self[name] < 0:
                raise InvariantError('%s must be nonnegative, got %s' % (name, self[name]))
        if not self.lifecycle_t > 0:
            raise InvariantError('lifecycle_t must be positive, got %s' % self.lifecycle_t)
        if not self.c2 > self.c1:
            raise InvariantError('c2 (%s) must exceed c1 (%s)' % (self.c2, self.c1))


def _check_release_time(T, costs):
    T_arr = np.asarray(T, dtype=float)
    if np.any(np.isnan(T_arr)) or np.any(T_arr < 0) or np.any(T_arr > costs.lifecycle_t):
        raise DomainError('Release time must lie in [0, %s], got %s' % (costs.lifecycle_t, T))
    return T_arr


def expected_cost(model, costs, T):
    """Expected total cost c1 m(T) + c2 [m(t) - m(T)] + c3 T of releasing at ``T``.

    :param model: Goel–Okumoto parameters, or any other model variant.
    :param CostParams costs: Cost coefficients.
    :param T: Release time in [0, lifecycle_t], scalar or array.
    """
    _check_release_time(T, costs)
    m_T = model.mean_value(T)
    m_t = model.mean_value(costs.lifecycle_t)
    return costs.c1 * m_T + costs.c2 * (m_t - m_T) + costs.c3 * T


def expected_cost_multiversion(model, prev_mean, costs, T):
    """Expected total cost including previous-version faults n(T) surfacing during current testing.

    :param model: Current version model.
    :param prev_mean: Previous version model, or ``None`` for the zero function.
    :param CostParams costs: Cost coefficients including ``c4``.
    :param T: Release time in [0, lifecycle_t].
    """
    _check_release_time(T, costs)
    n_T = mean_value(prev_mean, T)
    return expected_cost(model, costs, T) + (costs.c4 - costs.c2) * n_T


def cost_ratio(costs):
    """Threshold c3 / (c2 - c1) compared against ab by the release policy."""
    if not costs.c2 > costs.c1:
        raise InvariantError('c2 (%s) must exceed c1 (%s)' % (costs.c2, costs.c1))
    return costs.c3 / (costs.c2 - costs.c1)


def release_cost_function(model, costs, prev=None):
    """Return C(T) as a function of T alone, multi-version when ``prev`` is given."""
    if prev is None:
        return functools.partial(expected_cost, model, costs)
    return functools.partial(expected_cost_multiversion, model, prev, costs)


def cost_curve(cost_fn, lifecycle_t, points=1000):
    """Sample (T, C(T)) on an even grid over [0, lifecycle_t], both ends included."""
    T = np.linspace(0.0, lifecycle_t, points)
    T[-1] = lifecycle_t
    C = np.array([float(cost_fn(float(x))) for x in T])
    return T, C
