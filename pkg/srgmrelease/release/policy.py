# -*- coding: utf-8 -*-
"""
srgmrelease.release.policy
~~~~~~~~~~~~~~~~~~~~~~~~~~

Cost-optimal release time.

For the Goel–Okumoto model with the single-version cost there is a closed form. With C_r = c3 / (c2 - c1):

- ab <= C_r: no testing, T* = 0.
- ab > C_r: T0 = ln(ab / C_r) / b and T* = min(T0, t).

Other models and the multi-version cost are minimised numerically by :func:`optimize_release_numeric`.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import logging
import math

import numpy as np

from ..errors import InputError, InvariantError, NumericError
from ..model import BaseModel, FloatType, StringType
from ..optimize import golden_section
from ..reliability.models import GoParams
from .cost import cost_ratio, expected_cost


log = logging.getLogger(__name__)


#: Testing is not worthwhile, release immediately.
NO_TESTING = 'NO_TESTING'
#: The unconstrained optimum lies inside the life cycle.
INTERIOR = 'INTERIOR'
#: The unconstrained optimum lies at or beyond the end of the life cycle.
FULL_LIFECYCLE = 'FULL_LIFECYCLE'

CASES = (NO_TESTING, INTERIOR, FULL_LIFECYCLE)

#: Number of points in the coarse grid scan of the numeric optimiser.
GRID_POINTS = 1000

#: Absolute time tolerance of the golden-section refinement.
TIME_TOLERANCE = 1e-6


class ReleasePolicy(BaseModel):
    """Optimal release time with its policy case and expected cost."""
    t_star = FloatType(required=True)
    case = StringType(required=True)
    expected_cost_at_t_star = FloatType(required=True)
    t0 = FloatType(null=True)
    lifecycle_t = FloatType(required=True)
    method = StringType(default='closed_form')
    residual_faults = FloatType(null=True)

    def validate(self):
        if self.case not in CASES:
            raise InvariantError('Unknown policy case %r' % self.case)
        if not 0 <= self.t_star <= self.lifecycle_t:
            raise InvariantError('t_star %s outside [0, %s]' % (self.t_star, self.lifecycle_t))
        if (self.case == NO_TESTING) != (self.t_star == 0):
            raise InvariantError('Case NO_TESTING must coincide with t_star = 0 (case %s, t_star %s)'
                                 % (self.case, self.t_star))

    @property
    def c0(self):
        """Optimal testing cost, the expected cost at T*."""
        return self.expected_cost_at_t_star


def optimal_release_time(go, costs):
    """Closed-form optimal release policy for the Goel–Okumoto model.

    :param GoParams go: Fitted Goel–Okumoto parameters.
    :param CostParams costs: Cost coefficients.
    :rtype: ReleasePolicy
    """
    if not isinstance(go, GoParams):
        raise InputError('The closed-form policy needs Goel–Okumoto parameters, got %s' % go.__class__.__name__)
    cr = cost_ratio(costs)
    ab = go.a * go.b
    t = costs.lifecycle_t
    if ab <= cr:
        t_star, t0, case = 0.0, None, NO_TESTING
    else:
        # c3 = 0 makes testing free, so the unconstrained optimum is unbounded
        t0 = math.log(ab / cr) / go.b if cr > 0 else None
        if t0 is not None and t0 < t:
            t_star, case = t0, INTERIOR
        else:
            t_star, case = t, FULL_LIFECYCLE
    log.info('Closed-form policy: ab=%.6g C_r=%.6g case=%s T*=%.6g', ab, cr, case, t_star)
    return ReleasePolicy(
        t_star=t_star,
        case=case,
        expected_cost_at_t_star=expected_cost(go, costs, t_star),
        t0=t0,
        lifecycle_t=t,
        method='closed_form',
        residual_faults=go.mean_value(t) - go.mean_value(t_star),
    )


def optimize_release_numeric(model, cost_fn, lifecycle_t, grid_points=GRID_POINTS, tol=TIME_TOLERANCE):
    """Minimise an expected-cost function of T over [0, lifecycle_t].

    A coarse grid scan locates the best bracket, golden-section search refines it, and the boundaries 0 and
    ``lifecycle_t`` are always candidates. At equal cost the smallest T wins.

    :param model: Model the cost refers to, used for the residual fault count; may be ``None``.
    :param cost_fn: Callable of T returning the expected cost.
    :param float lifecycle_t: Life cycle length.
    :rtype: ReleasePolicy
    """
    if not lifecycle_t > 0:
        raise InputError('lifecycle_t must be positive, got %s' % lifecycle_t)
    grid = np.linspace(0.0, lifecycle_t, grid_points)
    grid[-1] = lifecycle_t
    costs = np.array([float(cost_fn(float(T))) for T in grid])
    if not np.all(np.isfinite(costs)):
        bad = grid[~np.isfinite(costs)][0]
        raise NumericError('Expected cost is not finite at T=%s' % bad)

    # np.argmin returns the first, i.e. smallest T, among equal minima
    i = int(np.argmin(costs))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid_points - 1)]
    refined_t, refined_c = golden_section(lambda T: float(cost_fn(T)), lo, hi, tol=tol)

    candidates = [(0.0, costs[0]), (float(lifecycle_t), costs[-1]), (float(grid[i]), costs[i]),
                  (refined_t, refined_c)]
    t_star, c_star = min(candidates, key=lambda tc: (tc[1], tc[0]))
    log.debug('Numeric policy: grid best T=%s, refined T=%s, chosen T=%s', grid[i], refined_t, t_star)

    if t_star == 0:
        case, t0 = NO_TESTING, None
    elif t_star >= lifecycle_t:
        case, t0, t_star = FULL_LIFECYCLE, None, float(lifecycle_t)
    else:
        case, t0 = INTERIOR, t_star
    residual = None
    if model is not None:
        residual = model.mean_value(lifecycle_t) - model.mean_value(t_star)
    return ReleasePolicy(
        t_star=t_star,
        case=case,
        expected_cost_at_t_star=float(c_star),
        t0=t0,
        lifecycle_t=lifecycle_t,
        method='numeric',
        residual_faults=residual,
    )
