# -*- coding: utf-8 -*-
"""
srgmrelease.reliability.estimate
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Grouped-data maximum likelihood estimation of NHPP model parameters.

The log-likelihood of interval counts k_i over (t_{i-1}, t_i] is::

    sum_i [k_i ln(dm_i) - dm_i - ln(k_i!)],    dm_i = m(t_i) - m(t_{i-1})

It is maximised with Nelder–Mead in log-parameter space from several starting points.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import logging
import math

import numpy as np
from scipy.optimize import minimize
from scipy.special import gammaln

from ..errors import InputError, InvariantError
from ..model import BaseModel, BoolType, FloatType, IntType, ModelType, StringType
from .models import KINDS, MeanValueModel, model_class, params_from_dict


log = logging.getLogger(__name__)


#: Mean value increments are clamped to this value inside the log-likelihood.
MIN_INCREMENT = 1e-12

#: Multipliers applied to the rate-like parameter of the moment-style guess for each start.
START_SCALES = (1.0, 3.0, 1.0 / 3.0)


class FitResult(BaseModel):
    """Outcome of fitting one model kind to a dataset."""
    kind = StringType(required=True)
    params = ModelType(MeanValueModel, null=True)
    log_likelihood = FloatType(finite=False, null=True)
    aic = FloatType(finite=False, null=True)
    converged = BoolType(default=False)
    iterations = IntType(default=0)
    starts = IntType(default=0)
    message = StringType(default='')

    def validate(self):
        if self.converged and self.params is None:
            raise InvariantError('A converged fit must carry parameters')


def log_likelihood(model, dataset):
    """Grouped-data NHPP log-likelihood of ``dataset`` under ``model``."""
    times = np.concatenate(([0.0], dataset.times))
    m = model.mean_value(times)
    dm = np.maximum(np.diff(m), MIN_INCREMENT)
    k = dataset.increments.astype(float)
    return float(np.sum(k * np.log(dm) - dm - gammaln(k + 1.0)))


def initial_guess(kind, dataset):
    """Moment-style starting point: 1.2 x observed faults for the fault content, 1/last time for the rate."""
    total = float(dataset.total_faults)
    last = float(dataset.last_time)
    if kind == 'go':
        return np.array([1.2 * total, 1.0 / last])
    if kind == 'ohba':
        return np.array([1.2 * total, 2.0 / last])
    if kind == 'mo':
        first = dataset.observations[0]
        lambda0 = max(first.cumulative_faults / first.time, total / last)
        return np.array([lambda0, 1.0 / total])
    raise InputError('Unknown model kind %r' % kind)


def _starts(kind, dataset, count):
    guess = initial_guess(kind, dataset)
    starts = []
    for scale in START_SCALES[:count]:
        x0 = guess.copy()
        # Scale the rate-like parameter; the fault content guess stays anchored to the data
        x0[1] *= scale
        starts.append(x0)
    return starts


def _check_dataset(dataset):
    if len(dataset) < 3:
        raise InputError('Fitting needs at least 3 observations, got %s' % len(dataset))
    if dataset.total_faults < 1:
        raise InputError('Fitting needs at least one observed fault')


def fit_model(dataset, kind='go', starts=3, max_iterations=4000):
    """Fit a model kind to a dataset by maximum likelihood.

    Non-convergence is reported with ``converged=False`` rather than raised. The best start by log-likelihood wins;
    ties go to the earliest start.

    :param FaultDataset dataset: Observations with at least 3 points and one fault.
    :param string kind: One of ``go``, ``ohba``, ``mo``.
    :param int starts: Number of starting points, 1 to 3.
    :param int max_iterations: Iteration cap for each start.
    :rtype: FitResult
    """
    cls = model_class(kind)
    _check_dataset(dataset)
    if not 1 <= starts <= len(START_SCALES):
        raise InputError('starts must be between 1 and %s' % len(START_SCALES))

    def objective(z):
        try:
            model = cls.from_vector(np.exp(z))
        except InvariantError:
            return np.inf
        value = -log_likelihood(model, dataset)
        return value if math.isfinite(value) else np.inf

    best = None
    total_iterations = 0
    for index, x0 in enumerate(_starts(kind, dataset, starts)):
        res = minimize(objective, np.log(x0), method='Nelder-Mead',
                       options={'maxiter': max_iterations, 'maxfev': 2 * max_iterations, 'xatol': 1e-9, 'fatol': 1e-11})
        total_iterations += int(res.nit)
        candidate = _candidate(cls, res)
        log.debug('%s start %s: x0=%s success=%s loglik=%s', kind, index, x0, res.success, candidate[1])
        # Strict comparison keeps the earliest start on ties
        if candidate[0] is not None and (best is None or candidate[1] > best[1]):
            best = candidate + (res,)

    if best is None:
        log.warning('No start produced valid %s parameters', kind)
        return FitResult(kind=kind, converged=False, iterations=total_iterations, starts=starts,
                         message='No start produced valid parameters')
    params, loglik, converged, res = best
    result = FitResult(
        kind=kind,
        params=params,
        log_likelihood=loglik,
        aic=2.0 * len(cls.param_names) - 2.0 * loglik,
        converged=converged,
        iterations=total_iterations,
        starts=starts,
        message=str(res.message),
    )
    log.info('Fitted %s: %s (log-likelihood %.6g, converged=%s)', kind, params, loglik, converged)
    return result


def _candidate(cls, res):
    """Return (params, log-likelihood, converged) for an optimiser result, or (None, -inf, False)."""
    x = np.exp(res.x)
    if not np.all(np.isfinite(x)) or not np.isfinite(res.fun):
        return None, -np.inf, False
    try:
        params = cls.from_vector(x)
    except InvariantError:
        return None, -np.inf, False
    return params, -float(res.fun), bool(res.success)


def select_model(dataset, kinds=KINDS, starts=3, max_iterations=4000):
    """Fit every kind and return the converged fit with the lowest AIC. Ties go to the earlier kind.

    When nothing converges the fit with the highest log-likelihood is returned, still flagged as not converged.
    """
    fits = [fit_model(dataset, kind, starts=starts, max_iterations=max_iterations) for kind in kinds]
    converged = [f for f in fits if f.converged]
    if converged:
        best = converged[0]
        for f in converged[1:]:
            if f.aic < best.aic:
                best = f
        return best
    with_params = [f for f in fits if f.params is not None]
    if not with_params:
        return fits[0]
    best = with_params[0]
    for f in with_params[1:]:
        if f.log_likelihood > best.log_likelihood:
            best = f
    return best


def fit_result_from_dict(data):
    """Rebuild a :class:`FitResult` from its serialized form."""
    if not isinstance(data, dict) or 'kind' not in data:
        raise InputError('Fit document must be a mapping with a "kind" key')
    values = {k: v for k, v in data.items() if k in FitResult.fields}
    if values.get('params') is not None:
        values['params'] = params_from_dict(values['params'])
    return FitResult(**values)
