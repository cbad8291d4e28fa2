# -*- coding: utf-8 -*-
"""
srgmrelease.reliability.models
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Mean value functions and failure intensities of the NHPP software reliability growth models.

Three models are provided:

- Goel–Okumoto exponential model, m(t) = a(1 - exp(-bt)).
- Ohba delayed S-shaped model, m(t) = n(1 - (1 + phi t) exp(-phi t)).
- Musa–Okumoto logarithmic Poisson model, m(t) = ln(lambda0 theta t + 1) / theta.

All functions accept a scalar time or a numpy array of times. Scalars give floats back.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
from abc import abstractmethod
import logging
import math

import numpy as np

from ..errors import DomainError, InputError, InvariantError
from ..model import BaseModel, FloatType


log = logging.getLogger(__name__)


def as_time(t):
    """Convert ``t`` to a float array, raising DomainError for negative or NaN times."""
    arr = np.asarray(t, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise DomainError('Time must be nonnegative, got %s' % (t,))
    return arr


def _scalar_or_array(arr):
    if np.ndim(arr) == 0:
        return float(arr)
    return arr


class MeanValueModel(BaseModel):
    """Fitted parameters of an NHPP mean value function."""

    #: Short selector used on the command line and in serialized output.
    kind = None

    #: Parameter names in the order used by :meth:`vector` and :meth:`from_vector`.
    param_names = ()

    def validate(self):
        for name in self.param_names:
            if not self[name] > 0:
                raise InvariantError('%s.%s must be positive, got %r' % (self.__class__.__name__, name, self[name]))

    @abstractmethod
    def _mean(self, t):
        """Mean value on a validated float array."""

    @abstractmethod
    def _intensity(self, t):
        """Intensity on a validated float array."""

    @abstractmethod
    def supremum_intensity(self, horizon):
        """Least upper bound of the intensity on [0, horizon]."""

    @property
    def asymptote(self):
        """Expected number of faults eventually detected, or infinity for unbounded models."""
        return float('inf')

    def mean_value(self, t):
        """Expected cumulative number of faults detected by time ``t``."""
        return _scalar_or_array(self._mean(as_time(t)))

    def intensity(self, t):
        """Failure intensity, the derivative of the mean value function, at time ``t``."""
        return _scalar_or_array(self._intensity(as_time(t)))

    def vector(self):
        return np.array([self[name] for name in self.param_names], dtype=float)

    @classmethod
    def from_vector(cls, x):
        return cls(**dict(zip(cls.param_names, (float(v) for v in x))))

    def serialize(self):
        data = super(MeanValueModel, self).serialize()
        data['kind'] = self.kind
        return data


class GoParams(MeanValueModel):
    """Goel–Okumoto parameters: expected eventual faults ``a`` and per-fault detection rate ``b``."""

    kind = 'go'
    param_names = ('a', 'b')

    a = FloatType(required=True)
    b = FloatType(required=True)

    @property
    def asymptote(self):
        return self.a

    def _mean(self, t):
        return -self.a * np.expm1(-self.b * t)

    def _intensity(self, t):
        return self.a * self.b * np.exp(-self.b * t)

    def supremum_intensity(self, horizon):
        # Decreasing intensity, maximal at t = 0
        return self.a * self.b


class OhbaParams(MeanValueModel):
    """Ohba delayed S-shaped parameters: expected eventual faults ``n`` and shape rate ``phi``."""

    kind = 'ohba'
    param_names = ('n', 'phi')

    n = FloatType(required=True)
    phi = FloatType(required=True)

    @property
    def asymptote(self):
        return self.n

    def _mean(self, t):
        x = self.phi * t
        with np.errstate(invalid='ignore', over='ignore'):
            m = self.n * (-np.expm1(-x) - x * np.exp(-x))
        return np.where(np.isinf(t), self.n, m)

    def _intensity(self, t):
        x = self.phi * t
        with np.errstate(invalid='ignore', over='ignore'):
            lam = self.n * self.phi * x * np.exp(-x)
        return np.where(np.isinf(t), 0.0, lam)

    def supremum_intensity(self, horizon):
        # Intensity peaks at t = 1/phi
        return self.n * self.phi / math.e


class MusaOkumotoParams(MeanValueModel):
    """Musa–Okumoto parameters: initial failure intensity ``lambda0`` and decay parameter ``theta``."""

    kind = 'mo'
    param_names = ('lambda0', 'theta')

    lambda0 = FloatType(required=True)
    theta = FloatType(required=True)

    def _mean(self, t):
        return np.log1p(self.lambda0 * self.theta * t) / self.theta

    def _intensity(self, t):
        return self.lambda0 / (self.lambda0 * self.theta * t + 1.0)

    def supremum_intensity(self, horizon):
        return self.lambda0


#: Model classes by selector.
MODELS = {cls.kind: cls for cls in (GoParams, OhbaParams, MusaOkumotoParams)}

#: Model selectors in canonical order.
KINDS = ('go', 'ohba', 'mo')


def model_class(kind):
    """Return the parameter class for a model selector."""
    try:
        return MODELS[kind]
    except KeyError:
        raise InputError('Unknown model kind %r, expected one of %s' % (kind, ', '.join(KINDS)))


def params_from_dict(data):
    """Build parameters from a serialized dictionary with a ``kind`` key."""
    if not isinstance(data, dict) or 'kind' not in data:
        raise InputError('Model parameters must be a mapping with a "kind" key')
    cls = model_class(data['kind'])
    missing = [name for name in cls.param_names if name not in data]
    if missing:
        raise InputError('Missing %s parameter(s): %s' % (cls.kind, ', '.join(missing)))
    return cls(**{name: data[name] for name in cls.param_names})


def mean_value_go(params, t):
    """Goel–Okumoto mean value a(1 - exp(-bt))."""
    return params.mean_value(t)


def mean_value_ohba(params, t):
    """Ohba S-shaped mean value n(1 - (1 + phi t) exp(-phi t))."""
    return params.mean_value(t)


def mean_value_mo(params, t):
    """Musa–Okumoto mean value ln(lambda0 theta t + 1) / theta."""
    return params.mean_value(t)


def mean_value(model, t):
    """Mean value of any model variant. ``None`` is the zero function."""
    if model is None:
        return _scalar_or_array(np.zeros_like(as_time(t)))
    return model.mean_value(t)


def intensity(model, t):
    """Failure intensity of any model variant at time ``t``."""
    return model.intensity(t)


def residual_faults(model, T, lifecycle_t):
    """Expected faults left to surface in operation between release ``T`` and the end of the life cycle."""
    if T > lifecycle_t:
        raise DomainError('Release time %s exceeds life cycle length %s' % (T, lifecycle_t))
    return model.mean_value(lifecycle_t) - model.mean_value(T)


__all__ = [
    'GoParams', 'OhbaParams', 'MusaOkumotoParams', 'MeanValueModel', 'MODELS', 'KINDS', 'model_class',
    'params_from_dict', 'mean_value_go', 'mean_value_ohba', 'mean_value_mo', 'mean_value', 'intensity',
    'residual_faults', 'as_time',
]
