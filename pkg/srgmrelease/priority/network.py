# -*- coding: utf-8 -*-
"""
srgmrelease.priority.network
~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Three-layer feed-forward network turning module features into importance weights.

Sensory layer x (p units), association layer h (q units), response layer y (r units)::

    f(x) = 1 / (1 + exp(-theta x))
    h_j = f(sum_i w1[i, j] x_i)
    y_k = f(sum_j w2[j, k] h_j)
    E = 1/2 sum_k (y_k - d_k)^2

Training is full-batch gradient descent on E summed over samples, with exact gradients. Importance weights are
p_k = y_k / sum(y).

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import io
import json
import logging
import math

import numpy as np
from scipy.special import expit

from ..errors import InputError, InvariantError, NumericError
from ..model import BaseModel, BoolType, FloatType, ListType
from ..utils import write_json
from .metrics import fault_density_targets, feature_vector, project_ranges, FEATURES


log = logging.getLogger(__name__)


#: Default number of association (hidden) units.
DEFAULT_HIDDEN = 8


class NetworkWeights(object):
    """Connection weights and sigmoid gain.

    :param w1: p x q matrix, sensory to association.
    :param w2: q x r matrix, association to response.
    :param float theta: Positive sigmoid gain.
    :param int seed: Seed the weights were initialized from, kept for reproducible reruns.
    """

    def __init__(self, w1, w2, theta=1.0, seed=None):
        w1 = np.array(w1, dtype=float, copy=True)
        w2 = np.array(w2, dtype=float, copy=True)
        if w1.ndim != 2 or w2.ndim != 2:
            raise InputError('Weight matrices must be two-dimensional')
        if w1.shape[1] != w2.shape[0]:
            raise InputError('Association layer mismatch: w1 is %sx%s, w2 is %sx%s' % (w1.shape + w2.shape))
        if not (np.all(np.isfinite(w1)) and np.all(np.isfinite(w2))):
            raise NumericError('Weights must be finite')
        if not theta > 0:
            raise InvariantError('theta must be positive, got %s' % theta)
        w1.setflags(write=False)
        w2.setflags(write=False)
        self.w1 = w1
        self.w2 = w2
        self.theta = float(theta)
        self.seed = seed

    @property
    def shape(self):
        """Layer sizes (p, q, r)."""
        return self.w1.shape[0], self.w1.shape[1], self.w2.shape[1]

    def __eq__(self, other):
        return (isinstance(other, NetworkWeights) and self.theta == other.theta
                and np.array_equal(self.w1, other.w1) and np.array_equal(self.w2, other.w2))

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return '<NetworkWeights: p=%s q=%s r=%s theta=%s>' % (self.shape + (self.theta,))

    def serialize(self):
        p, q, r = self.shape
        return {
            'dimensions': {'p': p, 'q': q, 'r': r},
            'w1': self.w1.ravel().tolist(),
            'w2': self.w2.ravel().tolist(),
            'theta': self.theta,
            'seed': self.seed,
        }

    @classmethod
    def from_dict(cls, data):
        try:
            p, q, r = (int(data['dimensions'][k]) for k in ('p', 'q', 'r'))
            w1 = np.asarray(data['w1'], dtype=float).reshape(p, q)
            w2 = np.asarray(data['w2'], dtype=float).reshape(q, r)
        except (KeyError, TypeError, ValueError) as e:
            raise InputError('Malformed weights document: %s' % e)
        return cls(w1, w2, theta=data.get('theta', 1.0), seed=data.get('seed'))


class ImportanceVector(BaseModel):
    """Normalized importance weights summing to 1. ``degenerate`` flags the uniform fallback."""
    p = ListType(FloatType())
    degenerate = BoolType(default=False)

    def validate(self):
        if any(v < 0 for v in self.p):
            raise InvariantError('Importance weights must be nonnegative')
        if self.p and abs(math.fsum(self.p) - 1.0) > 1e-9:
            raise InvariantError('Importance weights must sum to 1, got %r' % math.fsum(self.p))


def sigmoid(x, theta=1.0):
    """Logistic function 1 / (1 + exp(-theta x)). Saturates without overflow."""
    if not theta > 0:
        raise InvariantError('theta must be positive, got %s' % theta)
    result = expit(theta * np.asarray(x, dtype=float))
    return float(result) if np.ndim(result) == 0 else result


def initialize_weights(p, q, r, theta=1.0, seed=0):
    """Uniform weights on [-0.5, 0.5] drawn from ``seed``."""
    rng = np.random.default_rng(seed)
    w1 = rng.uniform(-0.5, 0.5, size=(p, q))
    w2 = rng.uniform(-0.5, 0.5, size=(q, r))
    return NetworkWeights(w1, w2, theta=theta, seed=seed)


def forward(weights, x):
    """Forward pass.

    :param x: Length-p vector, or an n x p matrix to evaluate n inputs in one pass.
    :returns: (h, y) with shapes (q,) and (r,), or (n, q) and (n, r) for a matrix input.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != weights.w1.shape[0]:
        raise InputError('Input has %s features, network expects %s' % (x.shape[-1], weights.w1.shape[0]))
    h = expit(weights.theta * (x @ weights.w1))
    y = expit(weights.theta * (h @ weights.w2))
    return h, y


def loss(y, d):
    """Squared error 1/2 sum_k (y_k - d_k)^2."""
    y = np.asarray(y, dtype=float)
    d = np.asarray(d, dtype=float)
    if y.shape != d.shape:
        raise InputError('Output shape %s does not match target shape %s' % (y.shape, d.shape))
    return 0.5 * float(np.sum((y - d) ** 2))


class TrainingSet(object):
    """Input vectors x (length p) with target vectors d (length r), both in [0, 1]."""

    def __init__(self, samples):
        samples = [(np.asarray(x, dtype=float), np.asarray(d, dtype=float)) for x, d in samples]
        if samples:
            p, r = samples[0][0].shape, samples[0][1].shape
            for x, d in samples:
                if x.shape != p or d.shape != r or x.ndim != 1 or d.ndim != 1:
                    raise InputError('Training samples have inconsistent dimensions')
        self.samples = samples

    def __len__(self):
        return len(self.samples)

    @property
    def inputs(self):
        return np.array([x for x, _ in self.samples])

    @property
    def targets(self):
        return np.array([d for _, d in self.samples])


def total_loss(weights, data):
    """Loss summed over every sample of a training set."""
    _, y = forward(weights, data.inputs)
    return loss(y, data.targets)


def gradients(weights, data):
    """Exact gradients of the summed loss with respect to w1 and w2."""
    X = data.inputs
    D = data.targets
    theta = weights.theta
    H, Y = forward(weights, X)
    delta2 = (Y - D) * theta * Y * (1.0 - Y)
    g2 = H.T @ delta2
    delta1 = (delta2 @ weights.w2.T) * theta * H * (1.0 - H)
    g1 = X.T @ delta1
    return g1, g2


def train_backprop(weights, data, lr, epochs, seed=0):
    """Full-batch gradient descent.

    :param weights: Starting weights, or ``None`` to draw them from ``seed``.
    :param TrainingSet data: Non-empty training set.
    :param float lr: Nonnegative learning rate; 0 returns the weights unchanged.
    :param int epochs: Number of updates.
    :param int seed: Initialization seed, used only when ``weights`` is None.
    :returns: (trained weights, loss history with one entry per epoch before its update plus the final loss).
    """
    if len(data) == 0:
        raise InputError('Training set is empty')
    if lr < 0:
        raise InputError('Learning rate must be nonnegative, got %s' % lr)
    if epochs < 1:
        raise InputError('epochs must be positive, got %s' % epochs)
    if weights is None:
        p, r = data.samples[0][0].shape[0], data.samples[0][1].shape[0]
        weights = initialize_weights(p, DEFAULT_HIDDEN, r, seed=seed)
    w1 = np.array(weights.w1)
    w2 = np.array(weights.w2)
    current = weights
    history = []
    for epoch in range(epochs):
        value = total_loss(current, data)
        if not math.isfinite(value):
            raise NumericError('Training loss is not finite at epoch %s' % epoch, epoch=epoch)
        history.append(value)
        if lr == 0:
            continue
        g1, g2 = gradients(current, data)
        w1 -= lr * g1
        w2 -= lr * g2
        if not (np.all(np.isfinite(w1)) and np.all(np.isfinite(w2))):
            raise NumericError('Weights diverged at epoch %s' % epoch, epoch=epoch)
        current = NetworkWeights(w1, w2, theta=weights.theta, seed=weights.seed)
        if epoch % 500 == 0:
            log.debug('Epoch %s: loss %.6g', epoch, value)
    history.append(total_loss(current, data))
    log.info('Trained for %s epochs, loss %.6g -> %.6g', epochs, history[0], history[-1])
    return current, history


def importance_weights(y):
    """Normalize response outputs into importance weights p_k = y_k / sum(y).

    An all-zero input falls back to uniform weights with ``degenerate`` set.
    """
    y = [float(v) for v in np.ravel(y)]
    if not y:
        raise InputError('Importance weights need at least one output')
    if any(v < 0 or not math.isfinite(v) for v in y):
        raise InputError('Response outputs must be finite and nonnegative')
    total = math.fsum(y)
    if total == 0:
        log.warning('All response outputs are zero, using uniform importance weights')
        return ImportanceVector(p=[1.0 / len(y)] * len(y), degenerate=True)
    return ImportanceVector(p=[v / total for v in y])


def score_modules(records, hidden=DEFAULT_HIDDEN, theta=1.0, lr=0.5, epochs=2000, seed=0, weights=None):
    """Importance weight of every module of a project.

    Features are evaluated for all modules in one batched forward pass through a single response unit. The
    network is trained on modules with a fault history (targets from :func:`fault_density_targets`) unless
    ``weights`` are given. With neither, the network is bypassed and the weight-priority scores are normalized.

    :returns: dict with ``importance`` (:class:`ImportanceVector`, in record order), ``method``
              (``network``, ``pretrained`` or ``bypass``), ``weights`` (or None), ``loss_history`` and ``features``.
    """
    if not records:
        raise InputError('No modules to score')
    ranges = project_ranges(records)
    features = [feature_vector(r, ranges) for r in records]
    targets = fault_density_targets(records)
    history = []
    if weights is not None:
        method = 'pretrained'
        if weights.shape[0] != len(FEATURES):
            raise InputError('Weights expect %s features, modules have %s' % (weights.shape[0], len(FEATURES)))
    elif targets:
        method = 'network'
        samples = [(x, [targets[r.id]]) for r, x in zip(records, features) if r.id in targets]
        initial = initialize_weights(len(FEATURES), hidden, 1, theta=theta, seed=seed)
        weights, history = train_backprop(initial, TrainingSet(samples), lr=lr, epochs=epochs)
    else:
        method = 'bypass'
    if method == 'bypass':
        log.info('No fault history, using weight priority scores directly')
        importance = importance_weights([r.weight_priority_score for r in records])
    else:
        _, y = forward(weights, np.array(features))
        importance = importance_weights(y[:, 0])
    return {
        'importance': importance,
        'method': method,
        'weights': weights,
        'loss_history': history,
        'features': features,
    }


def save_weights(weights, path):
    """Write weights as JSON: dimensions, row-major matrices, theta and seed. Floats keep full precision."""
    write_json(weights.serialize(), path, exact=True)


def load_weights(path):
    """Read weights written by :func:`save_weights`."""
    with io.open(path, encoding='utf8') as f:
        try:
            data = json.load(f)
        except ValueError as e:
            raise InputError('%s is not valid JSON: %s' % (path, e))
    return NetworkWeights.from_dict(data)
