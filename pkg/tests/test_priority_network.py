# -*- coding: utf-8 -*-
"""
test_priority_network
~~~~~~~~~~~~~~~~~~~~~

Test the prioritization network.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import logging
import math
import os
import shutil
import tempfile
import unittest

import numpy as np

from srgmrelease.errors import InputError, InvariantError, NumericError
from srgmrelease.priority import (ModuleRecord, NetworkWeights, TrainingSet, forward, gradients, importance_weights,
                                  initialize_weights, load_weights, loss, read_metrics_csv, save_weights,
                                  score_modules, sigmoid, total_loss, train_backprop)
from srgmrelease.utils import format_float


logging.basicConfig(level=logging.DEBUG)
log = logging.getLogger(__name__)

DATA = os.path.join(os.path.dirname(__file__), 'data')


def perturbed(weights, which, matrix):
    matrices = {'w1': weights.w1, 'w2': weights.w2}
    matrices[which] = matrix
    return NetworkWeights(matrices['w1'], matrices['w2'], theta=weights.theta)


def random_problem(rng, samples=5):
    p, q, r = rng.integers(1, 6), rng.integers(1, 6), rng.integers(1, 4)
    weights = initialize_weights(p, q, r, theta=rng.uniform(0.5, 2), seed=int(rng.integers(1000)))
    data = TrainingSet([(rng.uniform(0, 1, p), rng.uniform(0, 1, r)) for _ in range(samples)])
    return weights, data


class TestSigmoid(unittest.TestCase):

    def test_midpoint(self):
        self.assertEqual(sigmoid(0), 0.5)

    def test_saturates(self):
        """Test large inputs saturate without overflow."""
        self.assertEqual(sigmoid(1000), 1.0)
        self.assertEqual(sigmoid(-1000), 0.0)

    def test_gain(self):
        self.assertAlmostEqual(sigmoid(1, theta=2), 1 / (1 + math.exp(-2)), places=15)

    def test_bad_gain(self):
        with self.assertRaises(InvariantError):
            sigmoid(1, theta=0)


class TestForward(unittest.TestCase):

    def test_shapes(self):
        weights = initialize_weights(4, 3, 2, seed=1)
        h, y = forward(weights, [0.1, 0.2, 0.3, 0.4])
        self.assertEqual(h.shape, (3,))
        self.assertEqual(y.shape, (2,))
        H, Y = forward(weights, np.zeros((5, 4)))
        self.assertEqual(Y.shape, (5, 2))

    def test_batch_matches_single(self):
        weights = initialize_weights(3, 4, 1, seed=2)
        X = np.array([[0.1, 0.5, 0.9], [1.0, 0.0, 0.3]])
        _, Y = forward(weights, X)
        for x, y in zip(X, Y):
            self.assertTrue(np.allclose(forward(weights, x)[1], y, rtol=0, atol=1e-15))

    def test_outputs_in_unit_interval(self):
        _, y = forward(initialize_weights(3, 4, 2, seed=3), [1, 1, 1])
        self.assertTrue(np.all((y > 0) & (y < 1)))

    def test_single_unit_example(self):
        """Test one unit per layer with unit weights maps x = 0 to h = 0.5 and y = sigmoid(0.5)."""
        weights = NetworkWeights([[1.0]], [[1.0]], theta=1.0)
        h, y = forward(weights, [0.0])
        self.assertEqual(h.tolist(), [0.5])
        self.assertAlmostEqual(y[0], 1 / (1 + math.exp(-0.5)), places=15)
        self.assertAlmostEqual(y[0], 0.6225, places=4)

    def test_wrong_input_size(self):
        with self.assertRaises(InputError):
            forward(initialize_weights(3, 4, 2), [1, 2])

    def test_initialization_range(self):
        weights = initialize_weights(10, 8, 3, seed=4)
        self.assertTrue(np.all(np.abs(weights.w1) <= 0.5))
        self.assertTrue(np.all(np.abs(weights.w2) <= 0.5))
        self.assertEqual(weights, initialize_weights(10, 8, 3, seed=4))

    def test_loss(self):
        self.assertEqual(loss([0.5, 1.0], [0.0, 1.0]), 0.125)
        with self.assertRaises(InputError):
            loss([0.5], [0.5, 0.5])


class TestGradients(unittest.TestCase):

    def test_finite_differences(self):
        """Test backprop gradients against central finite differences."""
        rng = np.random.default_rng(99)
        eps = 1e-5
        for _ in range(20):
            weights, data = random_problem(rng)
            g1, g2 = gradients(weights, data)
            for analytic, which in ((g1, 'w1'), (g2, 'w2')):
                numeric = np.zeros_like(analytic)
                base = getattr(weights, which)
                for index in np.ndindex(*base.shape):
                    plus, minus = np.array(base), np.array(base)
                    plus[index] += eps
                    minus[index] -= eps
                    w_plus = perturbed(weights, which, plus)
                    w_minus = perturbed(weights, which, minus)
                    numeric[index] = (total_loss(w_plus, data) - total_loss(w_minus, data)) / (2 * eps)
                scale = np.maximum(np.abs(analytic) + np.abs(numeric), 1e-4)
                self.assertLess(np.max(np.abs(analytic - numeric) / scale), 1e-4)


class TestTraining(unittest.TestCase):

    def setUp(self):
        rng = np.random.default_rng(5)
        self.data = TrainingSet([(rng.uniform(0, 1, 4), [t]) for t in (0.1, 0.9, 0.5, 0.3)])
        self.weights = initialize_weights(4, 5, 1, seed=5)

    def test_loss_decreases(self):
        """Test a small learning rate gives a nonincreasing loss history."""
        _, history = train_backprop(self.weights, self.data, lr=0.05, epochs=200)
        self.assertEqual(len(history), 201)
        for before, after in zip(history, history[1:]):
            self.assertLessEqual(after, before + 1e-12)
        self.assertLess(history[-1], history[0])

    def test_zero_learning_rate(self):
        """Test lr = 0 leaves the weights unchanged."""
        trained, history = train_backprop(self.weights, self.data, lr=0, epochs=10)
        self.assertEqual(trained, self.weights)
        self.assertEqual(len(set(history)), 1)

    def test_deterministic(self):
        a, _ = train_backprop(self.weights, self.data, lr=0.5, epochs=50)
        b, _ = train_backprop(self.weights, self.data, lr=0.5, epochs=50)
        self.assertEqual(a, b)

    def test_divergence(self):
        """Test an absurd learning rate is reported with its epoch."""
        weights = NetworkWeights(np.full((4, 5), 0.5), np.full((5, 1), 0.5), theta=1.0)
        data = TrainingSet([([1, 1, 1, 1], [0.0])])
        with self.assertRaises(NumericError) as cm:
            train_backprop(weights, data, lr=float('inf'), epochs=5)
        self.assertIsNotNone(cm.exception.epoch)

    def test_empty(self):
        with self.assertRaises(InputError):
            train_backprop(self.weights, TrainingSet([]), lr=0.1, epochs=1)

    def test_single_sample_converges(self):
        """Test a 3-4-2 network fits one sample to a loss below 1e-3 within 5000 epochs."""
        weights = initialize_weights(3, 4, 2, seed=0)
        data = TrainingSet([([0.2, 0.7, 0.4], [0.8, 0.3])])
        trained, history = train_backprop(weights, data, lr=0.5, epochs=5000)
        self.assertEqual(len(history), 5001)
        self.assertLess(history[-1], 1e-3)
        self.assertLess(total_loss(trained, data), 1e-3)


class TestImportance(unittest.TestCase):

    def test_normalized(self):
        """Test weights sum to 1 and keep the argmax over random vectors."""
        rng = np.random.default_rng(7)
        for _ in range(1000):
            y = rng.uniform(0, 1, rng.integers(1, 20))
            p = importance_weights(y).p
            self.assertLess(abs(math.fsum(p) - 1), 1e-9)
            self.assertEqual(int(np.argmax(p)), int(np.argmax(y)))

    def test_rescaling(self):
        """Test positive rescaling leaves the formatted weights unchanged."""
        rng = np.random.default_rng(8)
        for _ in range(100):
            y = rng.uniform(0.01, 1, 6)
            p = [format_float(v) for v in importance_weights(y).p]
            q = [format_float(v) for v in importance_weights(y * 4.0).p]
            self.assertEqual(p, q)

    def test_single(self):
        self.assertEqual(importance_weights([0.3]).p, (1.0,))

    def test_all_zero(self):
        """Test the uniform fallback for all-zero outputs."""
        result = importance_weights([0, 0, 0, 0])
        self.assertEqual(result.p, (0.25,) * 4)
        self.assertTrue(result.degenerate)

    def test_negative(self):
        with self.assertRaises(InputError):
            importance_weights([0.5, -0.1])


class TestScoreModules(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def test_bypass(self):
        """Test without fault history the weights follow the weight-priority scores."""
        records = read_metrics_csv(os.path.join(DATA, 'metrics.csv'))
        result = score_modules(records)
        self.assertEqual(result['method'], 'bypass')
        self.assertIsNone(result['weights'])
        for p, expected in zip(result['importance'].p, (0.5, 0.3, 0.15, 0.05)):
            self.assertAlmostEqual(p, expected, places=12)

    def test_single_module(self):
        result = score_modules([ModuleRecord(id='only', procedure_ccs=[1], lloc=5, weight_priority_score=0.4)])
        self.assertEqual(result['importance'].p, (1.0,))

    def test_network(self):
        """Test modules with a fault history train the network."""
        records = read_metrics_csv(os.path.join(DATA, 'metrics_history.csv'))
        result = score_modules(records, hidden=6, epochs=300, seed=0)
        self.assertEqual(result['method'], 'network')
        self.assertEqual(len(result['importance'].p), 4)
        self.assertLess(result['loss_history'][-1], result['loss_history'][0])
        self.assertEqual(result['weights'].shape, (10, 6, 1))
        again = score_modules(records, hidden=6, epochs=300, seed=0)
        self.assertEqual(result['importance'], again['importance'])

    def test_pretrained(self):
        """Test saved weights reproduce the trained importance weights."""
        records = read_metrics_csv(os.path.join(DATA, 'metrics_history.csv'))
        trained = score_modules(records, hidden=6, epochs=100, seed=1)
        path = os.path.join(self.tmp, 'weights.json')
        save_weights(trained['weights'], path)
        loaded = load_weights(path)
        self.assertEqual(loaded, trained['weights'])
        result = score_modules(records, weights=loaded)
        self.assertEqual(result['method'], 'pretrained')
        self.assertEqual(result['importance'], trained['importance'])

    def test_pretrained_wrong_size(self):
        records = read_metrics_csv(os.path.join(DATA, 'metrics.csv'))
        with self.assertRaises(InputError):
            score_modules(records, weights=initialize_weights(3, 2, 1))


if __name__ == '__main__':
    unittest.main()
