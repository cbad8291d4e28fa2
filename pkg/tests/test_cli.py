# -*- coding: utf-8 -*-
"""
test_cli
~~~~~~~~

Test the srgm command line interface.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import io
import json
import logging
import math
import os
import shutil
import tempfile
import unittest

from click.testing import CliRunner

from srgmrelease.cli import cli
from srgmrelease.utils import read_json, sha256sum, write_json


logging.basicConfig(level=logging.DEBUG)
log = logging.getLogger(__name__)

DATA = os.path.join(os.path.dirname(__file__), 'data')


def data(name):
    return os.path.join(DATA, name)


def reference(name):
    return os.path.join(DATA, 'reference', name)


def read_text(path):
    with io.open(path, encoding='utf8') as f:
        return f.read()


def read_bytes(path):
    with io.open(path, 'rb') as f:
        return f.read()


class CliTestCase(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.mkdtemp()
        self.runner = CliRunner()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def path(self, name):
        return os.path.join(self.tmp, name)

    def invoke(self, *args):
        result = self.runner.invoke(cli, list(args))
        log.debug('srgm %s -> %s\n%s', ' '.join(args), result.exit_code, result.output)
        return result

    def write_config(self, **sections):
        path = self.path('project.yml')
        write_json(sections, path)
        return path

    def load(self, name):
        with io.open(self.path(name), encoding='utf8') as f:
            return json.load(f)


class TestFit(CliTestCase):

    def test_fit(self):
        """Test fitting the fixture writes a converged GO fit."""
        result = self.invoke('fit', data('faults.csv'), '--model', 'go', '--out', self.path('fit.json'))
        self.assertEqual(result.exit_code, 0)
        fit = self.load('fit.json')
        self.assertTrue(fit['converged'])
        self.assertEqual(fit['params']['kind'], 'go')
        self.assertTrue(95 < fit['params']['a'] < 130)
        self.assertEqual(fit['inputs'], {'faults.csv': sha256sum(data('faults.csv'))})

    def test_fit_auto(self):
        result = self.invoke('fit', data('faults.csv'), '--model', 'auto', '--out', self.path('fit.json'))
        self.assertEqual(result.exit_code, 0)
        self.assertIn(self.load('fit.json')['kind'], ('go', 'ohba', 'mo'))

    def test_fit_stdout(self):
        result = self.invoke('fit', data('faults.csv'))
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(json.loads(result.stdout)['kind'], 'go')

    def test_fit_previous_kind(self):
        """Test --previous fits with the model kind configured for the previous version."""
        config = self.write_config(models={'current': 'go', 'previous': 'ohba'})
        result = self.invoke('fit', data('prev_faults.csv'), '--previous', '--config', config,
                             '--out', self.path('prev.json'))
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.load('prev.json')['kind'], 'ohba')
        result = self.invoke('fit', data('faults.csv'), '--config', config, '--out', self.path('fit.json'))
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.load('fit.json')['kind'], 'go')

    def test_model_overrides_previous(self):
        config = self.write_config(models={'previous': 'mo'})
        result = self.invoke('fit', data('prev_faults.csv'), '--previous', '--model', 'go', '--config', config,
                             '--out', self.path('prev.json'))
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.load('prev.json')['kind'], 'go')

    def test_empty_file(self):
        """Test an empty fault file exits with the input error code."""
        empty = self.path('empty.csv')
        io.open(empty, 'w').close()
        result = self.invoke('fit', empty, '--out', self.path('fit.json'))
        self.assertEqual(result.exit_code, 2)
        self.assertFalse(os.path.exists(self.path('fit.json')))

    def test_decreasing_times(self):
        """Test the error names the offending line."""
        result = self.invoke('fit', data('faults_decreasing.csv'))
        self.assertEqual(result.exit_code, 2)
        self.assertIn('line 4', result.output)

    def test_non_convergence(self):
        """Test a fit that hits its iteration cap exits 4 after writing diagnostics."""
        config = self.write_config(fit={'starts': 1, 'max_iterations': 2})
        result = self.invoke('fit', data('faults.csv'), '--config', config, '--out', self.path('fit.json'))
        self.assertEqual(result.exit_code, 4)
        self.assertFalse(self.load('fit.json')['converged'])


class TestOptimize(CliTestCase):

    def write_fit(self, name, params):
        path = self.path(name)
        write_json({'kind': params['kind'], 'params': params, 'converged': True}, path)
        return path

    def test_interior(self):
        """Test a=100, b=0.1, c1=1, c2=5, c3=2, t=100 gives T* = 29.9573."""
        fit = self.write_fit('fit.json', {'kind': 'go', 'a': 100, 'b': 0.1})
        config = self.write_config(costs={'c1': 1, 'c2': 5, 'c3': 2, 'lifecycle_t': 100})
        result = self.invoke('optimize', fit, '--config', config, '--out', self.path('policy.json'))
        self.assertEqual(result.exit_code, 0)
        report = self.load('policy.json')
        self.assertEqual(report['policy']['case'], 'INTERIOR')
        self.assertAlmostEqual(report['policy']['t_star'], 29.9573, places=4)
        self.assertEqual(report['curve'], 'policy-curve.csv')
        lines = read_text(self.path('policy-curve.csv')).splitlines()
        self.assertEqual(lines[0], 'T,cost')
        self.assertEqual(len(lines), 1001)

    def test_no_testing(self):
        fit = self.write_fit('fit.json', {'kind': 'go', 'a': 10, 'b': 0.1})
        config = self.write_config(costs={'c1': 1, 'c2': 2, 'c3': 1, 'lifecycle_t': 100})
        result = self.invoke('optimize', fit, '--config', config, '--out', self.path('policy.json'))
        self.assertEqual(result.exit_code, 0)
        policy = self.load('policy.json')['policy']
        self.assertEqual(policy['case'], 'NO_TESTING')
        self.assertEqual(policy['t_star'], 0)

    def test_previous_version_c4_equals_c2(self):
        """Test charging previous-version faults at c2 gives the single-version T*."""
        fit = self.write_fit('fit.json', {'kind': 'go', 'a': 100, 'b': 0.1})
        prev = self.write_fit('prev.json', {'kind': 'go', 'a': 40, 'b': 0.3})
        config = self.write_config(costs={'c1': 1, 'c2': 5, 'c3': 2, 'c4': 5, 'lifecycle_t': 100})
        self.invoke('optimize', fit, '--config', config, '--out', self.path('single.json'))
        result = self.invoke('optimize', fit, '--config', config, '--prev', prev, '--out', self.path('multi.json'))
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.load('single.json')['policy']['t_star'], self.load('multi.json')['policy']['t_star'])

    def test_previous_version_numeric(self):
        fit = self.write_fit('fit.json', {'kind': 'go', 'a': 100, 'b': 0.1})
        prev = self.write_fit('prev.json', {'kind': 'go', 'a': 40, 'b': 0.3})
        config = self.write_config(costs={'c1': 1, 'c2': 5, 'c3': 2, 'c4': 1, 'lifecycle_t': 100})
        result = self.invoke('optimize', fit, '--config', config, '--prev', prev, '--out', self.path('multi.json'))
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.load('multi.json')['policy']['method'], 'numeric')

    def test_bad_costs(self):
        """Test c2 <= c1 fails validation without writing output."""
        fit = self.write_fit('fit.json', {'kind': 'go', 'a': 100, 'b': 0.1})
        config = self.write_config(costs={'c1': 5, 'c2': 5, 'c3': 2, 'lifecycle_t': 100})
        result = self.invoke('optimize', fit, '--config', config, '--out', self.path('policy.json'))
        self.assertEqual(result.exit_code, 2)
        self.assertFalse(os.path.exists(self.path('policy.json')))


class TestPrioritize(CliTestCase):

    def test_bypass(self):
        """Test without history p_k follows the weight-priority scores and children of untested parents move up."""
        result = self.invoke('prioritize', data('metrics.csv'), '--config', data('project.yml'),
                             '--out', self.path('priorities.json'))
        self.assertEqual(result.exit_code, 0)
        report = self.load('priorities.json')
        self.assertEqual(report['method'], 'bypass')
        modules = {m['module_id']: m for m in report['modules']}
        self.assertEqual([m['module_id'] for m in report['modules']], ['core', 'billing', 'reports', 'export'])
        self.assertAlmostEqual(modules['core']['p_k'], 0.5, places=9)
        self.assertAlmostEqual(modules['export']['p_k'], 0.05, places=9)
        self.assertAlmostEqual(math.fsum(m['p_k'] for m in report['modules']), 1.0, places=9)
        self.assertEqual(modules['reports']['category'], 'MEDIUM')
        self.assertEqual(modules['export']['category'], 'MEDIUM')
        self.assertTrue(modules['export']['boosted'])
        self.assertFalse(modules['reports']['boosted'])

    def test_single_module(self):
        metrics = self.path('one.csv')
        with io.open(metrics, 'w', encoding='utf8') as f:
            f.write('id,procedure_ccs,lloc,weight_priority_score\nonly,3,20,0.2\n')
        result = self.invoke('prioritize', metrics, '--out', self.path('priorities.json'))
        self.assertEqual(result.exit_code, 0)
        module = self.load('priorities.json')['modules'][0]
        self.assertEqual(module['p_k'], 1.0)
        self.assertEqual(module['category'], 'VERY_HIGH')

    def test_network_weights(self):
        """Test trained weights can be saved and reused."""
        weights = self.path('weights.json')
        result = self.invoke('prioritize', data('metrics_history.csv'), '--config', data('project.yml'),
                             '--out', self.path('trained.json'), '--save-weights', weights)
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.load('trained.json')['method'], 'network')
        self.assertTrue(os.path.isfile(weights))
        result = self.invoke('prioritize', data('metrics_history.csv'), '--config', data('project.yml'),
                             '--weights', weights, '--out', self.path('pretrained.json'))
        self.assertEqual(result.exit_code, 0)
        trained = [m['p_k'] for m in self.load('trained.json')['modules']]
        pretrained = [m['p_k'] for m in self.load('pretrained.json')['modules']]
        self.assertEqual(trained, pretrained)

    def test_unknown_dependency(self):
        result = self.invoke('prioritize', data('metrics_unknown.csv'))
        self.assertEqual(result.exit_code, 2)
        self.assertIn('ghost', result.output)

    def test_cycle(self):
        result = self.invoke('prioritize', data('metrics_cycle.csv'))
        self.assertEqual(result.exit_code, 2)
        self.assertIn('Cyclic', result.output)


class TestDecide(CliTestCase):

    def write_policy(self, t_star, case, cost):
        path = self.path('policy.json')
        write_json({'policy': {'t_star': t_star, 'case': case, 'expected_cost_at_t_star': cost,
                               'lifecycle_t': 100, 't0': None}}, path)
        return path

    def test_reject(self):
        """Test 20% over time and 50% over cost at stringency 0.3 is rejected in VERY_HIGH."""
        policy = self.write_policy(20, 'INTERIOR', 200)
        result = self.invoke('decide', policy, data('actuals.csv'), '--config', data('project.yml'),
                             '--out', self.path('decision.json'))
        self.assertEqual(result.exit_code, 0)
        report = self.load('decision.json')
        self.assertEqual(report['verdict'], 'REJECT')
        self.assertEqual(report['triggered_by'], 'VERY_HIGH')
        first = report['decisions'][0]
        self.assertEqual(first['alpha'], 0.2)
        self.assertEqual(first['beta'], 0.5)
        self.assertEqual(first['weighted_delta'], 0.35)

    def test_weighted_release(self):
        policy = self.write_policy(20, 'INTERIOR', 200)
        config = self.write_config(stringency=0.4, delta_rule='weighted', fault_tolerance={'HIGH': 1})
        result = self.invoke('decide', policy, data('actuals.csv'), '--config', config,
                             '--out', self.path('decision.json'))
        self.assertEqual(result.exit_code, 0)
        report = self.load('decision.json')
        self.assertEqual([d['recommendation'] for d in report['decisions']], ['RELEASE', 'RELEASE'])
        self.assertEqual(report['verdict'], 'RELEASE')

    def test_no_testing_policy(self):
        """Test T* = 0 gives a structured no-testing response."""
        policy = self.write_policy(0, 'NO_TESTING', 50)
        result = self.invoke('decide', policy, data('actuals.csv'), '--out', self.path('decision.json'))
        self.assertEqual(result.exit_code, 0)
        report = self.load('decision.json')
        self.assertEqual(report['status'], 'no_testing')
        self.assertEqual(report['case'], 'NO_TESTING')

    def test_negative_optimal_cost(self):
        """Test a policy whose previous-version term drives C0 below zero exits 2 naming that term."""
        policy = self.write_policy(25, 'INTERIOR', -29.66)
        result = self.invoke('decide', policy, data('actuals.csv'), '--config', data('project.yml'),
                             '--out', self.path('decision.json'))
        self.assertEqual(result.exit_code, 2)
        self.assertIn('(c4 - c2) n(T)', result.output)
        self.assertFalse(os.path.exists(self.path('decision.json')))


class TestSimulate(CliTestCase):

    def test_deterministic(self):
        """Test the same seed writes byte-identical files."""
        params = self.path('params.json')
        write_json({'kind': 'go', 'a': 100, 'b': 0.1}, params)
        for name in ('a.csv', 'b.csv'):
            result = self.invoke('simulate', params, '--horizon', '30', '--seed', '5', '--out', self.path(name))
            self.assertEqual(result.exit_code, 0)
        self.assertEqual(read_text(self.path('a.csv')), read_text(self.path('b.csv')))
        self.assertTrue(read_text(self.path('a.csv')).startswith('time\n'))

    def test_horizon_zero(self):
        params = self.path('params.json')
        write_json({'kind': 'go', 'a': 100, 'b': 0.1}, params)
        result = self.invoke('simulate', params, '--horizon', '0', '--out', self.path('events.csv'))
        self.assertEqual(result.exit_code, 2)
        self.assertFalse(os.path.exists(self.path('events.csv')))

    def test_invalid_params(self):
        params = self.path('params.json')
        write_json({'kind': 'go', 'a': -1, 'b': 0.1}, params)
        result = self.invoke('simulate', params, '--horizon', '10')
        self.assertEqual(result.exit_code, 2)


class TestConfigCommands(CliTestCase):

    def test_set_get_remove(self):
        config = self.path('srgm.yml')
        self.assertEqual(self.invoke('config', '--config', config, 'set', 'costs.c1', '1').exit_code, 0)
        self.assertEqual(self.invoke('config', '--config', config, 'set', 'stringency', '0.25').exit_code, 0)
        result = self.invoke('config', '--config', config, 'get', 'costs.c1')
        self.assertEqual(result.output.strip(), '1')
        result = self.invoke('config', '--config', config, 'list')
        self.assertIn('stringency : 0.25', result.output)
        self.assertEqual(self.invoke('config', '--config', config, 'remove', 'stringency').exit_code, 0)
        self.assertEqual(self.invoke('config', '--config', config, 'get', 'stringency').exit_code, 2)
        self.assertEqual(self.invoke('config', '--config', config, 'clear').exit_code, 0)
        self.assertEqual(self.invoke('config', '--config', config, 'list').output, '')


class TestPipeline(CliTestCase):

    def run_pipeline(self, out):
        os.makedirs(out)
        config = data('project.yml')
        steps = [
            ('fit', data('faults.csv'), '--config', config, '--out', os.path.join(out, 'fit.json')),
            ('fit', data('prev_faults.csv'), '--previous', '--config', config, '--out', os.path.join(out, 'prev.json')),
            ('optimize', os.path.join(out, 'fit.json'), '--prev', os.path.join(out, 'prev.json'), '--config', config,
             '--out', os.path.join(out, 'policy.json')),
            ('prioritize', data('metrics_history.csv'), '--config', config,
             '--out', os.path.join(out, 'priorities.json')),
            ('decide', os.path.join(out, 'policy.json'), data('actuals.csv'), '--config', config,
             '--out', os.path.join(out, 'decision.json')),
        ]
        for step in steps:
            result = self.invoke(*step)
            self.assertEqual(result.exit_code, 0, result.output)
        return {name: read_text(os.path.join(out, name)) for name in sorted(os.listdir(out))}

    def test_deterministic(self):
        """Test two runs of the bundled pipeline produce byte-identical reports."""
        first = self.run_pipeline(self.path('first'))
        second = self.run_pipeline(self.path('second'))
        self.assertEqual(sorted(first), ['decision.json', 'fit.json', 'policy-curve.csv', 'policy.json',
                                         'prev.json', 'priorities.json'])
        self.assertEqual(first, second)
        policy = json.loads(first['policy.json'])['policy']
        self.assertTrue(0 < policy['t_star'] < 100)

    def test_reference_reports(self):
        """Test fit, optimize and decide on the bundled fixture reproduce the reports in tests/data/reference."""
        config = data('project.yml')
        result = self.invoke('fit', data('faults.csv'), '--config', config, '--out', self.path('fit.json'))
        self.assertEqual(result.exit_code, 0, result.output)
        fit = self.load('fit.json')
        expected = read_json(reference('fit.json'))
        self.assertEqual(fit['kind'], expected['kind'])
        for name in ('a', 'b'):
            self.assertLess(abs(fit['params'][name] / expected['params'][name] - 1), 1e-6)
        self.assertAlmostEqual(fit['log_likelihood'], expected['log_likelihood'], places=6)
        # Iteration counts depend on the optimizer version, so optimize starts from the reference fit
        policy = self.path('policy.json')
        result = self.invoke('optimize', reference('fit.json'), '--config', config, '--out', policy)
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(read_bytes(policy), read_bytes(reference('policy.json')))
        decision = self.path('decision.json')
        result = self.invoke('decide', policy, data('actuals.csv'), '--config', config, '--out', decision)
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(read_bytes(decision), read_bytes(reference('decision.json')))


if __name__ == '__main__':
    unittest.main()
