# -*- coding: utf-8 -*-
"""
srgmrelease.cli.decide
~~~~~~~~~~~~~~~~~~~~~~

Stop-test recommendation from actual testing time and cost per category.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import logging

import click

from ..decision import RELEASE, evaluate_categories, read_actuals_csv
from ..errors import InputError
from ..release import ReleasePolicy
from . import checksums, emit, handle_errors, load_document, load_project


log = logging.getLogger(__name__)


def load_policy(path):
    """Release policy from a ``srgm optimize`` report, or a bare policy document."""
    data = load_document(path, 'Policy')
    data = data.get('policy', data)
    if not isinstance(data, dict):
        raise InputError('Policy %s is malformed' % path)
    values = {k: v for k, v in data.items() if k in ReleasePolicy.fields}
    return ReleasePolicy(**values)


@click.command()
@click.argument('policy_json', type=click.Path(exists=True, dir_okay=False))
@click.argument('actuals_csv', type=click.Path(exists=True, dir_okay=False))
@click.option('--config', '-c', 'config_path', type=click.Path(dir_okay=False), help='Project config file.')
@click.option('--out', '-o', type=click.Path(dir_okay=False), help='Output JSON file.')
@click.help_option('--help', '-h')
@handle_errors
def decide(policy_json, actuals_csv, config_path, out):
    """Compare actual testing effort with the optimum and recommend whether to release."""
    log.debug('srgm.decide')
    project = load_project(config_path)
    policy = load_policy(policy_json)
    outcomes = read_actuals_csv(actuals_csv, fault_tolerance=project.fault_tolerance)
    inputs = checksums(policy_json, actuals_csv, config_path)
    if policy.t_star == 0:
        # Deviations from T* = 0 are undefined; the policy itself is the answer
        log.info('Policy case %s: no testing is cost-effective', policy.case)
        emit({
            'status': 'no_testing',
            'case': policy.case,
            'verdict': RELEASE,
            'message': 'Optimal release time is 0, deviations are undefined and testing is not cost-effective',
            'policy': policy.serialize(),
            'inputs': inputs,
        }, out)
        return
    result = evaluate_categories(policy, outcomes, project.stringency, cost_odds=project.cost_odds,
                                 delta_rule=project.delta_rule, mode=project.stringency_mode)
    emit({
        'status': 'evaluated',
        'case': policy.case,
        'verdict': result['verdict'],
        'triggered_by': result['triggered_by'],
        'decisions': [d.serialize() for d in result['decisions']],
        'stringency': project.stringency,
        'stringency_mode': project.stringency_mode,
        'delta_rule': project.delta_rule,
        'cost_odds': project.cost_odds,
        'policy': policy.serialize(),
        'inputs': inputs,
    }, out)
