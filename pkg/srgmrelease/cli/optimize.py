# -*- coding: utf-8 -*-
"""
srgmrelease.cli.optimize
~~~~~~~~~~~~~~~~~~~~~~~~

Compute the cost-optimal release time from a fit and the project costs.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import csv
import logging
import os

import click

from ..errors import InputError
from ..release import cost_curve, optimal_release_time, optimize_release_numeric, release_cost_function
from ..reliability import GoParams, fit_result_from_dict
from ..utils import format_float
from . import checksums, emit, handle_errors, load_document, load_project, write_text


log = logging.getLogger(__name__)


def load_fit(path):
    """Fitted parameters from a ``srgm fit`` report."""
    result = fit_result_from_dict(load_document(path, 'Fit'))
    if result.params is None:
        raise InputError('Fit %s has no parameters' % path)
    if not result.converged:
        log.warning('Fit %s did not converge, using its parameters anyway', path)
    return result.params


def release_policy(model, costs, prev=None):
    """Closed form for Goel–Okumoto without a previous version term, numeric search otherwise."""
    if isinstance(model, GoParams) and (prev is None or costs.c4 == costs.c2):
        return optimal_release_time(model, costs)
    cost_fn = release_cost_function(model, costs, prev=prev)
    return optimize_release_numeric(model, cost_fn, costs.lifecycle_t)


def curve_path(out, curve):
    if curve:
        return curve
    if out:
        return '%s-curve.csv' % os.path.splitext(out)[0]
    return None


def write_curve(f, T, C):
    writer = csv.writer(f, lineterminator='\n')
    writer.writerow(['T', 'cost'])
    for t, c in zip(T, C):
        writer.writerow([format_float(t), format_float(c)])


@click.command()
@click.argument('fit_json', type=click.Path(exists=True, dir_okay=False))
@click.option('--config', '-c', 'config_path', type=click.Path(dir_okay=False), help='Project config file.')
@click.option('--prev', 'prev_json', type=click.Path(exists=True, dir_okay=False), help='Fit of the previous version.')
@click.option('--out', '-o', type=click.Path(dir_okay=False), help='Output JSON file.')
@click.option('--curve', type=click.Path(dir_okay=False), help='Cost curve CSV, by default alongside --out.')
@click.help_option('--help', '-h')
@handle_errors
def optimize(fit_json, config_path, prev_json, out, curve):
    """Optimal release time and expected cost."""
    log.debug('srgm.optimize')
    project = load_project(config_path)
    costs = project.require_costs()
    model = load_fit(fit_json)
    prev = load_fit(prev_json) if prev_json else None
    policy = release_policy(model, costs, prev=prev)
    if prev is not None and policy.expected_cost_at_t_star <= 0:
        log.warning('Expected cost at T* is %s: the previous-version term (c4 - c2) n(T) outweighs the rest of the '
                    'cost, so deviations from this policy cannot be evaluated', policy.expected_cost_at_t_star)
    T, C = cost_curve(release_cost_function(model, costs, prev=prev), costs.lifecycle_t)
    curve = curve_path(out, curve)
    report = {
        'policy': policy.serialize(),
        'model': model.serialize(),
        'previous_model': prev.serialize() if prev is not None else None,
        'costs': costs.serialize(),
        'curve': os.path.basename(curve) if curve else None,
        'inputs': checksums(fit_json, prev_json, config_path),
    }
    emit(report, out)
    if curve:
        write_text(curve, lambda f: write_curve(f, T, C))
