# -*- coding: utf-8 -*-
"""
srgmrelease.cli.fit
~~~~~~~~~~~~~~~~~~~

Fit a reliability growth model to a fault CSV.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import logging

import click

from ..errors import ConvergenceError
from ..reliability import KINDS, fit_model, read_fault_csv, select_model
from . import checksums, emit, handle_errors, load_project


log = logging.getLogger(__name__)


@click.command()
@click.argument('fault_csv', type=click.Path(exists=True, dir_okay=False))
@click.option('--model', '-m', 'kind', type=click.Choice(KINDS + ('auto',)),
              help='Model kind, auto picks the lowest AIC.')
@click.option('--config', '-c', 'config_path', type=click.Path(dir_okay=False), help='Project config file.')
@click.option('--previous', is_flag=True, help='Use the previous version model kind from the config.')
@click.option('--time-unit', default='', help='Unit of the time column, echoed in the report.')
@click.option('--out', '-o', type=click.Path(dir_okay=False), help='Output JSON file.')
@click.help_option('--help', '-h')
@handle_errors
def fit(fault_csv, kind, config_path, previous, time_unit, out):
    """Fit an NHPP model to cumulative fault counts."""
    log.debug('srgm.fit')
    project = load_project(config_path)
    kind = kind or (project.models.previous if previous else project.models.current)
    log.debug('Fitting %s with model kind %s', fault_csv, kind)
    dataset = read_fault_csv(fault_csv, time_unit=time_unit)
    if kind == 'auto':
        result = select_model(dataset, starts=project.fit.starts, max_iterations=project.fit.max_iterations)
    else:
        result = fit_model(dataset, kind, starts=project.fit.starts, max_iterations=project.fit.max_iterations)
    report = result.serialize()
    report['observations'] = len(dataset)
    report['total_faults'] = dataset.total_faults
    report['time_unit'] = dataset.time_unit
    report['inputs'] = checksums(fault_csv)
    # Diagnostics are written even when the fit fails
    emit(report, out)
    if not result.converged:
        raise ConvergenceError('Fitting %s did not converge: %s' % (result.kind, result.message))
