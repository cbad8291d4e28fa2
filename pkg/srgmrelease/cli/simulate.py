# -*- coding: utf-8 -*-
"""
srgmrelease.cli.simulate
~~~~~~~~~~~~~~~~~~~~~~~~

Simulate failure times from model parameters.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import logging

import click

from ..reliability import params_from_dict, simulate_nhpp, write_event_csv
from . import handle_errors, load_document, write_text


log = logging.getLogger(__name__)


def load_params(path):
    """Model parameters from a parameter document or a ``srgm fit`` report."""
    data = load_document(path, 'Parameters')
    if isinstance(data.get('params'), dict):
        data = data['params']
    return params_from_dict(data)


@click.command()
@click.argument('params_json', type=click.Path(exists=True, dir_okay=False))
@click.option('--horizon', '-t', type=float, required=True, help='End of the simulated window.')
@click.option('--seed', '-s', type=int, default=0, show_default=True, help='Random seed.')
@click.option('--out', '-o', type=click.Path(dir_okay=False), help='Output CSV file.')
@click.help_option('--help', '-h')
@handle_errors
def simulate(params_json, horizon, seed, out):
    """Simulate NHPP failure times by thinning."""
    log.debug('srgm.simulate')
    model = load_params(params_json)
    times = simulate_nhpp(model, horizon, seed)
    log.info('Simulated %s events on [0, %s] (expected %.6g)', len(times), horizon, model.mean_value(horizon))
    if out:
        write_text(out, lambda f: write_event_csv(times, f))
    else:
        write_event_csv(times, click.get_text_stream('stdout'))
