# -*- coding: utf-8 -*-
"""
srgmrelease.cli.prioritize
~~~~~~~~~~~~~~~~~~~~~~~~~~

Rank modules for testing from their metrics.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import logging

import click

from ..decision import categorize
from ..priority import FEATURES, dependency_graph, load_weights, read_metrics_csv, score_modules
from ..priority import save_weights as write_weights
from . import checksums, emit, handle_errors, load_project


log = logging.getLogger(__name__)


@click.command()
@click.argument('metrics_csv', type=click.Path(exists=True, dir_okay=False))
@click.option('--config', '-c', 'config_path', type=click.Path(dir_okay=False), help='Project config file.')
@click.option('--weights', '-w', 'weights_path', type=click.Path(exists=True, dir_okay=False), help='Pre-trained network weights.')
@click.option('--save-weights', type=click.Path(dir_okay=False), help='Write the trained network weights here.')
@click.option('--seed', type=int, help='Weight initialization seed, overrides the config.')
@click.option('--out', '-o', type=click.Path(dir_okay=False), help='Output JSON file.')
@click.help_option('--help', '-h')
@handle_errors
def prioritize(metrics_csv, config_path, weights_path, save_weights, seed, out):
    """Importance weights and priority categories of modules."""
    log.debug('srgm.prioritize')
    project = load_project(config_path)
    records = read_metrics_csv(metrics_csv)
    dependencies = dependency_graph(records)
    weights = load_weights(weights_path) if weights_path else None
    network = project.network
    scored = score_modules(records, hidden=network.hidden, theta=network.theta, lr=network.lr,
                           epochs=network.epochs, seed=network.seed if seed is None else seed, weights=weights)
    importance = scored['importance']
    assignments = categorize(
        [(r.id, p) for r, p in zip(records, importance.p)],
        dependencies,
        thresholds=project.thresholds,
        tested=[r.id for r in records if r.tested],
    )
    by_id = {r.id: (r, x) for r, x in zip(records, scored['features'])}
    modules = []
    for assignment in assignments:
        record, features = by_id[assignment.module_id]
        entry = assignment.serialize()
        entry['name'] = record.name
        entry['tested'] = record.tested
        entry['features'] = dict(zip(FEATURES, features))
        modules.append(entry)
    history = scored['loss_history']
    report = {
        'modules': modules,
        'method': scored['method'],
        'degenerate': importance.degenerate,
        'loss': {'initial': history[0], 'final': history[-1], 'epochs': len(history) - 1} if history else None,
        'thresholds': list(project.thresholds),
        'inputs': checksums(metrics_csv, weights_path, config_path),
    }
    emit(report, out)
    if save_weights:
        if scored['weights'] is None:
            log.warning('No network was used (no fault history), not writing weights')
        else:
            write_weights(scored['weights'], save_weights)

