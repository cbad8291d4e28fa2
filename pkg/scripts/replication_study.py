# -*- coding: utf-8 -*-
"""
replication_study
~~~~~~~~~~~~~~~~~

Monte-Carlo checks of the simulator and the estimators.

``simulate`` compares the mean event count of many thinning replications with m(horizon). ``recover`` simulates
grouped fault data for each model with 20 seeds, fits it, and reports the seeds that recover every parameter within
the tolerance together with the median relative error of each parameter. It also counts the seeds where a fit started
from the true parameters reaches a higher likelihood than ``fit_model``, which would point at the optimizer rather
than at sampling variance. ``simulate`` exits 1 when a check fails; ``recover`` does so only when ``--required`` is
given and not met.

    python replication_study.py simulate --replications 2000
    python replication_study.py recover --seeds 20 --tolerance 0.15
    python replication_study.py recover --required 18

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import logging
import math
import sys
import time

import click
import numpy as np
from scipy.optimize import minimize

from srgmrelease.errors import InvariantError
from srgmrelease.reliability import (FaultDataset, GoParams, MusaOkumotoParams, OhbaParams, fit_model, log_likelihood,
                                     replicate_counts, simulate_nhpp)

log = logging.getLogger(__name__)


#: (label, true parameters, horizon)
CASES = [
    ('GO(a=100, b=0.1)', GoParams(a=100, b=0.1), 10),
    ('Ohba(n=80, phi=0.4)', OhbaParams(n=80, phi=0.4), 10),
    ('MO(lambda0=10, theta=0.5)', MusaOkumotoParams(lambda0=10, theta=0.5), 1),
]

RECOVERY = [
    ('GO(a=100, b=0.1)', 'go', GoParams(a=100, b=0.1), np.linspace(1, 30, 30)),
    ('GO(a=100, b=0.1), T=50', 'go', GoParams(a=100, b=0.1), np.linspace(1.25, 50, 40)),
    ('Ohba(n=80, phi=0.4)', 'ohba', OhbaParams(n=80, phi=0.4), np.linspace(0.5, 15, 30)),
    ('MO(lambda0=10, theta=0.5)', 'mo', MusaOkumotoParams(lambda0=10, theta=0.5), np.geomspace(0.001, 100, 80)),
]


def truth_started_loglik(model, dataset):
    """Log-likelihood of a Nelder-Mead fit started from the true parameters."""
    cls = type(model)

    def objective(z):
        try:
            value = -log_likelihood(cls.from_vector(np.exp(z)), dataset)
        except InvariantError:
            return np.inf
        return value if math.isfinite(value) else np.inf

    res = minimize(objective, np.log(model.vector()), method='Nelder-Mead',
                   options={'maxiter': 4000, 'xatol': 1e-9, 'fatol': 1e-11})
    return -float(res.fun)


@click.group()
@click.option('--verbose', '-v', is_flag=True)
def cli(verbose):
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING)


@cli.command()
@click.option('--replications', '-n', type=int, default=2000, show_default=True)
@click.option('--seed', type=int, default=0, show_default=True)
def simulate(replications, seed):
    """Empirical mean event count against m(horizon)."""
    failed = False
    for label, model, horizon in CASES:
        counts = replicate_counts(model, horizon, replications, seed)
        expected = model.mean_value(horizon)
        se = counts.std(ddof=1) / math.sqrt(replications)
        ok = abs(counts.mean() - expected) <= 3 * se
        failed = failed or not ok
        click.echo('%-28s m(%s)=%-9.4f mean=%-9.4f se=%-7.4f %s' % (label, horizon, expected, counts.mean(), se,
                                                                    'ok' if ok else 'FAIL'))
    sys.exit(1 if failed else 0)


@cli.command()
@click.option('--seeds', type=int, default=20, show_default=True)
@click.option('--required', type=int, help='Seeds that must recover every parameter, exit 1 below it.')
@click.option('--tolerance', type=float, default=0.15, show_default=True)
def recover(seeds, required, tolerance):
    """Fit simulated data and count seeds that recover the true parameters."""
    failed = False
    start = time.time()
    for label, kind, model, grid in RECOVERY:
        names = model.param_names
        hits = 0
        beaten = 0
        errors = []
        for seed in range(seeds):
            dataset = FaultDataset.from_event_times(simulate_nhpp(model, grid[-1], seed), grid)
            result = fit_model(dataset, kind)
            if not result.converged:
                log.warning('%s seed %s did not converge: %s', label, seed, result.message)
                continue
            if truth_started_loglik(model, dataset) > result.log_likelihood + 1e-9:
                beaten += 1
            seed_errors = [abs(result.params[k] - model[k]) / model[k] for k in names]
            log.debug('%s seed %s: %s', label, seed, dict(zip(names, seed_errors)))
            errors.append(seed_errors)
            if max(seed_errors) <= tolerance:
                hits += 1
        ok = required is None or hits >= required
        failed = failed or not ok
        medians = ', '.join('%s %.3f' % (k, m) for k, m in zip(names, np.median(errors, axis=0))) if errors else '-'
        click.echo('%-28s %2d/%d seeds within %.0f%%  median error %s  truth-started better %d  %s'
                   % (label, hits, seeds, tolerance * 100, medians, beaten, 'ok' if ok else 'FAIL'))
    click.echo('Elapsed %.1fs' % (time.time() - start))
    sys.exit(1 if failed else 0)


if __name__ == '__main__':
    cli()
