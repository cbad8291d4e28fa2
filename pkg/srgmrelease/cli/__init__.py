# -*- coding: utf-8 -*-
"""
srgmrelease.cli
~~~~~~~~~~~~~~~

SRGM-Release command line interface.

Once installed, SRGM-Release provides a command-line tool that can be used by typing 'srgm' in a terminal. The usual
pipeline is::

    srgm fit faults.csv --out fit.json
    srgm optimize fit.json --config project.yml --out policy.json
    srgm prioritize metrics.csv --config project.yml --out priorities.json
    srgm decide policy.json actuals.csv --config project.yml --out decision.json

Exit codes are 0 on success, 2 for invalid input, 3 for numeric failures and 4 when a fit does not converge.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import functools
import io
import logging
import os

import click

from .. import __version__
from ..config import ProjectConfig, default_path
from ..errors import InputError, SrgmError
from ..utils import dumps, read_json, sha256sum, write_json


log = logging.getLogger(__name__)


class CliError(click.ClickException):
    """Click exception carrying the exit code of the library error it wraps."""

    def __init__(self, message, exit_code=1):
        super(CliError, self).__init__(message)
        self.exit_code = exit_code


def handle_errors(f):
    """Convert library errors raised by a command into :class:`CliError` with the matching exit code."""
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except SrgmError as e:
            log.debug('%s: %s', e.__class__.__name__, e)
            raise CliError('%s' % e, exit_code=e.exit_code)
    return wrapper


def load_project(path):
    """Project settings from ``path``, the default config location, or built-in defaults if neither exists."""
    if path:
        return ProjectConfig.from_file(path)
    path = default_path()
    if os.path.isfile(path):
        log.debug('Using config %s', path)
        return ProjectConfig.from_file(path)
    return ProjectConfig()


def load_document(path, what):
    """Read a JSON document written by another command."""
    try:
        data = read_json(path)
    except ValueError as e:
        raise InputError('%s %s is not valid JSON: %s' % (what, path, e))
    if not isinstance(data, dict):
        raise InputError('%s %s must contain a JSON object' % (what, path))
    return data


def checksums(*paths):
    """SHA-256 of each input file, keyed by file name."""
    return {os.path.basename(p): sha256sum(p) for p in paths if p}


def emit(report, out):
    """Write a report to ``out``, or to stdout when no path is given."""
    if out:
        write_json(report, out)
        log.info('Wrote %s', out)
    else:
        click.echo(dumps(report), nl=False)


def write_text(path, writer):
    """Open ``path`` for text output and pass it to ``writer``."""
    with io.open(path, 'w', encoding='utf8', newline='') as f:
        writer(f)


@click.group()
@click.option('--verbose', '-v', is_flag=True, help='Verbose debug logging.')
@click.version_option(__version__, '--version', '-V')
@click.help_option('--help', '-h')
@click.pass_context
def cli(ctx, verbose):
    """SRGM-Release command line interface."""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO)
    log.debug('SRGM-Release v%s' % __version__)
    ctx.obj = {}


from . import config, decide, fit, optimize, prioritize, simulate


cli.add_command(fit.fit)
cli.add_command(optimize.optimize)
cli.add_command(prioritize.prioritize)
cli.add_command(decide.decide)
cli.add_command(simulate.simulate)
cli.add_command(config.config_cli)
