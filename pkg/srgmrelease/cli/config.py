# -*- coding: utf-8 -*-
"""
srgmrelease.cli.config
~~~~~~~~~~~~~~~~~~~~~~

Commands for managing SRGM-Release configuration.

Keys of nested sections are written with dots, e.g. ``srgm config set costs.c1 1``. Values are parsed as YAML, so
numbers and lists keep their type.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import logging

import click
import yaml

from ..config import Config
from ..errors import InputError
from . import handle_errors


log = logging.getLogger(__name__)


@click.group(name='config')
@click.option('--config', '-c', 'config_path', type=click.Path(dir_okay=False), help='Config file, default per OS.')
@click.help_option('--help', '-h')
@click.pass_context
@handle_errors
def config_cli(ctx, config_path):
    """Manage configuration."""
    ctx.obj['config'] = Config(config_path)


@config_cli.command()
@click.pass_obj
def list(obj):
    """List all config values."""
    log.debug('srgm.config.list')
    config = obj['config']
    for k in sorted(config):
        click.echo('%s : %s' % (k, config[k]))


@config_cli.command()
@click.argument('key', required=True)
@click.pass_obj
@handle_errors
def get(obj, key):
    """Get the config value for a key."""
    log.debug('srgm.config.get')
    try:
        click.echo(obj['config'].get_path(key))
    except KeyError:
        raise InputError('No config value for %s' % key)


@config_cli.command()
@click.argument('key', required=True)
@click.argument('value', required=True)
@click.pass_obj
@handle_errors
def set(obj, key, value):
    """Set the config value for a key."""
    log.debug('srgm.config.set')
    try:
        parsed = yaml.safe_load(value)
    except yaml.YAMLError:
        parsed = value
    obj['config'].set_path(key, parsed)


@config_cli.command()
@click.argument('key', required=True)
@click.pass_obj
@handle_errors
def remove(obj, key):
    """Remove the config value for a key."""
    log.debug('srgm.config.remove')
    try:
        obj['config'].remove_path(key)
    except KeyError:
        raise InputError('No config value for %s' % key)


@config_cli.command()
@click.pass_obj
def clear(obj):
    """Clear all config values."""
    log.debug('srgm.config.clear')
    obj['config'].clear()
