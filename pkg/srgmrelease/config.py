# -*- coding: utf-8 -*-
"""
srgmrelease.config
~~~~~~~~~~~~~~~~~~

Config file reader/writer and project settings.

A project config is a YAML file such as::

    costs:
      c1: 1
      c2: 5
      c3: 2
      lifecycle_t: 100
    stringency: 0.3
    thresholds: [0.30, 0.20, 0.10, 0.05]
    network:
      hidden: 8
      epochs: 2000

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import io
import logging
import os

import appdirs
import six
from six.moves.collections_abc import MutableMapping
import yaml
from yaml import SafeLoader

from .decision import (CATEGORIES, CUMULATIVE, DEFAULT_THRESHOLDS, DELTA_RULES, PLAIN, STRINGENCY_MODES,
                       category_name, check_thresholds)
from .errors import InputError, InvariantError
from .model import BaseModel, FloatType, IntType, StringType
from .release.cost import CostParams
from .reliability.models import KINDS


log = logging.getLogger(__name__)


def construct_yaml_str(self, node):
    """Override the default string handling function to always return unicode objects."""
    return self.construct_scalar(node)


SafeLoader.add_constructor(u'tag:yaml.org,2002:str', construct_yaml_str)


def default_path():
    """Standard config location, which varies depending on the operating system."""
    return os.path.join(appdirs.user_config_dir('srgm'), 'srgm.yml')


class Config(MutableMapping):
    """Read and write to config file.

    A config object is a key-value store that can be treated like a dictionary::

        c = Config('project.yml')
        c['stringency'] = 0.25

    If no location is specified, a standard config location given by appdirs is used. You can check the location
    using the ``path`` property. The file is YAML and may be edited by hand.

    Warning: multiple instances of Config() pointing to the same file will not see each others' changes, and will
    overwrite the entire file when any key is changed.
    """

    def __init__(self, path=None):
        """

        :param string path: (Optional) Path to config file location.
        """
        self._path = path or default_path()
        self._data = {}
        if os.path.isfile(self.path):
            with io.open(self.path, encoding='utf8') as f:
                try:
                    data = yaml.safe_load(f)
                except yaml.YAMLError as e:
                    raise InputError('Config file %s is not valid YAML: %s' % (self.path, e))
            if data is None:
                data = {}
            if not isinstance(data, dict):
                raise InputError('Config file %s must contain a mapping' % self.path)
            self._data = data

    @property
    def path(self):
        """The path to the config file."""
        return self._path

    def _flush(self):
        """Save the contents of data to the file on disk. You should not need to call this manually."""
        d = os.path.dirname(os.path.abspath(self.path))
        if not os.path.isdir(d):
            os.makedirs(d)
        with io.open(self.path, 'w', encoding='utf8') as f:
            yaml.safe_dump(self._data, f, default_flow_style=False, encoding=None)

    def __contains__(self, k):
        return k in self._data

    def __getitem__(self, k):
        return self._data[k]

    def __setitem__(self, k, v):
        self._data[k] = v
        self._flush()

    def __delitem__(self, k):
        del self._data[k]
        self._flush()

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __repr__(self):
        return '<Config: %s>' % self.path

    def clear(self):
        """Clear all values from config."""
        self._data = {}
        self._flush()

    def get_path(self, key):
        """Look up a dotted key such as ``costs.c1``."""
        value = self._data
        for part in key.split('.'):
            if not isinstance(value, dict) or part not in value:
                raise KeyError(key)
            value = value[part]
        return value

    def set_path(self, key, value):
        """Set a dotted key, creating intermediate sections as needed."""
        parts = key.split('.')
        if len(parts) == 1:
            self[key] = value
            return
        section = dict(self._data.get(parts[0]) or {})
        node = section
        for part in parts[1:-1]:
            node[part] = dict(node.get(part) or {})
            node = node[part]
        node[parts[-1]] = value
        self[parts[0]] = section

    def remove_path(self, key):
        """Remove a dotted key."""
        parts = key.split('.')
        if len(parts) == 1:
            del self[key]
            return
        self.get_path(key)
        section = dict(self._data[parts[0]])
        node = section
        for part in parts[1:-1]:
            node[part] = dict(node[part])
            node = node[part]
        del node[parts[-1]]
        self[parts[0]] = section


class NetworkSettings(BaseModel):
    """Hyperparameters of the prioritization network."""
    hidden = IntType(default=8)
    theta = FloatType(default=1.0)
    lr = FloatType(default=0.5)
    epochs = IntType(default=2000)
    seed = IntType(default=0)

    def validate(self):
        if self.hidden < 1:
            raise InvariantError('network.hidden must be positive, got %s' % self.hidden)
        if not self.theta > 0:
            raise InvariantError('network.theta must be positive, got %s' % self.theta)
        if self.lr < 0:
            raise InvariantError('network.lr must be nonnegative, got %s' % self.lr)
        if self.epochs < 1:
            raise InvariantError('network.epochs must be positive, got %s' % self.epochs)


class ModelKinds(BaseModel):
    """Mean value model kind of the current and previous version."""
    current = StringType(default='go')
    previous = StringType(default='go')

    def validate(self):
        for name in ('current', 'previous'):
            if self[name] not in KINDS + ('auto',):
                raise InvariantError('models.%s must be one of %s, got %r'
                                     % (name, ', '.join(KINDS + ('auto',)), self[name]))


class FitSettings(BaseModel):
    starts = IntType(default=3)
    max_iterations = IntType(default=4000)

    def validate(self):
        if self.starts < 1 or self.max_iterations < 1:
            raise InvariantError('fit.starts and fit.max_iterations must be positive')


def _section(model, data, name):
    if data is None:
        return model()
    if not isinstance(data, dict):
        raise InvariantError('Config section %s must be a mapping' % name)
    try:
        return model(**data)
    except InvariantError as e:
        raise InvariantError('Config section %s: %s' % (name, e))


class ProjectConfig(object):
    """Validated project settings read from a :class:`Config` mapping.

    Every section is optional. ``costs`` is only needed by commands that compute a release policy, see
    :meth:`require_costs`.
    """

    SECTIONS = ('costs', 'stringency', 'stringency_mode', 'cost_odds', 'delta_rule', 'thresholds', 'fault_tolerance',
                'network', 'models', 'fit')

    def __init__(self, data=None):
        data = dict(data or {})
        unknown = sorted(k for k in data if k not in self.SECTIONS)
        if unknown:
            raise InvariantError('Unknown config key(s): %s' % ', '.join(unknown))
        self.costs = _section(CostParams, data['costs'], 'costs') if data.get('costs') is not None else None
        self.stringency = self._number(data, 'stringency', 0.3)
        if self.stringency < 0:
            raise InvariantError('stringency must be nonnegative, got %s' % self.stringency)
        self.stringency_mode = data.get('stringency_mode', CUMULATIVE)
        if self.stringency_mode not in STRINGENCY_MODES:
            raise InvariantError('stringency_mode must be one of %s' % ', '.join(STRINGENCY_MODES))
        self.cost_odds = self._number(data, 'cost_odds', 0.5)
        if not 0 <= self.cost_odds <= 1:
            raise InvariantError('cost_odds must lie in [0, 1], got %s' % self.cost_odds)
        self.delta_rule = data.get('delta_rule', PLAIN)
        if self.delta_rule not in DELTA_RULES:
            raise InvariantError('delta_rule must be one of %s' % ', '.join(DELTA_RULES))
        self.thresholds = check_thresholds(data.get('thresholds') or DEFAULT_THRESHOLDS)
        self.fault_tolerance = self._tolerance(data.get('fault_tolerance'))
        self.network = _section(NetworkSettings, data.get('network'), 'network')
        self.models = _section(ModelKinds, data.get('models'), 'models')
        self.fit = _section(FitSettings, data.get('fit'), 'fit')

    @staticmethod
    def _number(data, key, default):
        value = data.get(key, default)
        try:
            return float(value)
        except (TypeError, ValueError):
            raise InvariantError('%s must be a number, got %r' % (key, value))

    @staticmethod
    def _tolerance(data):
        tolerance = {c: 0 for c in CATEGORIES}
        if data is None:
            return tolerance
        if not isinstance(data, dict):
            raise InvariantError('fault_tolerance must map categories to counts')
        for key, value in six.iteritems(data):
            try:
                count = int(value)
            except (TypeError, ValueError):
                raise InvariantError('fault_tolerance for %s must be an integer, got %r' % (key, value))
            if count < 0:
                raise InvariantError('fault_tolerance for %s must be nonnegative' % key)
            tolerance[category_name(key)] = count
        return tolerance

    @classmethod
    def from_file(cls, path):
        if not os.path.isfile(path):
            raise InputError('Config file %s does not exist' % path)
        return cls(dict(Config(path)))

    def require_costs(self):
        """Return the cost parameters, raising :class:`InputError` if the config has none."""
        if self.costs is None:
            raise InputError('Config has no costs section')
        return self.costs

    def serialize(self):
        return {
            'costs': self.costs.serialize() if self.costs is not None else None,
            'stringency': self.stringency,
            'stringency_mode': self.stringency_mode,
            'cost_odds': self.cost_odds,
            'delta_rule': self.delta_rule,
            'thresholds': list(self.thresholds),
            'fault_tolerance': dict(self.fault_tolerance),
            'network': self.network.serialize(),
            'models': self.models.serialize(),
            'fit': self.fit.serialize(),
        }
