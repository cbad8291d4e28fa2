# -*- coding: utf-8 -*-
"""
srgmrelease.model
~~~~~~~~~~~~~~~~~

Record types shared by the reliability, release, priority and decision code.

Records are declared as classes with typed field descriptors::

    class GoParams(BaseModel):
        a = FloatType(required=True)
        b = FloatType(required=True)

Field values are converted by the field type on assignment, checked by :meth:`BaseModel.validate` and frozen once
the constructor returns.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import copy
from abc import ABCMeta
import logging
import math

import six

from .errors import InvariantError


log = logging.getLogger(__name__)


class BaseType(six.with_metaclass(ABCMeta)):

    # This is assigned by ModelMeta to match the attribute on the Model
    name = None

    def __init__(self, default=None, null=False, required=False):
        """

        :param default: (Optional) The default value for this field if none is set.
        :param bool null: (Optional) Include in serialized output even if value is None. Default False.
        :param bool required: (Optional) Whether a value is required. Default False.
        """
        self.default = default
        self.null = null
        self.required = required

    def __get__(self, instance, owner):
        """Descriptor for retrieving a value from a field in a Model."""
        # Check if Model class is being called, rather than Model instance
        if instance is None:
            return self
        return instance._values.get(self.name)

    def __set__(self, instance, value):
        """Descriptor for assigning a value to a field in a Model."""
        if instance._frozen:
            raise AttributeError('%s is immutable' % instance.__class__.__name__)
        instance._values[self.name] = self.process(value) if value is not None else None

    def process(self, value):
        """Convert an assigned value into the desired data format."""
        return value

    def serialize(self, value):
        """Serialize this field."""
        if hasattr(value, 'serialize'):
            # i.e. value is a nested model
            return value.serialize()
        return value


class StringType(BaseType):

    def process(self, value):
        return six.text_type(value)


class FloatType(BaseType):
    """A floating point number field. Values must be finite unless ``finite=False``."""

    def __init__(self, finite=True, **kwargs):
        super(FloatType, self).__init__(**kwargs)
        self.finite = finite

    def process(self, value):
        try:
            value = float(value)
        except (TypeError, ValueError):
            raise InvariantError('%s must be a number, got %r' % (self.name, value))
        if self.finite and not math.isfinite(value):
            raise InvariantError('%s must be finite, got %r' % (self.name, value))
        return value


class IntType(BaseType):

    def process(self, value):
        try:
            converted = int(value)
        except (TypeError, ValueError):
            raise InvariantError('%s must be an integer, got %r' % (self.name, value))
        if isinstance(value, float) and converted != value:
            raise InvariantError('%s must be an integer, got %r' % (self.name, value))
        return converted


class BoolType(BaseType):

    def process(self, value):
        return bool(value)


class ModelType(BaseType):

    def __init__(self, model, **kwargs):
        self.model_class = model
        super(ModelType, self).__init__(**kwargs)

    def process(self, value):
        if isinstance(value, dict):
            return self.model_class(**value)
        return value


class ListType(BaseType):

    def __init__(self, field, default=None, **kwargs):
        super(ListType, self).__init__(**kwargs)
        self.field = field
        self.default = default if default is not None else []

    def process(self, value):
        # Tuples keep list fields immutable once the record is frozen
        return tuple(self.field.process(v) for v in value)

    def serialize(self, value):
        return [self.field.serialize(v) for v in value]


class ModelMeta(ABCMeta):
    """Collects the field descriptors of a record class into ``fields``."""

    def __new__(mcs, name, bases, attrs):
        fields = {}
        for attr_name, attr_value in six.iteritems(attrs):
            if isinstance(attr_value, BaseType):
                # Set the name attribute on the Type to the attribute name on the Model
                attr_value.name = six.text_type(attr_name)
                fields[attr_name] = attr_value
        cls = super(ModelMeta, mcs).__new__(mcs, name, bases, attrs)
        cls.fields = cls.fields.copy()
        cls.fields.update(fields)
        return cls


class BaseModel(six.with_metaclass(ModelMeta)):
    """Immutable record with typed fields."""

    fields = {}

    def __init__(self, **raw_data):
        self._frozen = False
        self._values = {}
        for key, value in six.iteritems(raw_data):
            if key not in self.fields:
                raise InvariantError('%s has no field %r' % (self.__class__.__name__, key))
            setattr(self, key, value)
        # Set defaults
        for key, field in six.iteritems(self.fields):
            if key not in raw_data:
                setattr(self, key, copy.copy(field.default))
        for key, field in six.iteritems(self.fields):
            if field.required and self._values.get(key) is None:
                raise InvariantError('%s requires a value for %s' % (self.__class__.__name__, key))
        self.validate()
        self._frozen = True

    def validate(self):
        """Check record invariants. Subclasses raise :class:`~srgmrelease.errors.InvariantError` on violation."""
        pass

    def replace(self, **changes):
        """Return a copy of this record with some fields changed."""
        values = dict(self._values)
        values.update(changes)
        return self.__class__(**values)

    def __setattr__(self, key, value):
        if key in self.fields or key.startswith('_'):
            return super(BaseModel, self).__setattr__(key, value)
        raise AttributeError('%s has no field %r' % (self.__class__.__name__, key))

    def __repr__(self):
        return '<%s: %s>' % (self.__class__.__name__, ', '.join('%s=%r' % (k, self._values[k]) for k in sorted(self.fields)))

    def __eq__(self, other):
        if isinstance(other, self.__class__):
            return self._values == other._values
        return False

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.__class__.__name__, tuple(sorted(self._values.items()))))

    def __iter__(self):
        return iter(self.fields)

    def __getitem__(self, key):
        """Redirect dictionary-style field access to attribute-style."""
        if key in self.fields:
            return getattr(self, key)
        raise KeyError(key)

    def keys(self):
        return list(iter(self))

    def items(self):
        return [(k, getattr(self, k)) for k in self]

    def get(self, key, default=None):
        return getattr(self, key, default)

    def serialize(self):
        """Convert this record to a dictionary of primitive values."""
        data = {}
        for field_name, field in six.iteritems(self.fields):
            value = self._values.get(field_name)
            if value is None:
                if field.null:
                    data[field.name] = None
                continue
            data[field.name] = field.serialize(value)
        return data

    def to_json(self):
        """Convert this record to a byte-stable JSON string."""
        from .utils import dumps
        return dumps(self.serialize())
