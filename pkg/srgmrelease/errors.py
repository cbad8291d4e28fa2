# -*- coding: utf-8 -*-
"""
srgmrelease.errors
~~~~~~~~~~~~~~~~~~

Error classes for srgmrelease.

Each error carries the process exit code the command line interface uses when it is raised.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals


class SrgmError(Exception):
    """Base srgmrelease exception."""
    exit_code = 1


class InputError(SrgmError):
    """Raised when input data or configuration is invalid."""
    exit_code = 2


class DomainError(InputError):
    """Raised when an argument lies outside the domain of a function, e.g. a negative time."""


class InvariantError(InputError):
    """Raised when a record violates one of its invariants, e.g. c2 <= c1."""


class UndefinedDeviationError(DomainError):
    """Raised when a deviation is requested against a zero optimum."""

    def __init__(self, message, case=None):
        super(UndefinedDeviationError, self).__init__(message)
        self.case = case


class CsvFormatError(InputError):
    """Raised when a CSV file cannot be parsed. Names the offending line."""

    def __init__(self, message, path=None, line=None):
        if line is not None:
            message = '%s, line %s: %s' % (path or '<input>', line, message)
        super(CsvFormatError, self).__init__(message)
        self.path = path
        self.line = line


class NumericError(SrgmError):
    """Raised when a computation produces non-finite values."""
    exit_code = 3

    def __init__(self, message, epoch=None):
        super(NumericError, self).__init__(message)
        self.epoch = epoch


class ConvergenceError(SrgmError):
    """Raised when parameter estimation fails to converge."""
    exit_code = 4
