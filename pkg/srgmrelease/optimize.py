# -*- coding: utf-8 -*-
"""
srgmrelease.optimize
~~~~~~~~~~~~~~~~~~~~

Univariate minimisation helpers.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import logging
import math

from .errors import DomainError, NumericError


log = logging.getLogger(__name__)


#: Fraction of the bracket kept at each step, 1 / phi.
GOLDEN = (math.sqrt(5) - 1) / 2


def _finite(f, x):
    y = f(x)
    if not math.isfinite(y):
        raise NumericError('Objective is not finite at %r: %r' % (x, y))
    return y


def golden_section(f, lo, hi, tol=1e-6):
    """Minimize a unimodal ``f`` on [lo, hi] by golden-section search.

    The bracket shrinks by 1/phi per step and keeps one interior evaluation from the previous step, so each step costs
    a single call to ``f``.

    :param f: Objective, must return a finite float everywhere on the bracket.
    :param float lo: Left end of the bracket.
    :param float hi: Right end of the bracket.
    :param float tol: Stop once the bracket is narrower than this.
    :returns: ``(x, f(x))`` for the lower of the two final interior points, or the midpoint of a bracket that is
              already narrower than ``tol``.
    :raises DomainError: When ``hi < lo``.
    :raises NumericError: When ``f`` returns NaN or an infinity.
    """
    if hi < lo:
        raise DomainError('Bracket [%s, %s] is empty' % (lo, hi))
    if hi - lo <= tol:
        mid = 0.5 * (lo + hi)
        return mid, _finite(f, mid)

    left, right = lo, hi
    inner = right - GOLDEN * (right - left)
    outer = left + GOLDEN * (right - left)
    f_inner, f_outer = _finite(f, inner), _finite(f, outer)
    steps = 0
    while right - left > tol and inner < outer:
        steps += 1
        if f_inner <= f_outer:
            # Minimum lies in [left, outer]
            right, outer, f_outer = outer, inner, f_inner
            inner = right - GOLDEN * (right - left)
            f_inner = _finite(f, inner)
        else:
            left, inner, f_inner = inner, outer, f_outer
            outer = left + GOLDEN * (right - left)
            f_outer = _finite(f, outer)

    log.debug('Golden section on [%s, %s] took %s steps, bracket now [%s, %s]', lo, hi, steps, left, right)
    return (inner, f_inner) if f_inner <= f_outer else (outer, f_outer)
