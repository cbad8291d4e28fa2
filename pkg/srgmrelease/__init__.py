# -*- coding: utf-8 -*-
"""
srgmrelease
~~~~~~~~~~~

Software reliability growth models, cost-optimal release times and module test prioritization.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import logging


__title__ = 'SRGM-Release'
__version__ = '0.1.0'
__license__ = 'MIT'

log = logging.getLogger(__name__)
log.addHandler(logging.NullHandler())
