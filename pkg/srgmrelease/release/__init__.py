# -*- coding: utf-8 -*-
"""
srgmrelease.release
~~~~~~~~~~~~~~~~~~~

Expected testing and operational cost, and the cost-optimal release policy.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from .cost import (CostParams, expected_cost, expected_cost_multiversion, cost_ratio, release_cost_function,
                   cost_curve)
from .policy import (ReleasePolicy, optimal_release_time, optimize_release_numeric, NO_TESTING, INTERIOR,
                     FULL_LIFECYCLE, CASES)
