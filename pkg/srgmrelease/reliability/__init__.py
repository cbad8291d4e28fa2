# -*- coding: utf-8 -*-
"""
srgmrelease.reliability
~~~~~~~~~~~~~~~~~~~~~~~

NHPP software reliability growth models: mean value functions, estimation and simulation.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from .models import (GoParams, OhbaParams, MusaOkumotoParams, MeanValueModel, KINDS, model_class, params_from_dict,
                     mean_value, mean_value_go, mean_value_ohba, mean_value_mo, intensity, residual_faults)
from .dataset import FaultDataset, Observation, read_fault_csv, write_fault_csv
from .estimate import FitResult, fit_model, fit_result_from_dict, log_likelihood, select_model
from .simulate import simulate_nhpp, replicate_counts, write_event_csv
