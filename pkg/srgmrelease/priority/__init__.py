# -*- coding: utf-8 -*-
"""
srgmrelease.priority
~~~~~~~~~~~~~~~~~~~~

Module metrics and the network that turns them into testing priorities.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from .metrics import (ModuleRecord, CouplingInputs, LayoutInputs, MaintenanceCounts, Transition, FEATURES,
                      total_cyclomatic_complexity, decision_density, coupling, layout_cost, layout_appropriateness,
                      software_maturity_index, raw_features, project_ranges, feature_vector, dependency_graph,
                      fault_density_targets, read_metrics_csv)
from .network import (NetworkWeights, TrainingSet, ImportanceVector, sigmoid, initialize_weights, forward, loss,
                      total_loss, gradients, train_backprop, importance_weights, score_modules, save_weights,
                      load_weights)
