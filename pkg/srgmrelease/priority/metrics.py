# -*- coding: utf-8 -*-
"""
srgmrelease.priority.metrics
~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Module metrics used to prioritise testing, and the normalized feature vector fed to the priority network.

Metric values are declared inputs (from a metrics CSV); nothing here parses source code.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import csv
import io
import logging

import six

from ..errors import CsvFormatError, InputError, InvariantError
from ..model import BaseModel, BoolType, FloatType, IntType, ListType, ModelType, StringType


log = logging.getLogger(__name__)


#: Names of the entries of a feature vector, in order.
FEATURES = (
    'production_hours',
    'decision_density',
    'programming_path_score',
    'size_score',
    'reporter_skill_score',
    'weight_priority_score',
    'retest_fraction',
    'coupling',
    'layout_inappropriateness',
    'maintenance_churn',
)


def _check_unit(record, name):
    value = record[name]
    if not 0 <= value <= 1:
        raise InvariantError('%s must lie in [0, 1], got %s' % (name, value))


class CouplingInputs(BaseModel):
    """Data, control, global and fan-in/fan-out counts of a module, with calibration constants k, a, b, c."""
    di = IntType(default=0)
    ci = IntType(default=0)
    do_ = IntType(default=0)
    co = IntType(default=0)
    gd = IntType(default=0)
    gc = IntType(default=0)
    w = IntType(default=0)
    r = IntType(default=0)
    calib_k = FloatType(default=1.0)
    calib_a = FloatType(default=1.0)
    calib_b = FloatType(default=1.0)
    calib_c = FloatType(default=1.0)

    def validate(self):
        for name in ('di', 'ci', 'do_', 'co', 'gd', 'gc', 'w', 'r'):
            if self[name] < 0:
                raise InvariantError('Coupling count %s must be nonnegative, got %s' % (name, self[name]))
        for name in ('calib_k', 'calib_a', 'calib_b', 'calib_c'):
            if not self[name] > 0:
                raise InvariantError('Coupling constant %s must be positive, got %s' % (name, self[name]))

    @property
    def denominator(self):
        return (self.di + self.calib_a * self.ci + self.do_ + self.calib_b * self.co + self.gd
                + self.calib_c * self.gc + self.w + self.r)


class Transition(BaseModel):
    frequency = FloatType(required=True)
    cost = FloatType(required=True)

    def validate(self):
        if self.frequency < 0 or self.cost < 0:
            raise InvariantError('Transition frequency and cost must be nonnegative')


class LayoutInputs(BaseModel):
    """Transitions of a proposed GUI layout and the cost of the optimal layout."""
    transitions = ListType(ModelType(Transition))
    optimal_layout_cost = FloatType(required=True)

    def __init__(self, transitions=(), **kwargs):
        transitions = [t if isinstance(t, Transition) else Transition(frequency=t[0], cost=t[1]) for t in transitions]
        super(LayoutInputs, self).__init__(transitions=transitions, **kwargs)

    def validate(self):
        if not self.transitions:
            raise InvariantError('Layout needs at least one transition')
        if not self.optimal_layout_cost > 0:
            raise InvariantError('optimal_layout_cost must be positive, got %s' % self.optimal_layout_cost)


class MaintenanceCounts(BaseModel):
    """Modules in the current release and how many were changed, added or deleted."""
    mt = IntType(required=True)
    fc = IntType(default=0)
    fa = IntType(default=0)
    fd = IntType(default=0)

    def validate(self):
        if self.mt < 1:
            raise InvariantError('mt must be at least 1, got %s' % self.mt)
        if min(self.fc, self.fa, self.fd) < 0:
            raise InvariantError('Maintenance counts must be nonnegative')


class ModuleRecord(BaseModel):
    """Declared metric inputs of one software module."""
    id = StringType(required=True)
    name = StringType(default='')
    depends_on = ListType(StringType())
    procedure_ccs = ListType(IntType())
    lloc = IntType(required=True)
    coupling_inputs = ModelType(CouplingInputs, default=None)
    layout = ModelType(LayoutInputs)
    maintenance = ModelType(MaintenanceCounts)
    production_hours = FloatType(default=0.0)
    programming_path_score = FloatType(default=0.0)
    size_score = FloatType(default=0.0)
    reporter_skill_score = FloatType(default=0.0)
    weight_priority_score = FloatType(default=0.0)
    reuse_fraction = FloatType(default=0.0)
    tested = BoolType(default=False)
    historical_faults = IntType()

    def validate(self):
        if not self.id:
            raise InvariantError('Module id must not be empty')
        if self.id in self.depends_on:
            raise InvariantError('Module %s depends on itself' % self.id)
        if not self.procedure_ccs:
            raise InvariantError('Module %s needs at least one procedure complexity' % self.id)
        if any(cc < 1 for cc in self.procedure_ccs):
            raise InvariantError('Module %s: cyclomatic complexities must be positive' % self.id)
        if self.lloc < 1:
            raise InvariantError('Module %s: lloc must be positive, got %s' % (self.id, self.lloc))
        if self.production_hours < 0 or self.size_score < 0:
            raise InvariantError('Module %s: production_hours and size_score must be nonnegative' % self.id)
        for name in ('programming_path_score', 'reporter_skill_score', 'weight_priority_score', 'reuse_fraction'):
            _check_unit(self, name)
        if self.historical_faults is not None and self.historical_faults < 0:
            raise InvariantError('Module %s: historical_faults must be nonnegative' % self.id)


def total_cyclomatic_complexity(ccs):
    """Total cyclomatic complexity of a module, sum(CC) - count(CC) + 1."""
    ccs = list(ccs)
    if not ccs:
        raise InputError('Total cyclomatic complexity needs at least one procedure')
    return sum(ccs) - len(ccs) + 1


def decision_density(cc, lloc):
    """Cyclomatic complexity per logical line of code."""
    if lloc <= 0:
        raise InputError('Decision density needs a positive LLOC, got %s' % lloc)
    return cc / lloc


def coupling(inputs):
    """Connectedness of a module, 1 - k / (di + a ci + do + b co + gd + c gc + w + r), clamped to [0, 1)."""
    denominator = inputs.denominator
    if not denominator > 0:
        raise InputError('Coupling is undefined when every count is zero')
    value = 1.0 - inputs.calib_k / denominator
    if value < 0:
        log.debug('Clamping coupling %s to 0 (k exceeds the weighted count)', value)
        value = 0.0
    return value


def layout_cost(transitions):
    """Layout cost, the sum of frequency x cost over the transitions."""
    transitions = [t if isinstance(t, Transition) else Transition(frequency=t[0], cost=t[1]) for t in transitions]
    if not transitions:
        raise InputError('Layout cost needs at least one transition')
    return sum(t.frequency * t.cost for t in transitions)


def layout_appropriateness(optimal_cost, proposed_cost):
    """Layout appropriateness, 100 x optimal / proposed. Equals 100 for an optimal layout."""
    if not optimal_cost > 0:
        raise InputError('Optimal layout cost must be positive, got %s' % optimal_cost)
    if not proposed_cost > 0:
        raise InputError('Proposed layout cost must be positive, got %s' % proposed_cost)
    return 100.0 * optimal_cost / proposed_cost


def software_maturity_index(counts):
    """Software maturity index [MT - (Fa + Fc + Fd)] / MT. Approaches 1 as a product stabilises."""
    if counts.mt < 1:
        raise InputError('Maturity index needs at least one module in the release')
    return (counts.mt - (counts.fa + counts.fc + counts.fd)) / counts.mt


def raw_features(record):
    """Unscaled feature values of a module, in :data:`FEATURES` order."""
    tcc = total_cyclomatic_complexity(record.procedure_ccs)
    if record.coupling_inputs is not None:
        coupling_value = coupling(record.coupling_inputs)
    else:
        coupling_value = 0.0
    if record.layout is not None:
        la = layout_appropriateness(record.layout.optimal_layout_cost, layout_cost(record.layout.transitions))
        layout_value = 1.0 - la / 100.0
    else:
        layout_value = 0.0
    if record.maintenance is not None:
        churn = 1.0 - software_maturity_index(record.maintenance)
    else:
        churn = 0.0
    return [
        float(record.production_hours),
        decision_density(tcc, record.lloc),
        float(record.programming_path_score),
        float(record.size_score),
        float(record.reporter_skill_score),
        float(record.weight_priority_score),
        # Fully reused code needs least retesting
        1.0 - record.reuse_fraction,
        coupling_value,
        layout_value,
        churn,
    ]


def project_ranges(records):
    """Per-feature (min, max) over all modules of a project."""
    if not records:
        raise InputError('Feature ranges need at least one module')
    columns = list(zip(*[raw_features(r) for r in records]))
    return [(min(c), max(c)) for c in columns]


def scale(value, low, high):
    """Min-max scale into [0, 1]; constant features map to 0.5."""
    if high == low:
        return 0.5
    return (value - low) / (high - low)


def feature_vector(record, ranges):
    """Min-max normalized feature vector of a module against its project's ranges."""
    return [scale(v, lo, hi) for v, (lo, hi) in zip(raw_features(record), ranges)]


def dependency_graph(records):
    """Map each module id to its parent ids, checking references and acyclicity.

    :raises InputError: For duplicate ids, unknown dependencies (naming the module) and cycles (listing the cycle).
    """
    graph = {}
    for record in records:
        if record.id in graph:
            raise InputError('Duplicate module id %s' % record.id)
        graph[record.id] = list(record.depends_on)
    for module_id, parents in six.iteritems(graph):
        for parent in parents:
            if parent not in graph:
                raise InputError('Module %s depends on unknown module %s' % (module_id, parent))
    cycle = find_cycle(graph)
    if cycle:
        raise InputError('Cyclic module dependencies: %s' % ' -> '.join(cycle))
    return graph


def find_cycle(graph):
    """Return a dependency cycle as a list of ids (first id repeated at the end), or None."""
    WHITE, GREY, BLACK = 0, 1, 2
    state = {node: WHITE for node in graph}
    stack = []

    def visit(node):
        state[node] = GREY
        stack.append(node)
        for parent in graph.get(node, ()):
            if state.get(parent, BLACK) == GREY:
                return stack[stack.index(parent):] + [parent]
            if state.get(parent) == WHITE:
                found = visit(parent)
                if found:
                    return found
        stack.pop()
        state[node] = BLACK
        return None

    for node in sorted(graph):
        if state[node] == WHITE:
            found = visit(node)
            if found:
                return found
    return None


def fault_density_targets(records):
    """Training targets from historical fault density (faults per LLOC), scaled into [0.1, 0.9].

    Only modules with a fault history are returned, as a dict of module id to target.
    """
    densities = {r.id: r.historical_faults / r.lloc for r in records if r.historical_faults is not None}
    if not densities:
        return {}
    low, high = min(densities.values()), max(densities.values())
    return {k: 0.1 + 0.8 * scale(v, low, high) for k, v in six.iteritems(densities)}


#: Columns of the metrics CSV schema. List-valued cells are semicolon separated; transitions are
#: ``frequency:cost`` pairs.
METRIC_COLUMNS = (
    'id', 'name', 'depends_on', 'procedure_ccs', 'lloc',
    'di', 'ci', 'do', 'co', 'gd', 'gc', 'w', 'r', 'calib_k', 'calib_a', 'calib_b', 'calib_c',
    'transitions', 'optimal_layout_cost', 'mt', 'fc', 'fa', 'fd',
    'production_hours', 'programming_path_score', 'size_score', 'reporter_skill_score', 'weight_priority_score',
    'reuse_fraction', 'tested', 'historical_faults',
)

REQUIRED_COLUMNS = ('id', 'procedure_ccs', 'lloc')

COUPLING_COLUMNS = ('di', 'ci', 'do', 'co', 'gd', 'gc', 'w', 'r')


def _split(cell):
    return [part.strip() for part in cell.split(';') if part.strip()]


def _truthy(cell):
    return cell.strip().lower() in {'1', 'true', 'yes', 'y'}


def parse_metrics_row(row):
    """Build a :class:`ModuleRecord` from a CSV row dict (all cells as strings, blanks allowed)."""
    cell = lambda name: (row.get(name) or '').strip()
    values = {
        'id': cell('id'),
        'name': cell('name'),
        'depends_on': _split(cell('depends_on')),
        'procedure_ccs': _split(cell('procedure_ccs')),
        'lloc': cell('lloc') or None,
        'tested': _truthy(cell('tested')),
    }
    for name in ('production_hours', 'programming_path_score', 'size_score', 'reporter_skill_score',
                 'weight_priority_score', 'reuse_fraction', 'historical_faults'):
        if cell(name):
            values[name] = cell(name)
    if any(cell(c) for c in COUPLING_COLUMNS):
        coupling_values = {('do_' if c == 'do' else c): cell(c) or 0 for c in COUPLING_COLUMNS}
        for c in ('calib_k', 'calib_a', 'calib_b', 'calib_c'):
            if cell(c):
                coupling_values[c] = cell(c)
        values['coupling_inputs'] = CouplingInputs(**coupling_values)
    if cell('transitions'):
        pairs = []
        for item in _split(cell('transitions')):
            frequency, sep, cost = item.partition(':')
            if not sep:
                raise InvariantError('Transition %r must be written frequency:cost' % item)
            pairs.append((frequency, cost))
        values['layout'] = LayoutInputs(pairs, optimal_layout_cost=cell('optimal_layout_cost') or None)
    if cell('mt'):
        values['maintenance'] = MaintenanceCounts(mt=cell('mt'), fc=cell('fc') or 0, fa=cell('fa') or 0,
                                                  fd=cell('fd') or 0)
    return ModuleRecord(**values)


def read_metrics_csv(path):
    """Read module records from a metrics CSV. Errors name the 1-based line."""
    records = []
    with io.open(path, encoding='utf8', newline='') as f:
        reader = csv.DictReader(f)
        if not reader.fieldnames:
            raise CsvFormatError('File is empty', path=path, line=1)
        fieldnames = [h.strip() for h in reader.fieldnames]
        unknown = [h for h in fieldnames if h not in METRIC_COLUMNS]
        if unknown:
            raise CsvFormatError('Unknown column(s): %s' % ', '.join(unknown), path=path, line=1)
        missing = [h for h in REQUIRED_COLUMNS if h not in fieldnames]
        if missing:
            raise CsvFormatError('Missing column(s): %s' % ', '.join(missing), path=path, line=1)
        reader.fieldnames = fieldnames
        for row in reader:
            if not any((v or '').strip() for v in row.values() if isinstance(v, six.string_types)):
                continue
            try:
                records.append(parse_metrics_row(row))
            except InvariantError as e:
                raise CsvFormatError(str(e), path=path, line=reader.line_num)
    if not records:
        raise CsvFormatError('No modules', path=path, line=2)
    log.debug('Read %s modules from %s', len(records), path)
    return records
