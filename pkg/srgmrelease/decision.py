# -*- coding: utf-8 -*-
"""
srgmrelease.decision
~~~~~~~~~~~~~~~~~~~~

Priority categories, deviation from the optimum, limiting factors and the stop-test recommendation.

Modules are bucketed into five categories by importance weight. After testing each category the deviations of
actual time and cost from the optimum are combined into a limiting factor δ::

    alpha = (Ta - T*) / T*
    beta  = (Ca - C0) / C0
    delta = alpha + beta                              (plain)
    delta = p (C - C*) / C* + (1 - p) (T - T*) / T*   (weighted by the cost odds p)

Categories are processed from VERY_HIGH to VERY_LOW and the running sum of δ is compared with the stringency,
the maximum deviation the organisation allows.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import csv
import io
import logging
from collections import Counter

import six

from .errors import CsvFormatError, InputError, InvariantError, UndefinedDeviationError
from .model import BaseModel, BoolType, FloatType, IntType, StringType
from .priority.metrics import find_cycle


log = logging.getLogger(__name__)


VERY_HIGH = 'VERY_HIGH'
HIGH = 'HIGH'
MEDIUM = 'MEDIUM'
LOW = 'LOW'
VERY_LOW = 'VERY_LOW'

#: Priority categories, highest first. This is also the processing order.
CATEGORIES = (VERY_HIGH, HIGH, MEDIUM, LOW, VERY_LOW)

#: Default importance weight cut points between the five categories.
DEFAULT_THRESHOLDS = (0.30, 0.20, 0.10, 0.05)

RELEASE = 'RELEASE'
CONTINUE_TESTING = 'CONTINUE_TESTING'
REJECT = 'REJECT'

#: Recommendations ordered from most to least favourable.
RECOMMENDATIONS = (RELEASE, CONTINUE_TESTING, REJECT)

CUMULATIVE = 'cumulative'
PER_CATEGORY = 'per_category'
STRINGENCY_MODES = (CUMULATIVE, PER_CATEGORY)

PLAIN = 'plain'
WEIGHTED = 'weighted'
DELTA_RULES = (PLAIN, WEIGHTED)


def category_name(value):
    """Normalize a category label such as ``very high`` or ``Very-High`` to ``VERY_HIGH``."""
    name = six.text_type(value).strip().upper().replace(' ', '_').replace('-', '_')
    if name not in CATEGORIES:
        raise InputError('Unknown priority category %r, expected one of %s' % (value, ', '.join(CATEGORIES)))
    return name


class PriorityAssignment(BaseModel):
    """Priority category of a module. ``tie`` flags modules sharing their weight, where a manual decision may be
    preferred."""
    module_id = StringType(required=True)
    p_k = FloatType(required=True)
    category = StringType(required=True)
    boosted = BoolType(default=False)
    tie = BoolType(default=False)

    def validate(self):
        category_name(self.category)


class TestOutcome(BaseModel):
    """Actual time and cost spent testing one category, and its fault tally."""
    category = StringType(default=VERY_HIGH)
    actual_time = FloatType(required=True)
    actual_cost = FloatType(required=True)
    faults_found = IntType(default=0)
    faults_tolerated = IntType(default=0)
    optimal_time = FloatType(null=True)
    optimal_cost = FloatType(null=True)

    # Not a pytest test class
    __test__ = False

    def validate(self):
        category_name(self.category)
        for name in ('actual_time', 'actual_cost', 'faults_found', 'faults_tolerated'):
            if self[name] < 0:
                raise InvariantError('%s must be nonnegative, got %s' % (name, self[name]))


class Decision(BaseModel):
    """Deviations, limiting factor and recommendation for one category."""
    category = StringType(default=VERY_HIGH)
    alpha = FloatType(required=True)
    beta = FloatType(required=True)
    delta = FloatType(required=True)
    weighted_delta = FloatType(null=True)
    cumulative_delta = FloatType(null=True)
    stringency = FloatType(required=True)
    within_stringency = BoolType(default=True)
    recommendation = StringType(required=True)

    def validate(self):
        if self.recommendation not in RECOMMENDATIONS:
            raise InvariantError('Unknown recommendation %r' % self.recommendation)


def check_thresholds(thresholds):
    thresholds = tuple(float(t) for t in thresholds)
    if len(thresholds) != len(CATEGORIES) - 1:
        raise InvariantError('Expected %s thresholds, got %s' % (len(CATEGORIES) - 1, len(thresholds)))
    if not all(0 < t < 1 for t in thresholds):
        raise InvariantError('Thresholds must lie in (0, 1): %s' % (thresholds,))
    if not all(a > b for a, b in zip(thresholds, thresholds[1:])):
        raise InvariantError('Thresholds must be strictly decreasing: %s' % (thresholds,))
    return thresholds


def bucket(p_k, thresholds=DEFAULT_THRESHOLDS):
    """Category of a single importance weight."""
    for category, cut in zip(CATEGORIES, thresholds):
        if p_k >= cut:
            return category
    return VERY_LOW


def categorize(assignments, dependencies=None, thresholds=DEFAULT_THRESHOLDS, tested=()):
    """Bucket modules by importance weight and promote children of untested, higher-priority parents.

    A module with an untested parent in a strictly higher category moves up one category. Promotion is computed
    from the unpromoted categories, so re-running on the output changes nothing.

    :param assignments: (module_id, p_k) pairs.
    :param dict dependencies: Module id to list of parent ids.
    :param thresholds: Four strictly decreasing cut points in (0, 1).
    :param tested: Ids of modules already tested.
    :returns: list of :class:`PriorityAssignment`, ordered by decreasing p_k then module id.
    """
    thresholds = check_thresholds(thresholds)
    dependencies = dependencies or {}
    assignments = [(six.text_type(m), float(p)) for m, p in assignments]
    ids = [m for m, _ in assignments]
    if len(set(ids)) != len(ids):
        raise InputError('Duplicate module ids in assignments')
    known = set(ids)
    for child, parents in six.iteritems(dependencies):
        for parent in parents:
            if parent not in known:
                raise InputError('Module %s depends on unknown module %s' % (child, parent))
    cycle = find_cycle({m: list(dependencies.get(m, ())) for m in ids})
    if cycle:
        raise InputError('Cyclic module dependencies: %s' % ' -> '.join(cycle))

    tested = set(tested)
    base = {m: CATEGORIES.index(bucket(p, thresholds)) for m, p in assignments}
    weight_counts = Counter(p for _, p in assignments)
    result = []
    for module_id, p_k in sorted(assignments, key=lambda a: (-a[1], a[0])):
        rank = base[module_id]
        boosted = any(parent not in tested and base[parent] < rank for parent in dependencies.get(module_id, ()))
        if boosted:
            rank -= 1
            log.debug('Promoting %s to %s (untested parent in a higher category)', module_id, CATEGORIES[rank])
        tie = weight_counts[p_k] > 1
        if tie:
            log.info('Module %s shares weight %s with another module, manual decision may be preferred', module_id, p_k)
        result.append(PriorityAssignment(module_id=module_id, p_k=p_k, category=CATEGORIES[rank], boosted=boosted,
                                         tie=tie))
    return result


def deviation_time(actual, optimal, case=None):
    """Relative deviation of actual testing time from the optimum, (Ta - T*) / T*."""
    if optimal == 0:
        raise UndefinedDeviationError('Time deviation is undefined for T* = 0 (policy case %s)'
                                      % (case or 'NO_TESTING'), case=case or 'NO_TESTING')
    if optimal < 0:
        raise InputError('Optimal time must be positive, got %s' % optimal)
    return (actual - optimal) / optimal


def deviation_cost(actual, optimal):
    """Relative deviation of actual testing cost from the optimum, (Ca - C0) / C0."""
    if optimal == 0:
        raise UndefinedDeviationError('Cost deviation is undefined for C0 = 0')
    if optimal < 0:
        raise InputError('Optimal cost must be positive, got %s. With a previous-version fit (--prev) and c4 < c2 '
                         'the term (c4 - c2) n(T) lowers the expected cost; check c4 and the previous-version fit'
                         % optimal)
    return (actual - optimal) / optimal


def limiting_factor(alpha, beta):
    """Plain limiting factor alpha + beta."""
    return alpha + beta


def weighted_limiting_factor(C, C_star, T, T_star, p):
    """Limiting factor weighting cost deviation by the odds ``p`` in favour of cost and time deviation by 1 - p."""
    if not 0 <= p <= 1:
        raise InvariantError('Cost odds p must lie in [0, 1], got %s' % p)
    return p * deviation_cost(C, C_star) + (1 - p) * deviation_time(T, T_star)


def recommend(delta, stringency, outcome, category=None, alpha=None, beta=None):
    """Recommendation for a limiting factor.

    REJECT when delta exceeds the stringency, CONTINUE_TESTING when it does not but more faults were found than
    tolerated, RELEASE otherwise.
    """
    if stringency < 0:
        raise InputError('Stringency must be nonnegative, got %s' % stringency)
    within = delta <= stringency
    if not within:
        recommendation = REJECT
    elif outcome.faults_found > outcome.faults_tolerated:
        recommendation = CONTINUE_TESTING
    else:
        recommendation = RELEASE
    return Decision(
        category=category or outcome.category,
        alpha=alpha if alpha is not None else 0.0,
        beta=beta if beta is not None else 0.0,
        delta=delta,
        stringency=stringency,
        within_stringency=within,
        recommendation=recommendation,
    )


def evaluate_categories(policy, outcomes, stringency, cost_odds=0.5, delta_rule=PLAIN, mode=CUMULATIVE):
    """Process category outcomes from VERY_HIGH to VERY_LOW.

    Each outcome is compared with its own optimum when given, otherwise with the policy's T* and C0.

    :returns: dict with ``decisions`` (list of :class:`Decision`), ``verdict`` and ``triggered_by`` (first
              category that was rejected, or None).
    :raises UndefinedDeviationError: When an optimum is zero, e.g. a NO_TESTING policy.
    """
    if delta_rule not in DELTA_RULES:
        raise InputError('Unknown delta rule %r' % delta_rule)
    if mode not in STRINGENCY_MODES:
        raise InputError('Unknown stringency mode %r' % mode)
    if stringency < 0:
        raise InputError('Stringency must be nonnegative, got %s' % stringency)
    by_category = {}
    for outcome in outcomes:
        name = category_name(outcome.category)
        if name in by_category:
            raise InputError('Duplicate outcome for category %s' % name)
        by_category[name] = outcome

    cumulative = 0.0
    decisions = []
    triggered_by = None
    for category in CATEGORIES:
        outcome = by_category.get(category)
        if outcome is None:
            continue
        t_opt = outcome.optimal_time if outcome.optimal_time is not None else policy.t_star
        c_opt = outcome.optimal_cost if outcome.optimal_cost is not None else policy.expected_cost_at_t_star
        alpha = deviation_time(outcome.actual_time, t_opt, case=policy.case)
        beta = deviation_cost(outcome.actual_cost, c_opt)
        plain = limiting_factor(alpha, beta)
        weighted = weighted_limiting_factor(outcome.actual_cost, c_opt, outcome.actual_time, t_opt, cost_odds)
        chosen = weighted if delta_rule == WEIGHTED else plain
        cumulative += chosen
        checked = cumulative if mode == CUMULATIVE else chosen
        decision = recommend(checked, stringency, outcome, category=category, alpha=alpha, beta=beta)
        decision = decision.replace(delta=plain, weighted_delta=weighted, cumulative_delta=cumulative)
        log.info('%s: alpha=%.6g beta=%.6g delta=%.6g cumulative=%.6g -> %s', category, alpha, beta, chosen,
                 cumulative, decision.recommendation)
        if decision.recommendation == REJECT and triggered_by is None:
            triggered_by = category
        decisions.append(decision)

    if not decisions:
        raise InputError('No category outcomes to evaluate')
    verdict = max((d.recommendation for d in decisions), key=RECOMMENDATIONS.index)
    return {'decisions': decisions, 'verdict': verdict, 'triggered_by': triggered_by}


#: Columns of the actuals CSV schema; the last three are optional.
ACTUALS_COLUMNS = ('category', 'actual_time', 'actual_cost', 'faults_found', 'faults_tolerated', 'optimal_time',
                   'optimal_cost')


def read_actuals_csv(path, fault_tolerance=None):
    """Read per-category test outcomes. Blank ``faults_tolerated`` cells fall back to ``fault_tolerance``."""
    fault_tolerance = fault_tolerance or {}
    outcomes = []
    with io.open(path, encoding='utf8', newline='') as f:
        reader = csv.DictReader(f)
        if not reader.fieldnames:
            raise CsvFormatError('File is empty', path=path, line=1)
        fieldnames = [h.strip() for h in reader.fieldnames]
        missing = [c for c in ACTUALS_COLUMNS[:4] if c not in fieldnames]
        if missing:
            raise CsvFormatError('Missing column(s): %s' % ', '.join(missing), path=path, line=1)
        unknown = [c for c in fieldnames if c not in ACTUALS_COLUMNS]
        if unknown:
            raise CsvFormatError('Unknown column(s): %s' % ', '.join(unknown), path=path, line=1)
        reader.fieldnames = fieldnames
        for row in reader:
            values = {k: (v or '').strip() for k, v in row.items() if k in ACTUALS_COLUMNS}
            if not any(values.values()):
                continue
            try:
                category = category_name(values['category'])
                tolerated = values.get('faults_tolerated') or fault_tolerance.get(category, 0)
                outcomes.append(TestOutcome(
                    category=category,
                    actual_time=values['actual_time'],
                    actual_cost=values['actual_cost'],
                    faults_found=values['faults_found'] or 0,
                    faults_tolerated=tolerated,
                    optimal_time=values.get('optimal_time') or None,
                    optimal_cost=values.get('optimal_cost') or None,
                ))
            except InputError as e:
                raise CsvFormatError(str(e), path=path, line=reader.line_num)
    if not outcomes:
        raise CsvFormatError('No category outcomes', path=path, line=2)
    return outcomes
