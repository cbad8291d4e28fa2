# -*- coding: utf-8 -*-
"""
srgmrelease.reliability.dataset
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Time-stamped cumulative fault observations.

"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals
import csv
import io
import logging

import numpy as np

from ..errors import CsvFormatError, InvariantError
from ..model import BaseModel, FloatType, IntType, ListType, ModelType, StringType


log = logging.getLogger(__name__)


#: Header of the fault CSV schema.
FAULT_COLUMNS = ('time', 'cumulative_faults')


class Observation(BaseModel):
    """Cumulative number of faults observed by ``time``."""
    time = FloatType(required=True)
    cumulative_faults = IntType(required=True)

    def validate(self):
        if self.time < 0:
            raise InvariantError('Observation time must be nonnegative, got %s' % self.time)
        if self.cumulative_faults < 0:
            raise InvariantError('Cumulative faults must be nonnegative, got %s' % self.cumulative_faults)


class FaultDataset(BaseModel):
    """Ordered cumulative fault observations for one software version.

    Times are strictly increasing, counts nondecreasing, and the first time is positive. The time unit is a free-text
    label (calendar or execution time) and does not change any computation.
    """

    observations = ListType(ModelType(Observation))
    time_unit = StringType(default='')

    def __init__(self, observations=(), time_unit='', **kwargs):
        observations = [o if isinstance(o, Observation) else Observation(time=o[0], cumulative_faults=o[1])
                        for o in observations]
        super(FaultDataset, self).__init__(observations=observations, time_unit=time_unit, **kwargs)

    def validate(self):
        previous = None
        for i, obs in enumerate(self.observations):
            if i == 0 and not obs.time > 0:
                raise InvariantError('First observation time must be positive, got %s' % obs.time)
            if previous is not None:
                if not obs.time > previous.time:
                    raise InvariantError('Observation %s: times must be strictly increasing (%s after %s)'
                                         % (i + 1, obs.time, previous.time))
                if obs.cumulative_faults < previous.cumulative_faults:
                    raise InvariantError('Observation %s: cumulative faults must be nondecreasing (%s after %s)'
                                         % (i + 1, obs.cumulative_faults, previous.cumulative_faults))
            previous = obs

    def __len__(self):
        return len(self.observations)

    @property
    def times(self):
        return np.array([o.time for o in self.observations], dtype=float)

    @property
    def counts(self):
        return np.array([o.cumulative_faults for o in self.observations], dtype=int)

    @property
    def increments(self):
        """Faults detected in each interval (t[i-1], t[i]], with t[-1] = 0."""
        return np.diff(np.concatenate(([0], self.counts)))

    @property
    def total_faults(self):
        return int(self.observations[-1].cumulative_faults) if self.observations else 0

    @property
    def last_time(self):
        return self.observations[-1].time if self.observations else 0.0

    @classmethod
    def from_event_times(cls, times, grid, time_unit=''):
        """Group individual failure times into cumulative counts at each grid point.

        :param times: Failure times, in any order.
        :param grid: Strictly increasing observation times, the first positive.
        """
        times = np.sort(np.asarray(times, dtype=float))
        grid = np.asarray(grid, dtype=float)
        counts = np.searchsorted(times, grid, side='right')
        return cls([(float(t), int(k)) for t, k in zip(grid, counts)], time_unit=time_unit)


def read_fault_csv(path, time_unit=''):
    """Read a fault CSV with header ``time,cumulative_faults``.

    Errors name the 1-based line of the offending row.
    """
    observations = []
    with io.open(path, encoding='utf8', newline='') as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None:
            raise CsvFormatError('File is empty', path=path, line=1)
        if tuple(h.strip() for h in header) != FAULT_COLUMNS:
            raise CsvFormatError('Expected header %s, got %s' % (','.join(FAULT_COLUMNS), ','.join(header)),
                                 path=path, line=1)
        previous = None
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise CsvFormatError('Expected 2 columns, got %s' % len(row), path=path, line=line)
            try:
                obs = Observation(time=row[0].strip(), cumulative_faults=row[1].strip())
            except InvariantError as e:
                raise CsvFormatError(str(e), path=path, line=line)
            if previous is not None and not obs.time > previous.time:
                raise CsvFormatError('Time %s is not greater than previous time %s' % (obs.time, previous.time),
                                     path=path, line=line)
            if previous is not None and obs.cumulative_faults < previous.cumulative_faults:
                raise CsvFormatError('Cumulative faults decrease from %s to %s'
                                     % (previous.cumulative_faults, obs.cumulative_faults), path=path, line=line)
            if previous is None and not obs.time > 0:
                raise CsvFormatError('First observation time must be positive', path=path, line=line)
            observations.append(obs)
            previous = obs
    if not observations:
        raise CsvFormatError('No observations', path=path, line=2)
    log.debug('Read %s observations from %s', len(observations), path)
    return FaultDataset(observations, time_unit=time_unit)


def write_fault_csv(dataset, f):
    """Write a dataset to an open text file in the fault CSV schema."""
    writer = csv.writer(f, lineterminator='\n')
    writer.writerow(FAULT_COLUMNS)
    for obs in dataset.observations:
        writer.writerow(['%.10g' % obs.time, obs.cumulative_faults])
