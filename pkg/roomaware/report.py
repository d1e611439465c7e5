############################################################################
#                                                                          #
# Copyright (c) 2026 The roomaware authors                                 #
#                                                                          #
# Licensed under the Apache License, Version 2.0 (the "License");          #
# you may not use this file except in compliance with the License.         #
# You may obtain a copy of the License at                                  #
#                                                                          #
#  http://www.apache.org/licenses/LICENSE-2.0                              #
#                                                                          #
# Unless required by applicable law or agreed to in writing, software      #
# distributed under the License is distributed on an "AS IS" BASIS,        #
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. #
# See the License for the specific language governing permissions and      #
# limitations under the License.                                           #
#                                                                          #
############################################################################

from __future__ import print_function
from __future__ import division
from __future__ import unicode_literals

description = r'''
Experiment reports: one row per (scenario, init) group of trials with
the share of trials whose first signal was a flip, a purge or nothing,
and the mean time to that signal.
'''

import csv
from collections import namedtuple, OrderedDict
from io import open, StringIO

from roomaware.error import UserError
from roomaware.extras import FileWriteMove

FLIP = 'Flip'
PURGE = 'Purge'
FAILED = 'Failed'
CLASSIFICATIONS = (FLIP, PURGE, FAILED,)

COLUMNS = ('scenario', 'init', 'trials', 'flip_pct', 'purge_pct', 'failed_pct', 'correct_pct', 'mean_time_s', 'mean_flip_time_s', 'mean_purge_time_s',)

# correct_pct is over the signalled trials. Means exclude failed
# trials, they are None when there is nothing to average.
ReportRow = namedtuple('ReportRow', COLUMNS)

class ExperimentReport(namedtuple('ExperimentReport', 'rows')):
	__slots__ = ()

	def row(self, scenario, init):
		for r in self.rows:
			if (r.scenario, r.init) == (scenario, init):
				return r
		raise KeyError((scenario, init))


def _mean(values):
	return sum(values) / len(values) if values else None

def _pct(count, total):
	return 100.0 * count / total if total else 0.0

def aggregate(outcomes):
	"""ExperimentReport from TrialOutcomes, groups in order of first appearance."""
	groups = OrderedDict()
	for o in outcomes:
		groups.setdefault((o.scenario, o.init), []).append(o)
	rows = []
	for (scenario, init), trials in groups.items():
		by_kind = {k: [o for o in trials if o.classification == k] for k in CLASSIFICATIONS}
		signalled = by_kind[FLIP] + by_kind[PURGE]
		n = len(trials)
		rows.append(ReportRow(
			scenario, init, n,
			_pct(len(by_kind[FLIP]), n),
			_pct(len(by_kind[PURGE]), n),
			_pct(len(by_kind[FAILED]), n),
			_pct(sum(1 for o in signalled if o.correct_after_signal), len(signalled)) if signalled else None,
			_mean([o.first_signal[1] for o in signalled]),
			_mean([o.first_signal[1] for o in by_kind[FLIP]]),
			_mean([o.first_signal[1] for o in by_kind[PURGE]]),
		))
	return ExperimentReport(tuple(rows))


def _cell(v):
	if v is None:
		return ''
	if isinstance(v, float):
		return repr(v)
	return str(v)

def encode_csv(report):
	fh = StringIO()
	w = csv.writer(fh, lineterminator='\n')
	w.writerow(COLUMNS)
	for row in report.rows:
		w.writerow([_cell(v) for v in row])
	return fh.getvalue()

def parse_csv(text, filename='report.csv'):
	rows = list(csv.reader(StringIO(text)))
	if not rows or tuple(rows[0]) != COLUMNS:
		raise UserError('%s does not start with the report header' % (filename,))
	res = []
	for lineno, cells in enumerate(rows[1:], 2):
		if len(cells) != len(COLUMNS):
			raise UserError('Error on line %d of %s:\nExpected %d columns, got %d' % (lineno, filename, len(COLUMNS), len(cells),))
		try:
			floats = [float(v) if v else None for v in cells[3:]]
			res.append(ReportRow(cells[0], cells[1], int(cells[2]), *floats))
		except ValueError as e:
			raise UserError('Error on line %d of %s:\n%s' % (lineno, filename, e,))
	return ExperimentReport(tuple(res))

def write_report(report, filename):
	with FileWriteMove(filename, 'w') as fh:
		fh.write(encode_csv(report))

def read_report(filename):
	with open(filename, 'r', encoding='utf-8', newline='') as fh:
		return parse_csv(fh.read(), filename)


def print_report(report, cap_s=200.0):
	"""The report as an aligned table on stdout."""
	if not report.rows:
		print('No trials.')
		return
	fmt = '%-14s %-10s %6s %6s %6s %7s %8s %9s'
	print(fmt % ('scenario', 'init', 'trials', 'flip', 'purge', 'failed', 'correct', 'time',))
	for r in report.rows:
		print(fmt % (
			r.scenario, r.init, r.trials,
			'%.0f%%' % (r.flip_pct,), '%.0f%%' % (r.purge_pct,), '%.0f%%' % (r.failed_pct,),
			'-' if r.correct_pct is None else '%.0f%%' % (r.correct_pct,),
			'> %.0fs' % (cap_s,) if r.mean_time_s is None else '%.1fs' % (r.mean_time_s,),
		))
