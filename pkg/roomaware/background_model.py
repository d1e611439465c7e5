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
Background model: one colour histogram model (per bin moving average and
variance) for every tile of the wall, trained online.

With fixed smoothing weight N an update with perceived histogram x does,
per bin,
	mean_new = (N * mean_last + x) / (N + 1)
	var_new  = (N * var_last + N / (N + 1) * (mean_last - x)**2) / (N + 1)
and the first perception of a tile is copied as is (variance 0).

Training is gated: the behaviour controller closes the gate after a fall,
during a penalty or while the orientation is uncertain. Updates arriving
while the gate is closed are dropped and counted, they are not errors.
'''

from collections import namedtuple

import numpy as np

from roomaware.colour import BIN_COUNT, ColourHistogramModel
from roomaware.error import ModelFormat
from roomaware.geometry import CylinderParams, TileGrid

SNAPSHOT_MAGIC = 'roomaware-bgm'
SNAPSHOT_VERSION = 1

GATE_REASONS = ('Fall', 'Penalty', 'LowConfidence', 'Manual',)

GateEvent = namedtuple('GateEvent', 'frame enabled reason')


class BackgroundModel(object):
	def __init__(self, grid, n_param=20, training_enabled=True):
		assert n_param >= 1, "n_param must be at least 1"
		self.grid = grid
		self.n_param = int(n_param)
		self.training_enabled = bool(training_enabled)
		self.version = 0
		self.means = np.zeros((len(grid), BIN_COUNT))
		self.variances = np.zeros((len(grid), BIN_COUNT))
		self.seen = np.zeros(len(grid), dtype=bool)
		self.dropped_updates = 0
		self.gate_log = []

	def tile(self, tid):
		ix = self.grid.index(tid)
		return ColourHistogramModel(self.means[ix], self.variances[ix], self.seen[ix], self.n_param)

	@property
	def tiles(self):
		return {tid: self.tile(tid) for tid in self.grid.tiles}

	def seen_count(self):
		return int(self.seen.sum())

	def copy(self):
		res = BackgroundModel(self.grid, self.n_param, self.training_enabled)
		res.version = self.version
		res.means = self.means.copy()
		res.variances = self.variances.copy()
		res.seen = self.seen.copy()
		res.dropped_updates = self.dropped_updates
		res.gate_log = list(self.gate_log)
		return res

	def __eq__(self, other):
		return (
			isinstance(other, BackgroundModel) and
			self.grid == other.grid and
			self.n_param == other.n_param and
			self.training_enabled == other.training_enabled and
			self.version == other.version and
			np.array_equal(self.seen, other.seen) and
			np.array_equal(self.means, other.means) and
			np.array_equal(self.variances, other.variances)
		)

	def __ne__(self, other):
		return not self == other

	def update_tile(self, tid, perceived):
		"""Train tile tid with a perceived histogram. Returns True if the
		update was applied, False if the gate dropped it."""
		if not self.training_enabled:
			self.dropped_updates += 1
			return False
		ix = self.grid.index(tid)
		x = perceived.bins
		if not self.seen[ix]:
			self.means[ix] = x
			self.variances[ix] = 0.0
			self.seen[ix] = True
		else:
			n = self.n_param
			mu_last = self.means[ix]
			self.variances[ix] = (n * self.variances[ix] + (n / (n + 1)) * (mu_last - x) ** 2) / (n + 1)
			self.means[ix] = (n * mu_last + x) / (n + 1)
		self.version += 1
		return True

	def set_training_gate(self, enabled, reason, frame=None):
		"""Open or close the training gate. Only actual changes are logged."""
		assert reason in GATE_REASONS, reason
		enabled = bool(enabled)
		if enabled != self.training_enabled:
			self.training_enabled = enabled
			self.gate_log.append(GateEvent(frame, enabled, reason))
		return self


def update_tile(m, tid, perceived):
	m.update_tile(tid, perceived)
	return m

def set_training_gate(m, enabled, reason, frame=None):
	return m.set_training_gate(enabled, reason, frame)


# The snapshot is plain text so models can be diffed. Floats are written
# with repr, which reads back to the identical binary64 value.
#
# roomaware-bgm 1
# cylinder <cx> <cy> <radius> <z_min> <z_max> <rows> <cols>
# n_param <N>
# training_enabled <0|1>
# version <V>
# tile <row> <col> <seen> <16 means> <16 variances>   (rows * cols of these)
# end

def snapshot(m):
	p = m.grid.params
	lines = [
		'%s %d' % (SNAPSHOT_MAGIC, SNAPSHOT_VERSION,),
		'cylinder %r %r %r %r %r %d %d' % (float(p.center[0]), float(p.center[1]), float(p.radius), float(p.z_min), float(p.z_max), p.rows, p.cols,),
		'n_param %d' % (m.n_param,),
		'training_enabled %d' % (m.training_enabled,),
		'version %d' % (m.version,),
	]
	for ix, tid in enumerate(m.grid.tiles):
		values = ' '.join(repr(float(v)) for v in m.means[ix])
		values += ' ' + ' '.join(repr(float(v)) for v in m.variances[ix])
		lines.append('tile %d %d %d %s' % (tid.row, tid.col, m.seen[ix], values,))
	lines.append('end')
	return ('\n'.join(lines) + '\n').encode('ascii')

def load(data):
	try:
		text = data.decode('ascii') if isinstance(data, bytes) else data
	except UnicodeDecodeError:
		raise ModelFormat("Snapshot is not ascii")
	lines = text.split('\n')
	lineno = [0]
	def take(key, count, conv=float):
		if lineno[0] >= len(lines):
			raise ModelFormat("Truncated snapshot, expected %r" % (key,))
		parts = lines[lineno[0]].split()
		lineno[0] += 1
		if not parts or parts[0] != key or len(parts) != count + 1:
			raise ModelFormat("Line %d: expected %r with %d values" % (lineno[0], key, count,))
		try:
			return [conv(v) for v in parts[1:]]
		except ValueError:
			raise ModelFormat("Line %d: bad value for %r" % (lineno[0], key,))
	version, = take(SNAPSHOT_MAGIC, 1, int)
	if version != SNAPSHOT_VERSION:
		raise ModelFormat("Don't know how to load snapshot version %d" % (version,))
	cx, cy, radius, z_min, z_max, rows, cols = take('cylinder', 7)
	if rows != int(rows) or cols != int(cols) or rows < 1 or cols < 3 or radius <= 0 or z_max <= z_min:
		raise ModelFormat("Bad cylinder shape")
	grid = TileGrid(CylinderParams((cx, cy), radius, z_min, z_max, int(rows), int(cols)))
	n_param, = take('n_param', 1, int)
	if n_param < 1:
		raise ModelFormat("n_param must be at least 1")
	enabled, = take('training_enabled', 1, int)
	mversion, = take('version', 1, int)
	m = BackgroundModel(grid, n_param, bool(enabled))
	m.version = mversion
	for ix, tid in enumerate(grid.tiles):
		values = take('tile', 3 + 2 * BIN_COUNT)
		if (values[0], values[1]) != (tid.row, tid.col) or values[2] not in (0, 1):
			raise ModelFormat("Line %d: tile records out of order" % (lineno[0],))
		m.seen[ix] = bool(values[2])
		m.means[ix] = values[3:3 + BIN_COUNT]
		m.variances[ix] = values[3 + BIN_COUNT:]
		if (m.variances[ix] < 0).any():
			raise ModelFormat("Line %d: negative variance" % (lineno[0],))
	take('end', 0)
	return m

def save_model(m, filename):
	from roomaware.extras import FileWriteMove
	with FileWriteMove(filename) as fh:
		fh.write(snapshot(m))

def load_model(filename):
	with open(filename, 'rb') as fh:
		return load(fh.read())
