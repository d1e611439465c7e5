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
Per-trial logs, one JSON object per line.

The first line is the trial header ("type": "trial"), then one
"frame" object per simulated frame, last an "outcome" object. Keys are
sorted and separators compact so a log is a byte exact function of the
trial.

replay() feeds a logged trial back through the confidence smoothing and
the behaviour controller and reports every frame where the recomputed
values differ from the logged ones.
'''

from io import open

import numpy as np

from roomaware.confidence import ConfidenceHistory, ConfidencePair, pose_confidences
from roomaware.controller import ControllerConfig, ControllerState, decide
from roomaware.error import UserError
from roomaware.extras import json_encode, json_decode, FileWriteMove
from roomaware.orientation_filter import OrientationParticles


def encode(objs):
	return b''.join(json_encode(o, compact=True) + b'\n' for o in objs)

def write_log(filename, objs):
	with FileWriteMove(filename) as fh:
		fh.write(encode(objs))

def read_log(filename):
	res = []
	with open(filename, 'r', encoding='utf-8') as fh:
		for lineno, line in enumerate(fh, 1):
			if not line.strip():
				continue
			try:
				res.append(json_decode(line))
			except ValueError as e:
				raise UserError('Error on line %d of %s:\n%s' % (lineno, filename, e,))
	if not res or res[0].get('type') != 'trial':
		raise UserError('%s is not a trial log (no trial header)' % (filename,))
	return res


def replay(objs):
	"""Returns (number of frames, [(frame, what, logged, recomputed), ...])."""
	header = objs[0]
	cfg = ControllerConfig(**header.controller)
	history = ConfidenceHistory(header.window)
	state = ControllerState()
	mismatches = []
	frames = 0
	for o in objs[1:]:
		if o.type != 'frame':
			continue
		frames += 1
		raw = ConfidencePair(*o.confidence)
		if 'particles' in o:
			arr = np.array(o.particles, dtype=np.float64).reshape(-1, 2)
			particles = OrientationParticles(arr[:, 0], arr[:, 1], wrap=False)
			again = pose_confidences(particles, o.view_center, header.fov)
			if tuple(again) != tuple(raw):
				mismatches.append((o.frame, 'confidence', list(raw), list(again)))
		smoothed = history.push(raw)
		if list(smoothed) != list(o.smoothed):
			mismatches.append((o.frame, 'smoothed', list(o.smoothed), list(smoothed)))
		command, gate, state = decide(smoothed, o.multimodal, o.fall, state, cfg, o.get('penalty', False))
		kind = command.kind if command else None
		if kind != o.command:
			mismatches.append((o.frame, 'command', o.command, kind))
		if gate != o.gate:
			mismatches.append((o.frame, 'gate', o.gate, gate))
	return frames, mismatches
