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

from io import open
from os.path import join
from shutil import rmtree
from tempfile import mkdtemp

from roomaware.confidence import ConfidenceHistory
from roomaware.controller import Controller, ControllerConfig
from roomaware.error import UserError
from roomaware.extras import json_decode
from roomaware.statmsg import status_stack_export
from roomaware.triallog import encode, write_log, read_log, replay


def _log():
	"""A hand made trial: the reflected pose wins for a while."""
	cfg = ControllerConfig(hold_frames=3, cooldown_frames=8)
	history = ConfidenceHistory(4)
	controller = Controller(cfg)
	objs = [dict(type='trial', scenario='head-only', seed=1, init='reflected', side=0, frame_rate=10, fov=1.0, window=4, controller=dict(cfg._asdict()), verbose=False)]
	raw = [(0.2, 0.2)] * 3 + [(0.05, 0.8)] * 8 + [(0.7, 0.1)] * 10
	for frame, conf in enumerate(raw):
		smoothed = history.push(conf)
		command, gate = controller.step(smoothed, True, frame == 15)
		objs.append(dict(
			type='frame', frame=frame, t=frame / 10, view_center=0.0, multimodal=True, fall=frame == 15,
			confidence=list(conf), smoothed=list(smoothed), gate=gate, command=command.kind if command else None,
		))
	objs.append(dict(type='outcome', classification='Flip'))
	return objs


def test_encode():
	data = encode(_log())
	lines = data.split(b'\n')
	assert lines[-1] == b''
	assert len(lines) == 21 + 3
	assert lines[0].startswith(b'{"controller":{')
	assert b' ' not in data
	assert encode(_log()) == data

def test_write_read():
	tmp = mkdtemp()
	try:
		fn = join(tmp, 'head-only-1.jsonl')
		objs = _log()
		write_log(fn, objs)
		back = read_log(fn)
		assert back == objs
		assert back[1].confidence == [0.2, 0.2]
		assert back[0].controller.hold_frames == 3
		for text, want in (('', 'not a trial log'), ('{"type":"frame"}\n', 'not a trial log'), ('{"type":"trial"}\n{oops\n', 'Error on line 2'),):
			with open(fn, 'w', encoding='utf-8') as fh:
				fh.write(text)
			try:
				read_log(fn)
				raise Exception("Read a broken log %r" % (text,))
			except UserError as e:
				assert want in str(e), str(e)
	finally:
		rmtree(tmp)

def test_replay():
	tmp = mkdtemp()
	try:
		fn = join(tmp, 'head-only-1.jsonl')
		write_log(fn, _log())
		objs = read_log(fn)
	finally:
		rmtree(tmp)
	commands = [(o.frame, o.command) for o in objs if o.get('command')]
	assert [kind for _, kind in commands] == ['FlipPose', 'ResetOrientation'], commands
	frames, mismatches = replay(objs)
	assert frames == 21
	assert mismatches == []
	objs[12].gate = not objs[12].gate
	objs[2].confidence = [0.9, 0.0]
	frames, mismatches = replay(objs)
	found = [(m[0], m[1]) for m in mismatches]
	assert found[0] == (1, 'smoothed'), found
	assert [frame for frame, what in found if what == 'smoothed'] == [1, 2, 3, 4]
	assert (11, 'gate') in found

def test_replay_penalty():
	cfg = ControllerConfig(hold_frames=3, cooldown_frames=8)
	history = ConfidenceHistory(4)
	controller = Controller(cfg)
	objs = [dict(type='trial', scenario='penalty-walk', seed=2, init='correct', side=0, frame_rate=10, fov=1.0, window=4, controller=dict(cfg._asdict()), verbose=False)]
	for frame in range(20):
		penalized = 5 <= frame < 10
		smoothed = history.push((0.7, 0.1))
		command, gate = controller.step(smoothed, False, False, penalized)
		assert command is None
		assert gate == (not penalized)
		objs.append(dict(
			type='frame', frame=frame, t=frame / 10, view_center=0.0, multimodal=False, fall=False, penalty=penalized,
			confidence=[0.7, 0.1], smoothed=list(smoothed), gate=gate, command=None,
		))
	logged = [json_decode(line) for line in encode(objs).decode('ascii').split('\n') if line]
	assert replay(logged) == (20, [])
	for o in logged[1:]:
		del o['penalty']
	frames, mismatches = replay(logged)
	assert [(m[0], m[1]) for m in mismatches] == [(frame, 'gate') for frame in range(5, 10)]

def test_write_log_missing_dir():
	tmp = mkdtemp()
	try:
		fn = join(tmp, 'no such dir', 'head-only-1.jsonl')
		before = status_stack_export()
		try:
			write_log(fn, _log())
			raise Exception('Wrote a log into a missing directory')
		except (IOError, OSError):
			pass
		assert status_stack_export() == before
	finally:
		rmtree(tmp)
