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
Behaviour controller policy.

Once per frame decide() looks at the smoothed confidences, the
self-localization multimodality flag, the fall sensor and the penalty
state, and returns at most one command for the self-localization (flip
pose, purge reflection, reset orientation) together with the background
training gate.

A fall resets the orientation at once. Flip and purge need their margin
held for hold_frames consecutive frames and are blocked for
cooldown_frames after any command. The training gate stays closed after
a fall until a flip or purge, or until the current pose clearly wins.
While the robot is penalized the gate is closed, commands still go out.
'''

from collections import namedtuple

FLIP = 'FlipPose'
PURGE = 'PurgeReflection'
RESET = 'ResetOrientation'
COMMAND_KINDS = (FLIP, PURGE, RESET,)

BCCommand = namedtuple('BCCommand', 'kind frame')

ControllerConfig = namedtuple('ControllerConfig', 'flip_margin purge_margin hold_frames cooldown_frames train_margin')
ControllerConfig.__new__.__defaults__ = (0.25, 0.25, 10, 30, 0.15)

ControllerState = namedtuple('ControllerState', 'frame hold_flip hold_purge cooldown fall_latch penalized')
ControllerState.__new__.__defaults__ = (0, 0, 0, 0, False, False)

def check_config(cfg):
	assert 0 < cfg.flip_margin < 1, "flip_margin must be in (0, 1)"
	assert 0 < cfg.purge_margin < 1, "purge_margin must be in (0, 1)"
	assert 0 < cfg.train_margin < 1, "train_margin must be in (0, 1)"
	assert cfg.hold_frames >= 1, "hold_frames must be at least 1"
	assert cfg.cooldown_frames >= cfg.hold_frames, "cooldown_frames must be at least hold_frames"


def decide(smoothed, selfloc_multimodal, fall, state, cfg, penalized=False):
	"""Returns (command or None, training_gate, new state). state is not modified."""
	frame = state.frame
	cooldown = max(state.cooldown - 1, 0)
	diff = smoothed.current - smoothed.reflected
	if fall:
		state = ControllerState(frame + 1, 0, 0, cfg.cooldown_frames, True, bool(penalized))
		return BCCommand(RESET, frame), False, state
	hold_flip = state.hold_flip + 1 if -diff > cfg.flip_margin else 0
	hold_purge = state.hold_purge + 1 if diff > cfg.purge_margin else 0
	fall_latch = state.fall_latch and diff <= cfg.train_margin
	command = None
	if cooldown == 0:
		if hold_flip >= cfg.hold_frames:
			command = BCCommand(FLIP, frame)
		elif hold_purge >= cfg.hold_frames and selfloc_multimodal:
			command = BCCommand(PURGE, frame)
	if command:
		hold_flip = hold_purge = 0
		cooldown = cfg.cooldown_frames
		fall_latch = False
	gate = not (fall_latch or penalized) and cooldown == 0 and diff > cfg.train_margin
	return command, gate, ControllerState(frame + 1, hold_flip, hold_purge, cooldown, fall_latch, bool(penalized))


def gate_reason(state):
	"""Reason to log when the gate is closed in this state."""
	if state.fall_latch:
		return 'Fall'
	if state.penalized:
		return 'Penalty'
	return 'LowConfidence'


class Controller(object):
	"""decide() with its state kept between frames."""

	def __init__(self, cfg):
		check_config(cfg)
		self.cfg = cfg
		self.state = ControllerState()
		self.commands = []

	def step(self, smoothed, selfloc_multimodal, fall, penalized=False):
		command, gate, self.state = decide(smoothed, selfloc_multimodal, fall, self.state, self.cfg, penalized)
		if command:
			self.commands.append(command)
		return command, gate
