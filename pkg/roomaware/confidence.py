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
Pose confidences from the orientation particles.

The current pose confidence is the weighted share of particles inside a
virtual field of view around the believed view center, the reflected
pose confidence the share around its antipode. Both are smoothed with a
windowed moving average before the behaviour controller sees them.
'''

from collections import namedtuple, deque
from math import pi

import numpy as np

from roomaware.geometry import angle_diff

ConfidencePair = namedtuple('ConfidencePair', 'current reflected')


def pose_confidences(particles, believed_view_center, fov):
	assert 0 < fov < pi, "fov must be in (0, pi)"
	assert len(particles), "no particles"
	w = particles.normalized_weight()
	half = fov / 2
	current = w[np.abs(angle_diff(particles.azimuth, believed_view_center)) <= half].sum()
	reflected = w[np.abs(angle_diff(particles.azimuth, believed_view_center + pi)) <= half].sum()
	return ConfidencePair(min(float(current), 1.0), min(float(reflected), 1.0))


class ConfidenceHistory(object):
	"""Ring buffer of the last window samples, smoothed is their mean."""

	def __init__(self, window=15):
		assert window >= 1, "window must be at least 1"
		self.window = deque(maxlen=window)
		self.smoothed = ConfidencePair(0.0, 0.0)

	def push(self, sample):
		self.window.append(ConfidencePair(float(sample[0]), float(sample[1])))
		n = len(self.window)
		self.smoothed = ConfidencePair(
			sum(s.current for s in self.window) / n,
			sum(s.reflected for s in self.window) / n,
		)
		return self.smoothed

	def __len__(self):
		return len(self.window)


def smooth(h, sample):
	h.push(sample)
	return h
