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
Monte-Carlo self-localization on a point symmetric field.

This is the baseline localization whose particle set the behaviour
controller manipulates. With identical goals every landmark layout is
invariant under the point reflection (x, y, heading) -> (-x, -y,
heading + pi), so from landmarks alone a pose and its reflection are
equally likely.

Headings are stored as unit direction vectors. Reflection negates them
exactly, which makes flip_pose an exact involution and lets a flipped
particle set run through mcl_step in exact lockstep with the original.
'''

from collections import namedtuple
from math import pi, cos, sin, atan2

import numpy as np

from roomaware.error import PurgeWouldEmpty
from roomaware.geometry import wrap_angle, angle_diff
from roomaware.orientation_filter import systematic_indexes

GOAL_POST = 'GoalPost'
LINE_JUNCTION = 'LineJunction'
CIRCLE_CENTER = 'CircleCenter'
LANDMARK_CLASSES = (GOAL_POST, LINE_JUNCTION, CIRCLE_CENTER,)

# dominant cluster neighbourhood in best_pose
CLUSTER_RADIUS = 0.5
CLUSTER_HEADING = pi / 2

Pose2D = namedtuple('Pose2D', 'x y heading')

LandmarkObservation = namedtuple('LandmarkObservation', 'landmark_class bearing range noise_std')

SelfLocConfig = namedtuple('SelfLocConfig', 'count purge_radius motion_noise inject_fraction init_spread multimodal_share')
SelfLocConfig.__new__.__defaults__ = (100, 1.0, (0.02, 0.02, 0.01), 0.01, (0.1, 0.1, 0.05), 0.2)

def check_config(cfg):
	assert cfg.count >= 10, "count must be at least 10"
	assert cfg.purge_radius > 0, "purge_radius must be positive"
	assert 0 <= cfg.inject_fraction < 0.5, "inject_fraction must be in [0, 0.5)"
	assert 0 < cfg.multimodal_share < 0.5, "multimodal_share must be in (0, 0.5)"
	assert len(cfg.motion_noise) == 3 and len(cfg.init_spread) == 3


def reflect(pose):
	"""Point reflection about the field center."""
	h = pose.heading
	return Pose2D(-pose.x, -pose.y, h + pi if h < 0 else h - pi)


class FieldMap(object):
	"""Landmarks of a field with identical goals, by class.

	Line junctions are the corners, the two ends of the middle line,
	the front corners of both goal areas and the two penalty marks.
	"""

	def __init__(self, length=6.0, width=4.0, goal_width=1.5, penalty_distance=1.8, goal_area_depth=0.6, goal_area_width=2.2):
		assert length > 0 and width > 0
		assert 0 < goal_width < width
		assert 0 < penalty_distance < length / 2
		self.length = float(length)
		self.width = float(width)
		hl, hw = self.length / 2, self.width / 2
		half = [
			(GOAL_POST, hl, goal_width / 2),
			(GOAL_POST, hl, -goal_width / 2),
			(LINE_JUNCTION, hl, hw),
			(LINE_JUNCTION, hl, -hw),
			(LINE_JUNCTION, 0.0, hw),
			(LINE_JUNCTION, hl - goal_area_depth, goal_area_width / 2),
			(LINE_JUNCTION, hl - goal_area_depth, -goal_area_width / 2),
			(LINE_JUNCTION, hl - penalty_distance, 0.0),
		]
		points = {cls: [] for cls in LANDMARK_CLASSES}
		for cls, x, y in half:
			points[cls].append((x, y))
			points[cls].append((-x, -y))
		points[CIRCLE_CENTER].append((0.0, 0.0))
		self.landmarks = {cls: np.array(v, dtype=np.float64) for cls, v in points.items()}

	def is_symmetric(self):
		for pts in self.landmarks.values():
			mirrored = {(float(-x) + 0.0, float(-y) + 0.0) for x, y in pts}
			if mirrored != {(float(x) + 0.0, float(y) + 0.0) for x, y in pts}:
				return False
		return True

	def penalty_mark(self, side):
		"""side 0 is the own half (negative x)."""
		x = self.landmarks[LINE_JUNCTION][-1][0]
		return (-abs(x), 0.0) if side == 0 else (abs(x), 0.0)


class ParticleSet(object):
	"""N particles as xy (N, 2), unit heading vectors (N, 2) and weights (N,)."""

	__slots__ = ('xy', 'direction', 'weight',)

	def __init__(self, xy, direction, weight=None):
		self.xy = np.array(xy, dtype=np.float64).reshape(-1, 2)
		self.direction = np.array(direction, dtype=np.float64).reshape(-1, 2)
		if weight is None:
			weight = np.full(len(self.xy), 1.0 / max(len(self.xy), 1))
		self.weight = np.array(weight, dtype=np.float64).reshape(-1)

	@classmethod
	def from_poses(cls, poses, weight=None):
		poses = np.asarray(poses, dtype=np.float64).reshape(-1, 3)
		direction = np.stack([np.cos(poses[:, 2]), np.sin(poses[:, 2])], axis=1)
		return cls(poses[:, :2], direction, weight)

	def __len__(self):
		return len(self.xy)

	@property
	def heading(self):
		return wrap_angle(np.arctan2(self.direction[:, 1], self.direction[:, 0]))

	@property
	def poses(self):
		return np.column_stack([self.xy, self.heading])

	def copy(self):
		return ParticleSet(self.xy.copy(), self.direction.copy(), self.weight.copy())

	def normalized_weight(self):
		total = self.weight.sum()
		if total > 0:
			return self.weight / total
		return np.full(len(self), 1.0 / len(self))

	def __eq__(self, other):
		return (
			isinstance(other, ParticleSet) and
			np.array_equal(self.xy, other.xy) and
			np.array_equal(self.direction, other.direction) and
			np.array_equal(self.weight, other.weight)
		)

	def __ne__(self, other):
		return not self == other


def init_particles(pose, cfg, rng):
	sx, sy, sh = cfg.init_spread
	n = cfg.count
	xy = np.column_stack([pose.x + rng.normal(0.0, sx, n), pose.y + rng.normal(0.0, sy, n)])
	h = pose.heading + rng.normal(0.0, sh, n)
	return ParticleSet(xy, np.column_stack([np.cos(h), np.sin(h)]))


def _rotate(direction, angle):
	c, s = np.cos(angle), np.sin(angle)
	dx, dy = direction[:, 0], direction[:, 1]
	res = np.column_stack([dx * c - dy * s, dy * c + dx * s])
	return res / np.hypot(res[:, 0], res[:, 1])[:, None]

def _move(particles, odometry, noise, rng):
	"""Sample motion model. odometry is (forward, left, turn) in the robot
	frame, noise is added in the robot frame too."""
	n = len(particles)
	fwd = odometry[0] + rng.normal(0.0, noise[0], n)
	left = odometry[1] + rng.normal(0.0, noise[1], n)
	turn = odometry[2] + rng.normal(0.0, noise[2], n)
	c, s = particles.direction[:, 0], particles.direction[:, 1]
	xy = particles.xy + np.column_stack([c * fwd - s * left, s * fwd + c * left])
	return ParticleSet(xy, _rotate(particles.direction, turn), particles.weight.copy())

def observation_likelihood(particles, observations, field_map):
	"""Product over observations of the range/bearing likelihood against
	the nearest landmark of the same class (unnormalized, at most 1)."""
	x, y = particles.xy[:, 0], particles.xy[:, 1]
	c, s = particles.direction[:, 0], particles.direction[:, 1]
	like = np.ones(len(particles))
	for obs in observations:
		pts = field_map.landmarks[obs.landmark_class]
		bx, by = obs.range * cos(obs.bearing), obs.range * sin(obs.bearing)
		wx = x + c * bx - s * by
		wy = y + s * bx + c * by
		d2 = (wx[:, None] - pts[None, :, 0]) ** 2 + (wy[:, None] - pts[None, :, 1]) ** 2
		j = np.argmin(d2, axis=1)
		lx, ly = pts[j, 0] - x, pts[j, 1] - y
		expected_range = np.hypot(lx, ly)
		expected_bearing = np.arctan2(c * ly - s * lx, c * lx + s * ly)
		range_std, bearing_std = obs.noise_std
		z = ((obs.range - expected_range) / range_std) ** 2 + (angle_diff(obs.bearing, expected_bearing) / bearing_std) ** 2
		like *= np.exp(-0.5 * z)
	return like

def mcl_step(particles, odometry, observations, field_map, cfg, rng):
	"""One motion + measurement + resampling cycle. Without observations
	only the motion update is applied."""
	moved = _move(particles, odometry, cfg.motion_noise, rng)
	n = len(moved)
	if not observations or not n:
		return moved
	w = moved.weight * observation_likelihood(moved, observations, field_map)
	if not w.sum() > 0:
		w = np.full(n, 1.0 / n)
	n_inject = int(round(cfg.inject_fraction * n))
	keep = systematic_indexes(w, n - n_inject, rng)
	xy = moved.xy[keep]
	direction = moved.direction[keep]
	if n_inject:
		hl, hw = field_map.length / 2, field_map.width / 2
		new_xy = np.column_stack([rng.uniform(-hl, hl, n_inject), rng.uniform(-hw, hw, n_inject)])
		h = rng.uniform(-pi, pi, n_inject)
		xy = np.concatenate([xy, new_xy])
		direction = np.concatenate([direction, np.column_stack([np.cos(h), np.sin(h)])])
	return ParticleSet(xy, direction)


def flip_pose(particles):
	return ParticleSet(-particles.xy, -particles.direction, particles.weight.copy())


def purge_reflection(particles, best, radius, rng, jitter=(0.05, 0.05, 0.05)):
	"""Replace every particle within radius of reflect(best) by a jittered
	copy of a particle near best. Particles within radius of best itself
	are never removed."""
	assert len(particles), "no particles"
	d_best = np.hypot(particles.xy[:, 0] - best.x, particles.xy[:, 1] - best.y)
	d_refl = np.hypot(particles.xy[:, 0] + best.x, particles.xy[:, 1] + best.y)
	purged = (d_refl <= radius) & (d_best > radius)
	if not purged.any():
		return particles.copy()
	if purged.all():
		raise PurgeWouldEmpty("All %d particles lie within %.2f m of the reflected pose" % (len(particles), radius,))
	survivors = np.flatnonzero(~purged)
	donors = survivors[d_best[survivors] <= radius]
	if not len(donors):
		donors = survivors
	p = particles.weight[donors]
	p = p / p.sum() if p.sum() > 0 else None
	k = int(purged.sum())
	pick = rng.choice(donors, size=k, p=p)
	xy = particles.xy.copy()
	direction = particles.direction.copy()
	xy[purged] = particles.xy[pick] + rng.normal(0.0, 1.0, (k, 2)) * np.array(jitter[:2])
	direction[purged] = _rotate(particles.direction[pick], rng.normal(0.0, jitter[2], k))
	return ParticleSet(xy, direction)


def reset_orientation(particles, rng):
	h = rng.uniform(-pi, pi, len(particles))
	return ParticleSet(particles.xy.copy(), np.column_stack([np.cos(h), np.sin(h)]).reshape(-1, 2))


def _mean_pose(xy, direction, w):
	total = w.sum()
	if not total > 0:
		w = np.ones(len(w))
		total = float(len(w))
	x, y = (xy * w[:, None]).sum(axis=0) / total
	dx, dy = (direction * w[:, None]).sum(axis=0)
	return Pose2D(float(x), float(y), wrap_angle(atan2(dy, dx)))

def _members(xy, direction, pose):
	near = np.hypot(xy[:, 0] - pose.x, xy[:, 1] - pose.y) <= CLUSTER_RADIUS
	return near & (direction @ np.array([cos(pose.heading), sin(pose.heading)]) > cos(CLUSTER_HEADING))

def best_pose(particles, multimodal_share=0.2):
	"""(mean pose of the densest cluster, whether the cluster around its
	reflection holds more than multimodal_share of the weight)."""
	assert len(particles), "no particles"
	w = particles.normalized_weight()
	xy, direction = particles.xy, particles.direction
	dist = np.hypot(xy[:, None, 0] - xy[None, :, 0], xy[:, None, 1] - xy[None, :, 1])
	near = (dist <= CLUSTER_RADIUS) & (direction @ direction.T > cos(CLUSTER_HEADING))
	densest = int(np.argmax(near @ w))
	members = near[densest]
	pose = _mean_pose(xy[members], direction[members], w[members])
	share = w[_members(xy, direction, reflect(pose))].sum()
	return pose, bool(share > multimodal_share)

