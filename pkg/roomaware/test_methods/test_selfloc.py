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

from math import pi, hypot, atan2, sqrt

import numpy as np
from scipy.stats import chisquare

from roomaware.error import PurgeWouldEmpty
from roomaware.geometry import CameraModel, angle_diff, wrap_angle
from roomaware.selfloc import (
	GOAL_POST, LINE_JUNCTION, CIRCLE_CENTER,
	Pose2D, LandmarkObservation, SelfLocConfig, FieldMap, ParticleSet,
	reflect, init_particles, mcl_step, flip_pose, purge_reflection, reset_orientation, best_pose,
)
from roomaware.sim import PENALTY_WALK, CORRECT, Scenario, SimConfig, World, default_spec

field = FieldMap()
cfg = SelfLocConfig()
P = Pose2D(1.5, 0.5, 0.3)


def _cloud(pose, n, rng, spread=0.1):
	return np.column_stack([
		pose.x + rng.normal(0, spread, n),
		pose.y + rng.normal(0, spread, n),
		pose.heading + rng.normal(0, spread, n),
	])

def _exact_observations(pose, targets):
	res = []
	for cls, (lx, ly) in targets:
		dx, dy = lx - pose.x, ly - pose.y
		res.append(LandmarkObservation(cls, wrap_angle(atan2(dy, dx) - pose.heading), hypot(dx, dy), (0.1, 0.05)))
	return res

def _near(particles, pose, radius=1.0):
	return np.hypot(particles.xy[:, 0] - pose.x, particles.xy[:, 1] - pose.y) <= radius


def test_field_map():
	assert field.is_symmetric()
	assert np.allclose(field.penalty_mark(0), (-1.2, 0.0))
	assert np.allclose(field.penalty_mark(1), (1.2, 0.0))
	assert len(field.landmarks[GOAL_POST]) == 4
	assert len(field.landmarks[CIRCLE_CENTER]) == 1
	assert FieldMap(8, 5, 2.0, 2.2).is_symmetric()

def test_flip_pose():
	s = flip_pose(ParticleSet.from_poses([(1, 2, 0)]))
	assert s.xy.tolist() == [[-1, -2]]
	assert s.heading[0] == -pi
	assert reflect(Pose2D(1, 2, 0)) == (-1, -2, -pi)
	s = flip_pose(ParticleSet.from_poses([(0, 0, pi / 2)]))
	assert abs(angle_diff(s.heading[0], -pi / 2)) < 1e-12
	rng = np.random.default_rng(30)
	s = ParticleSet.from_poses(rng.uniform(-3, 3, (200, 3)), rng.uniform(0, 1, 200))
	assert flip_pose(flip_pose(s)) == s
	f = flip_pose(s)
	assert np.array_equal(f.weight, s.weight)
	d = lambda p: np.hypot(p.xy[:, None, 0] - p.xy[None, :, 0], p.xy[:, None, 1] - p.xy[None, :, 1])
	assert np.array_equal(d(f), d(s))

def test_mcl_still():
	rng = np.random.default_rng(31)
	s = ParticleSet.from_poses(_cloud(P, 100, rng))
	res = mcl_step(s, (0.0, 0.0, 0.0), [], field, cfg._replace(motion_noise=(0, 0, 0)), rng)
	assert np.array_equal(res.xy, s.xy)
	assert np.allclose(res.direction, s.direction, rtol=0, atol=1e-12)
	assert np.array_equal(res.weight, s.weight)

def test_mcl_commutes_with_flip():
	rng = np.random.default_rng(32)
	s = ParticleSet.from_poses(np.concatenate([_cloud(P, 60, rng, 0.5), _cloud(Pose2D(-2, 1, 2), 40, rng, 0.5)]))
	obs = _exact_observations(P, [(GOAL_POST, (3.0, 0.75)), (LINE_JUNCTION, (3.0, 2.0)), (CIRCLE_CENTER, (0.0, 0.0))])
	still = cfg._replace(inject_fraction=0.0)
	for odometry in ((0.0, 0.0, 0.0), (0.1, 0.02, 0.05), (-0.05, 0.0, -0.2)):
		a = flip_pose(mcl_step(s, odometry, obs, field, still, np.random.default_rng(7)))
		b = mcl_step(flip_pose(s), odometry, obs, field, still, np.random.default_rng(7))
		assert a == b, odometry
		a = flip_pose(mcl_step(s, odometry, [], field, still, np.random.default_rng(8)))
		b = mcl_step(flip_pose(s), odometry, [], field, still, np.random.default_rng(8))
		assert a == b, odometry

def test_mcl_symmetric_posterior():
	rng = np.random.default_rng(33)
	half = ParticleSet.from_poses(_cloud(P, 50, rng))
	s = ParticleSet(np.concatenate([half.xy, -half.xy]), np.concatenate([half.direction, -half.direction]))
	obs = _exact_observations(P, [(GOAL_POST, (3.0, 0.75)), (GOAL_POST, (3.0, -0.75)), (LINE_JUNCTION, (3.0, 2.0))])
	res = mcl_step(s, (0.0, 0.0, 0.0), obs, field, cfg._replace(inject_fraction=0.0, motion_noise=(0, 0, 0)), rng)
	at_p = _near(res, P).sum()
	at_r = _near(res, reflect(P)).sum()
	assert at_p + at_r == 100
	assert 45 <= at_p <= 55, (at_p, at_r)
	# all weight gone falls back to uniform
	far = [LandmarkObservation(GOAL_POST, 0.0, 50.0, (0.01, 0.01))]
	res = mcl_step(s, (0.0, 0.0, 0.0), far, field, cfg, rng)
	assert len(res) == 100

def test_mcl_tracks_walk():
	sim_cfg = SimConfig()
	spec = default_spec(field)
	world = World(spec, sim_cfg, CameraModel(), Scenario(PENALTY_WALK, 500, CORRECT, 10), 0, 34)
	rng = np.random.default_rng(34)
	particles = init_particles(world.start, cfg, rng)
	errors = []
	for frame in range(500):
		bundle = world.step(frame, world.pose)
		particles = mcl_step(particles, bundle.odometry, bundle.observations, field, cfg, rng)
		pose, _ = best_pose(particles)
		errors.append((pose.x - bundle.true_pose.x) ** 2 + (pose.y - bundle.true_pose.y) ** 2)
	rmse = sqrt(sum(errors) / len(errors))
	assert rmse < 0.3, rmse

def test_purge_reflection():
	rng = np.random.default_rng(35)
	s = ParticleSet.from_poses(np.concatenate([_cloud(P, 50, rng), _cloud(reflect(P), 50, rng)]))
	assert best_pose(s)[1]
	res = purge_reflection(s, P, 1.0, rng)
	assert len(res) == 100
	assert _near(res, P, 1.5).all()
	assert not _near(res, reflect(P)).any()
	kept = _near(s, P)
	assert np.array_equal(res.xy[kept], s.xy[kept])
	assert np.array_equal(res.direction[kept], s.direction[kept])
	assert not best_pose(res)[1]
	uni = ParticleSet.from_poses(_cloud(P, 100, rng))
	assert purge_reflection(uni, P, 1.0, rng) == uni
	try:
		purge_reflection(ParticleSet.from_poses(_cloud(reflect(P), 100, rng)), P, 1.0, rng)
		raise Exception("Purged every particle")
	except PurgeWouldEmpty:
		pass

def test_purge_keeps_best_neighbourhood():
	# best close to the centre: the two neighbourhoods overlap, overlap survives
	rng = np.random.default_rng(36)
	best = Pose2D(0.3, 0.0, 0.0)
	s = ParticleSet.from_poses(rng.uniform(-1, 1, (300, 3)))
	res = purge_reflection(s, best, 0.5, rng)
	near_best = _near(s, best, 0.5)
	assert np.array_equal(res.xy[near_best], s.xy[near_best])
	assert len(res) == len(s)

def test_reset_orientation():
	rng = np.random.default_rng(37)
	s = ParticleSet.from_poses(_cloud(P, 10000, rng), rng.uniform(0, 1, 10000))
	passed = 0
	for seed in range(5):
		res = reset_orientation(s, np.random.default_rng(seed))
		assert np.array_equal(res.xy, s.xy)
		assert np.allclose(res.weight, 1e-4)
		counts = np.bincount(np.floor((res.heading + pi) / (2 * pi) * 12).astype(int), minlength=12)
		assert len(counts) == 12
		passed += chisquare(counts).pvalue > 0.01
	assert passed >= 4, passed
	empty = reset_orientation(ParticleSet(np.empty((0, 2)), np.empty((0, 2))), rng)
	assert len(empty) == 0

def test_best_pose():
	rng = np.random.default_rng(38)
	s = ParticleSet.from_poses(_cloud(P, 100, rng, 0.05))
	pose, multimodal = best_pose(s)
	assert not multimodal
	assert hypot(pose.x - P.x, pose.y - P.y) < 0.05
	assert abs(angle_diff(pose.heading, P.heading)) < 0.05
	for n_p, want in ((50, True), (70, True), (90, False)):
		s = ParticleSet.from_poses(np.concatenate([_cloud(P, n_p, rng, 0.05), _cloud(reflect(P), 100 - n_p, rng, 0.05)]))
		pose, multimodal = best_pose(s)
		assert multimodal == want, n_p
		if n_p > 50:
			assert hypot(pose.x - P.x, pose.y - P.y) < 0.05
