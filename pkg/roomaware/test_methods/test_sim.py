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

from math import pi, radians
from os.path import join, getsize
from shutil import rmtree
from tempfile import mkdtemp

import numpy as np

from roomaware.geometry import CameraModel, CylinderParams, TileGrid, TileId, angle_diff, visible_tiles
from roomaware.selfloc import FieldMap, Pose2D, reflect
from roomaware.sim import (
	HEAD_ONLY, PENALTY_WALK, CORRECT, BASE_COLOUR,
	TexturePatch, WorldSpec, Scenario, SimConfig, World,
	make_world_spec, synthesize_background, render_tile_samples, write_ppm,
	compose, head_yaw, start_pose, observe_landmarks, default_spec, frame_rng, view_of,
)

field = FieldMap()
cylinder = CylinderParams()
grid = TileGrid(cylinder)
camera = CameraModel()
RED = (76, 255, 85)


def _red_world(noise=0.0):
	patch = TexturePatch(0.0, radians(10), cylinder.z_min, cylinder.z_max, RED)
	return WorldSpec(field, cylinder, (patch,), BASE_COLOUR, noise, False, ())

def _bundles_equal(a, b):
	if a[:7] != b[:7] or len(a.tiles) != len(b.tiles):
		return False
	return all(ta == tb and np.array_equal(qa, qb) and np.array_equal(sa, sb) for (ta, qa, sa), (tb, qb, sb) in zip(a.tiles, b.tiles))


def test_texture():
	spec = _red_world()
	tex = synthesize_background(spec, 1)
	assert tex.ycrcb.shape == (120, 720, 3)
	rng = np.random.default_rng(40)
	samples = render_tile_samples(tex, TileId(0, 0), grid, 0.0, 64, rng)
	assert samples.shape == (64, 3)
	assert (samples == RED).all()
	samples = render_tile_samples(tex, TileId(1, 18), grid, 0.0, 64, rng)
	assert (samples == BASE_COLOUR).all()
	assert synthesize_background(make_world_spec(field, cylinder, seed=3), 3) == synthesize_background(make_world_spec(field, cylinder, seed=3), 3)
	assert synthesize_background(make_world_spec(field, cylinder, seed=3), 3) != synthesize_background(make_world_spec(field, cylinder, seed=4), 4)

def test_periodic_texture():
	spec = make_world_spec(field, cylinder, periodic=True, seed=5)
	assert all(p.az0 < pi for p in spec.patches)
	tex = synthesize_background(spec, 5)
	assert np.array_equal(tex.ycrcb[:, :360], tex.ycrcb[:, 360:])
	az = np.random.default_rng(41).uniform(-pi, pi, 1000)
	z = np.full(1000, 1.0)
	assert np.array_equal(tex.lookup(az, z), tex.lookup(az + pi, z))
	# the asymmetric default really is asymmetric
	tex = synthesize_background(default_spec(field, cylinder, seed=5), 5)
	assert not np.array_equal(tex.ycrcb[:, :360], tex.ycrcb[:, 360:])

def test_pixel_noise():
	tex = synthesize_background(_red_world(), 1)
	samples = render_tile_samples(tex, TileId(1, 18), grid, 4.0, 10000, np.random.default_rng(42))
	for channel in (1, 2):
		std = samples[:, channel].std()
		assert 3.2 < std < 4.8, (channel, std)
	assert (samples[:, 0] == BASE_COLOUR[0]).all()

def test_write_ppm():
	tmp = mkdtemp()
	try:
		fn = join(tmp, 'panorama.ppm')
		tex = synthesize_background(_red_world(), 1)
		write_ppm(tex, fn)
		header = b'P6\n720 120\n255\n'
		with open(fn, 'rb') as fh:
			assert fh.read(len(header)) == header
		assert getsize(fn) == len(header) + 720 * 120 * 3
	finally:
		rmtree(tmp)

def test_head_yaw():
	sweep, rate = radians(60), radians(20)
	assert head_yaw(0, sweep, rate) == 0
	assert abs(head_yaw(3, sweep, rate) - sweep) < 1e-12
	assert abs(head_yaw(6, sweep, rate)) < 1e-12
	assert abs(head_yaw(9, sweep, rate) + sweep) < 1e-12
	assert abs(head_yaw(12, sweep, rate)) < 1e-12
	assert head_yaw(5, 0, rate) == 0
	for t in np.linspace(0, 100, 333):
		assert abs(head_yaw(t, sweep, rate)) <= sweep + 1e-12

def test_start_pose():
	assert start_pose(HEAD_ONLY, 0, field) == Pose2D(-1.5, -2.0, pi / 2)
	assert start_pose(HEAD_ONLY, 1, field) == reflect(Pose2D(-1.5, -2.0, pi / 2))
	p = start_pose(PENALTY_WALK, 0, field)
	assert abs(p.x + 1.2) < 1e-12 and p.y == 0 and p.heading == 0

def test_frame_zero_and_determinism():
	spec = default_spec(field, cylinder, seed=6)
	for kind in (HEAD_ONLY, PENALTY_WALK):
		for side in (0, 1):
			scenario = Scenario(kind, 100, CORRECT, 10)
			a = World(spec, SimConfig(), camera, scenario, side, 6)
			b = World(spec, SimConfig(), camera, scenario, side, 6)
			first = a.step(0, a.start)
			assert first.true_pose == start_pose(kind, side, field)
			assert first.odometry == (0.0, 0.0, 0.0)
			assert _bundles_equal(first, b.step(0, b.start))
			for frame in range(1, 40):
				assert _bundles_equal(a.step(frame, a.pose), b.step(frame, b.pose)), (kind, side, frame)

def test_noise_free_odometry():
	cfg = SimConfig(odometry_noise=(0.0, 0.0, 0.0))
	world = World(default_spec(field, cylinder, seed=7), cfg, camera, Scenario(PENALTY_WALK, 300, CORRECT, 10), 0, 7)
	dead = world.step(0, world.start).true_pose
	for frame in range(1, 300):
		bundle = world.step(frame, dead)
		dead = compose(dead, bundle.odometry)
		assert dead == bundle.true_pose, frame
	assert abs(dead.x - world.start.x) + abs(dead.y - world.start.y) > 0.1

def test_odometry_noise_unbiased():
	sums = []
	spec = default_spec(field, cylinder, seed=8)
	cfg = SimConfig(samples_per_tile=1)
	for seed in range(100):
		world = World(spec, cfg, camera, Scenario(HEAD_ONLY, 30, CORRECT, 10), 0, seed, texture=synthesize_background(spec, 8))
		total = np.zeros(3)
		for frame in range(30):
			total += world.step(frame).odometry
		sums.append(total)
	sums = np.array(sums)
	se = sums.std(axis=0) / np.sqrt(len(sums))
	assert (np.abs(sums.mean(axis=0)) < 4 * se).all(), (sums.mean(axis=0), se)

def test_reflected_observations():
	cfg = SimConfig()
	rng = np.random.default_rng(43)
	for _ in range(50):
		pose = Pose2D(rng.uniform(-3, 3), rng.uniform(-2, 2), rng.uniform(-pi, pi))
		yaw = rng.uniform(-1, 1)
		a = observe_landmarks(pose, yaw, field, camera, cfg, frame_rng(9, 1, 1))
		b = observe_landmarks(reflect(pose), yaw, field, camera, cfg, frame_rng(9, 1, 1))
		assert [o.landmark_class for o in a] == [o.landmark_class for o in b]
		assert np.allclose([o.range for o in a], [o.range for o in b], rtol=0, atol=1e-9)
		assert all(abs(angle_diff(x.bearing, y.bearing)) < 1e-9 for x, y in zip(a, b))
		for o in a:
			assert 0 < o.range <= cfg.max_range + 1
			assert abs(angle_diff(o.bearing, yaw)) <= camera.horizontal_fov / 2 + 0.2

def test_fall():
	cfg = SimConfig(fall_times=(1.0,))
	world = World(default_spec(field, cylinder, seed=10), cfg, camera, Scenario(HEAD_ONLY, 40, CORRECT, 10), 0, 10)
	bundles = [world.step(frame) for frame in range(40)]
	# down for two seconds, the flag comes when the robot is up again
	assert [b.frame for b in bundles if b.fall] == [30]
	for b in bundles[10:30]:
		assert not b.tiles and not b.observations
		assert b.head_yaw == bundles[9].head_yaw
	assert bundles[9].tiles
	assert bundles[30].tiles and bundles[35].tiles
	turned = angle_diff(bundles[30].true_pose.heading, bundles[29].true_pose.heading)
	assert 0 < abs(turned) <= radians(30)
	assert bundles[30].true_pose[:2] == bundles[29].true_pose[:2]
	assert not any(b.penalty for b in bundles)

def test_penalty():
	cfg = SimConfig(penalty_times=(1.0,), penalty_s=1.5)
	scenario = Scenario(PENALTY_WALK, 40, CORRECT, 10)
	world = World(default_spec(field, cylinder, seed=12), cfg, camera, scenario, 0, 12)
	free = World(default_spec(field, cylinder, seed=12), SimConfig(), camera, scenario, 0, 12)
	bundles = [world.step(frame, world.start) for frame in range(40)]
	assert [b.frame for b in bundles if b.penalty] == list(range(10, 25))
	assert [free.step(frame, free.start).true_pose for frame in range(10)][9] == bundles[9].true_pose
	assert bundles[9].true_pose != bundles[8].true_pose
	for b in bundles[10:25]:
		assert b.true_pose == bundles[9].true_pose
		assert b.tiles and not b.fall
	assert bundles[25].true_pose != bundles[24].true_pose

def test_warmup_views():
	world = World(default_spec(field, cylinder, seed=11), SimConfig(), camera, Scenario(HEAD_ONLY, 10, CORRECT, 10), 0, 11)
	views = list(world.warmup_views(30))
	assert len(views) == 300
	seen = set()
	for _, v in views:
		seen.update(tid for tid, _ in visible_tiles(v, camera, world.grid))
	assert seen == set(world.grid.tiles)

def test_periodic_world_reflection():
	# in a half turn periodic room the reflected pose sees the same
	# pixels on the opposite tiles
	spec = make_world_spec(field, cylinder, periodic=True, seed=14)
	world = World(spec, SimConfig(), camera, Scenario(HEAD_ONLY, 10, CORRECT, 10), 0, 14)
	rng = np.random.default_rng(44)
	count = 0
	for _ in range(50):
		pose = Pose2D(rng.uniform(-2.5, 2.5), rng.uniform(-1.5, 1.5), rng.uniform(-pi, pi))
		yaw = rng.uniform(-1, 1)
		a = visible_tiles(view_of(pose, yaw), camera, world.grid)
		b = dict(visible_tiles(view_of(reflect(pose), yaw), camera, world.grid))
		assert sorted(TileId(t.row, (t.col + 18) % 36) for t, _ in a) == sorted(b)
		for t, quad in a:
			opposite = TileId(t.row, (t.col + 18) % 36)
			assert np.allclose(quad, b[opposite], rtol=0, atol=1e-6)
			mine = render_tile_samples(world.texture, t, world.grid, 4.0, 64, frame_rng(14, 3, 2))
			theirs = render_tile_samples(world.texture, opposite, world.grid, 4.0, 64, frame_rng(14, 3, 2))
			assert np.array_equal(mine, theirs)
		count += len(a)
	assert count > 100
