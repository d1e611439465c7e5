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
Deterministic synthetic world.

A panorama texture (stored directly as YCrCb) is wrapped around the
cylinder, tiles are rendered by sampling pixels straight from the
texture, and the robot moves on a point symmetric field where it
observes landmarks with range and bearing noise.
A penalized robot stands still and keeps looking around, the bundle
carries the penalty flag for the controller.

Every random draw comes from a generator seeded by (world seed, frame,
stream), so a frame is a pure function of the world, the scenario and
the belief the robot acted on.
'''

from collections import namedtuple
from math import pi, cos, sin, atan2, hypot, radians

import numpy as np

from roomaware.colour import ycrcb_to_rgb_array
from roomaware.extras import FileWriteMove
from roomaware.geometry import CylinderParams, TileGrid, ViewPose, visible_tiles, wrap_angle, angle_diff
from roomaware.selfloc import Pose2D, LandmarkObservation, FieldMap, LANDMARK_CLASSES, reflect

HEAD_ONLY = 'HeadOnly'
PENALTY_WALK = 'PenaltyWalk'
SCENARIO_KINDS = (HEAD_ONLY, PENALTY_WALK,)

CORRECT = 'CorrectPose'
REFLECTED = 'ReflectedPose'

# rng streams within one frame
MOTION, OBSERVATION, PIXELS, FALL, TEXTURE, WARMUP = range(6)

TEXTURE_WIDTH = 720
TEXTURE_HEIGHT = 120
BASE_COLOUR = (110, 128, 128)
FALL_SECONDS = 2.0
FALL_HEADING = radians(30)
GOAL_REACHED = 0.25
MAX_TURN_RATE = 0.5

TexturePatch = namedtuple('TexturePatch', 'az0 az1 z0 z1 colour')

WorldSpec = namedtuple('WorldSpec', 'field cylinder patches base_colour noise periodic occluders')

Scenario = namedtuple('Scenario', 'kind duration_frames init frame_rate')

FrameBundle = namedtuple('FrameBundle', 'frame time true_pose odometry head_yaw fall observations tiles penalty')
FrameBundle.__new__.__defaults__ = (False,)

SimConfig = namedtuple('SimConfig', 'frame_rate duration_s samples_per_tile pixel_noise texture patches texture_noise odometry_noise obs_range_std obs_bearing_std max_range fall_times walk_speed head_sweep_deg head_rate_deg penalty_times penalty_s')
SimConfig.__new__.__defaults__ = (10, 200.0, 64, 4.0, 'asymmetric', 12, 2.0, (0.005, 0.005, 0.005), 0.1, 0.03, 6.0, (), 0.15, 60.0, 20.0, (), 5.0)


def frame_rng(seed, frame, stream):
	return np.random.default_rng([seed, frame, stream])


def patch_colours(count):
	"""count colours of equal luma with chroma evenly spread around the
	chroma circle, so no two patches share their histogram."""
	res = []
	for i in range(count):
		a = 2 * pi * i / count
		res.append((120, int(round(128 + 90 * cos(a))), int(round(128 + 90 * sin(a)))))
	return res

def make_world_spec(field, cylinder, patches=12, noise=2.0, periodic=False, seed=0, occluders=()):
	"""Draws patch placements for a world. A periodic world only gets
	patches in [0, pi), the texture repeats them in the other half."""
	rng = frame_rng(seed, 0, TEXTURE)
	colours = patch_colours(patches)
	rng.shuffle(colours)
	span = pi if periodic else 2 * pi
	mid = (cylinder.z_min + cylinder.z_max) / 2
	res = []
	for colour in colours:
		width = radians(rng.uniform(15, 40))
		az0 = rng.uniform(0, span)
		res.append(TexturePatch(
			az0, az0 + width,
			rng.uniform(cylinder.z_min, mid), rng.uniform(mid, cylinder.z_max),
			tuple(int(v) for v in colour),
		))
	return WorldSpec(field, cylinder, tuple(res), BASE_COLOUR, float(noise), bool(periodic), tuple(occluders))


class Panorama(object):
	"""(height, width, 3) YCrCb texture. Column i covers azimuths
	[i, i + 1) * 2pi / width, row j heights [j, j + 1) * dz / height
	counted from z_min."""

	def __init__(self, ycrcb, cylinder):
		self.ycrcb = ycrcb
		self.cylinder = cylinder
		self.height, self.width = ycrcb.shape[:2]

	def lookup(self, azimuth, z):
		p = self.cylinder
		col = np.floor(np.mod(azimuth, 2 * pi) / (2 * pi) * self.width).astype(np.int64) % self.width
		row = np.floor((np.asarray(z) - p.z_min) / (p.z_max - p.z_min) * self.height).astype(np.int64)
		return self.ycrcb[np.clip(row, 0, self.height - 1), col]

	def __eq__(self, other):
		return isinstance(other, Panorama) and self.cylinder == other.cylinder and np.array_equal(self.ycrcb, other.ycrcb)

	def __ne__(self, other):
		return not self == other


def synthesize_background(spec, seed, width=TEXTURE_WIDTH, height=TEXTURE_HEIGHT):
	rng = frame_rng(seed, 1, TEXTURE)
	p = spec.cylinder
	paint_width = width // 2 if spec.periodic else width
	tex = np.empty((height, paint_width, 3), dtype=np.float64)
	tex[...] = spec.base_colour
	col_az = (np.arange(paint_width) + 0.5) * 2 * pi / width
	row_z = p.z_min + (np.arange(height) + 0.5) * (p.z_max - p.z_min) / height
	span = pi if spec.periodic else 2 * pi
	for patch in spec.patches:
		rel = np.mod(col_az - patch.az0, span)
		cols = rel < (patch.az1 - patch.az0)
		rows = (row_z >= patch.z0) & (row_z < patch.z1)
		tex[np.ix_(rows, cols)] = patch.colour
	if spec.noise > 0:
		tex[..., 1:] += rng.normal(0.0, spec.noise, (height, paint_width, 2))
	tex = np.clip(np.floor(tex + 0.5), 0, 255).astype(np.int16)
	if spec.periodic:
		tex = np.concatenate([tex, tex], axis=1)
	return Panorama(tex, p)


def render_tile_samples(texture, tile, grid, noise_std, k, rng):
	"""k pixels drawn uniformly over the tile's wall area, as a (k, 3)
	int array of y, cr, cb. Gaussian noise is added to the chroma."""
	a0, a1 = grid.azimuth_range(tile.col)
	z0, z1 = grid.band(tile.row)
	az = rng.uniform(a0, a1, k)
	z = rng.uniform(z0, z1, k)
	pixels = texture.lookup(az, z).astype(np.float64)
	if noise_std > 0:
		pixels[:, 1:] += rng.normal(0.0, noise_std, (k, 2))
	return np.clip(np.floor(pixels + 0.5), 0, 255).astype(np.int64)


def write_ppm(texture, filename):
	"""Binary portable pixmap of the panorama, top row is z_max."""
	rgb = ycrcb_to_rgb_array(texture.ycrcb[::-1])
	with FileWriteMove(filename) as fh:
		fh.write(b'P6\n%d %d\n255\n' % (texture.width, texture.height,))
		fh.write(rgb.tobytes())


def compose(pose, delta):
	"""pose moved by delta = (forward, left, turn) given in its own frame."""
	fwd, left, turn = delta
	c, s = cos(pose.heading), sin(pose.heading)
	return Pose2D(pose.x + c * fwd - s * left, pose.y + s * fwd + c * left, wrap_angle(pose.heading + turn))


def head_yaw(t, sweep, rate):
	"""Triangle wave starting at 0 going up, amplitude sweep, speed rate."""
	if sweep <= 0 or rate <= 0:
		return 0.0
	phase = (t * rate) % (4 * sweep)
	if phase < sweep:
		return phase
	if phase < 3 * sweep:
		return 2 * sweep - phase
	return phase - 4 * sweep


def start_pose(kind, side, field):
	"""side 0 starts in the own half, side 1 at the point reflection."""
	if kind == HEAD_ONLY:
		pose = Pose2D(-field.length / 4, -field.width / 2, pi / 2)
	else:
		x, y = field.penalty_mark(0)
		pose = Pose2D(x, y, 0.0)
	return reflect(pose) if side else pose


def observe_landmarks(pose, yaw, field, camera, cfg, rng):
	"""Landmarks inside the camera's horizontal field of view and range,
	in the robot frame. Sorted before noise is drawn so the draws do not
	depend on landmark numbering."""
	seen = []
	for cls in LANDMARK_CLASSES:
		for lx, ly in field.landmarks[cls]:
			dx, dy = lx - pose.x, ly - pose.y
			r = hypot(dx, dy)
			if r < 0.05 or r > cfg.max_range:
				continue
			bearing = wrap_angle(atan2(dy, dx) - pose.heading)
			if abs(angle_diff(bearing, yaw)) > camera.horizontal_fov / 2:
				continue
			seen.append((cls, r, bearing))
	seen.sort()
	noise = rng.normal(0.0, 1.0, (len(seen), 2))
	return [
		LandmarkObservation(cls, wrap_angle(b + cfg.obs_bearing_std * nb), max(r + cfg.obs_range_std * nr, 0.01), (cfg.obs_range_std, cfg.obs_bearing_std))
		for (cls, r, b), (nr, nb) in zip(seen, noise)
	]


def view_of(pose, yaw, pitch=0.0):
	return ViewPose(pose.x, pose.y, pose.heading, yaw, pitch)


class World(object):
	"""One robot in one world for one trial. step() must be called with
	consecutive frames starting at 0."""

	def __init__(self, spec, cfg, camera, scenario, side, seed, texture=None):
		self.spec = spec
		self.cfg = cfg
		self.camera = camera
		self.scenario = scenario
		self.seed = seed
		self.grid = TileGrid(spec.cylinder)
		self.texture = texture if texture is not None else synthesize_background(spec, seed)
		self.start = start_pose(scenario.kind, side, spec.field)
		self.pose = self.start
		self.dt = 1.0 / scenario.frame_rate
		self.sweep = radians(cfg.head_sweep_deg)
		self.rate = radians(cfg.head_rate_deg)
		fall_frames = int(round(FALL_SECONDS * scenario.frame_rate))
		self.falls = [(int(round(t * scenario.frame_rate)), int(round(t * scenario.frame_rate)) + fall_frames) for t in cfg.fall_times]
		penalty_frames = int(round(cfg.penalty_s * scenario.frame_rate))
		self.penalties = [(int(round(t * scenario.frame_rate)), int(round(t * scenario.frame_rate)) + penalty_frames) for t in cfg.penalty_times]
		# penalty marks in the order they are visited, as the robot believes them
		own = spec.field.penalty_mark(side)
		other = spec.field.penalty_mark(1 - side)
		self.marks = (other, own)
		self.goal = 0
		self.frozen_yaw = 0.0

	def _falling(self, frame):
		return any(start <= frame < end for start, end in self.falls)

	def _penalized(self, frame):
		return any(start <= frame < end for start, end in self.penalties)

	def _walk_command(self, believed):
		if believed is None:
			return (0.0, 0.0, 0.0)
		gx, gy = self.marks[self.goal]
		if hypot(gx - believed.x, gy - believed.y) < GOAL_REACHED:
			self.goal = 1 - self.goal
			gx, gy = self.marks[self.goal]
		err = angle_diff(atan2(gy - believed.y, gx - believed.x), believed.heading)
		max_turn = MAX_TURN_RATE * self.dt
		turn = min(max(err, -max_turn), max_turn)
		fwd = self.cfg.walk_speed * self.dt if abs(err) < pi / 4 else 0.0
		return (fwd, 0.0, turn)

	def _keep_on_field(self, pose):
		f = self.spec.field
		x = min(max(pose.x, -f.length / 2 - 0.5), f.length / 2 + 0.5)
		y = min(max(pose.y, -f.width / 2 - 0.5), f.width / 2 + 0.5)
		return Pose2D(x, y, pose.heading)

	def render_view(self, view, rng):
		"""[(TileId, quad, samples), ...] for every tile visible from view."""
		return [
			(tid, quad, render_tile_samples(self.texture, tid, self.grid, self.cfg.pixel_noise, self.cfg.samples_per_tile, rng))
			for tid, quad in visible_tiles(view, self.camera, self.grid, self.spec.occluders)
		]

	def step(self, frame, believed=None):
		"""Advance to frame. believed is the pose the robot currently
		believes in, it steers the penalty walk."""
		t = frame * self.dt
		falling = self._falling(frame)
		fall = any(end == frame for _, end in self.falls)
		penalized = self._penalized(frame)
		odometry = (0.0, 0.0, 0.0)
		if frame > 0:
			delta = (0.0, 0.0, 0.0)
			if self.scenario.kind == PENALTY_WALK and not (falling or penalized):
				delta = self._walk_command(believed)
			self.pose = self._keep_on_field(compose(self.pose, delta))
			noise = frame_rng(self.seed, frame, MOTION).normal(0.0, 1.0, 3) * np.array(self.cfg.odometry_noise)
			odometry = tuple(float(v) for v in np.array(delta) + noise)
		if fall:
			turn = frame_rng(self.seed, frame, FALL).uniform(-FALL_HEADING, FALL_HEADING)
			self.pose = Pose2D(self.pose.x, self.pose.y, wrap_angle(self.pose.heading + turn))
		if falling:
			return FrameBundle(frame, t, self.pose, odometry, self.frozen_yaw, False, [], [], penalized)
		yaw = head_yaw(t, self.sweep, self.rate)
		self.frozen_yaw = yaw
		observations = observe_landmarks(self.pose, yaw, self.spec.field, self.camera, self.cfg, frame_rng(self.seed, frame, OBSERVATION))
		tiles = self.render_view(view_of(self.pose, yaw), frame_rng(self.seed, frame, PIXELS))
		return FrameBundle(frame, t, self.pose, odometry, yaw, fall, observations, tiles, penalized)

	def warmup_views(self, seconds):
		"""Views of a warmup alternating between the start position and its
		reflection while the body turns once around and the head keeps
		sweeping. The upper wall close to one position is out of the image
		there but seen from the other one, so every tile is trained and a
		pi periodic room gives a pi periodic model."""
		count = max(int(round(seconds * self.scenario.frame_rate)), 2)
		positions = (self.start, reflect(self.start),)
		for frame in range(count):
			t = frame * self.dt
			pos = positions[frame % 2]
			heading = wrap_angle(pos.heading + 2 * pi * frame / count)
			yield frame, ViewPose(pos.x, pos.y, heading, head_yaw(t, self.sweep, self.rate), 0.0)


def default_spec(field=None, cylinder=None, cfg=SimConfig(), seed=0):
	return make_world_spec(
		field or FieldMap(),
		cylinder or CylinderParams(),
		patches=cfg.patches,
		noise=cfg.texture_noise,
		periodic=(cfg.texture == 'periodic'),
		seed=seed,
	)
