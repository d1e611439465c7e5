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
The virtual wall: a cylinder around the field cut into rows (height
bands) and columns (azimuth sectors) of tiles, and the pinhole camera
that decides which tiles the robot can currently see.

Azimuths are measured in the field frame from the cylinder center.
Column c covers [c * 2pi/cols, (c + 1) * 2pi/cols).
'''

from collections import namedtuple
from math import pi, tan, atan2, sqrt, cos, sin, radians

import numpy as np

TWO_PI = 2 * pi


def wrap_angle(a):
	"""Wrap to [-pi, pi). Works on floats and numpy arrays."""
	res = np.mod(np.asarray(a, dtype=np.float64) + pi, TWO_PI) - pi
	if res.ndim == 0:
		return float(res)
	return res

def angle_diff(a, b):
	"""Smallest signed difference a - b, in [-pi, pi)."""
	return wrap_angle(np.asarray(a) - np.asarray(b))


CylinderParams = namedtuple('CylinderParams', 'center radius z_min z_max rows cols')
CylinderParams.__new__.__defaults__ = ((0.0, 0.0), 4.5, 0.4, 1.6, 2, 36)

TileId = namedtuple('TileId', 'row col')

CameraModel = namedtuple('CameraModel', 'horizontal_fov image_width image_height mount_height grazing_angle')
CameraModel.__new__.__defaults__ = (radians(60), 640, 480, 0.45, radians(75))

ViewPose = namedtuple('ViewPose', 'x y body_heading head_yaw head_pitch')
ViewPose.__new__.__defaults__ = (0.0, 0.0)

# Field frame disc, things like other robots standing in front of the wall.
Occluder = namedtuple('Occluder', 'x y radius')


def check_cylinder(p):
	assert p.radius > 0, "radius must be positive"
	assert p.z_max > p.z_min, "z_max must be above z_min"
	assert p.rows >= 1 and p.cols >= 3, "need at least one row and three columns"

def check_camera(cam):
	assert 0 < cam.horizontal_fov < pi, "horizontal_fov must be in (0, pi)"
	assert cam.image_width > 0 and cam.image_height > 0


class TileGrid(object):
	"""All tiles of one cylinder, with their 3D corners precomputed.

	Tiles are indexed row major: index = row * cols + col.
	"""

	def __init__(self, params):
		check_cylinder(params)
		self.params = params
		self.rows = params.rows
		self.cols = params.cols
		self.sector = TWO_PI / params.cols
		cx, cy = params.center
		band = (params.z_max - params.z_min) / params.rows
		corners = np.empty((self.rows * self.cols, 4, 3))
		centers = np.empty((self.rows * self.cols, 3))
		for row in range(self.rows):
			z0 = params.z_min + row * band
			z1 = z0 + band
			for col in range(self.cols):
				a0 = col * self.sector
				a1 = a0 + self.sector
				ix = row * self.cols + col
				p0 = (cx + params.radius * cos(a0), cy + params.radius * sin(a0))
				p1 = (cx + params.radius * cos(a1), cy + params.radius * sin(a1))
				corners[ix] = (
					(p0[0], p0[1], z0),
					(p1[0], p1[1], z0),
					(p1[0], p1[1], z1),
					(p0[0], p0[1], z1),
				)
				am = a0 + self.sector / 2
				centers[ix] = (cx + params.radius * cos(am), cy + params.radius * sin(am), (z0 + z1) / 2)
		self.corners = corners
		self.centers = centers
		self.tiles = [TileId(row, col) for row in range(self.rows) for col in range(self.cols)]

	def __len__(self):
		return len(self.tiles)

	def __eq__(self, other):
		return isinstance(other, TileGrid) and self.params == other.params

	def __ne__(self, other):
		return not self == other

	def index(self, tid):
		assert 0 <= tid.row < self.rows and 0 <= tid.col < self.cols, tid
		return tid.row * self.cols + tid.col

	def column_of(self, azimuth):
		"""Column containing azimuth (scalar or array)."""
		col = np.floor(np.mod(azimuth, TWO_PI) / self.sector).astype(np.int64) % self.cols
		if np.ndim(col) == 0:
			return int(col)
		return col

	def azimuth_range(self, col):
		return col * self.sector, (col + 1) * self.sector

	def center_azimuth(self, col):
		"""Wrapped to [-pi, pi), scalar or array."""
		return wrap_angle((np.asarray(col) + 0.5) * self.sector)

	def band(self, row):
		h = (self.params.z_max - self.params.z_min) / self.rows
		return self.params.z_min + row * h, self.params.z_min + (row + 1) * h


def make_tile_grid(p):
	return TileGrid(p)


def view_heading(v):
	return v.body_heading + v.head_yaw

def view_center_azimuth(v, p):
	"""Azimuth where the optical axis (projected to the floor plane) meets
	the cylinder. The robot is assumed to be inside the cylinder."""
	cx, cy = p.center
	ox, oy = v.x - cx, v.y - cy
	h = view_heading(v)
	dx, dy = cos(h), sin(h)
	b = ox * dx + oy * dy
	c = ox * ox + oy * oy - p.radius * p.radius
	disc = b * b - c
	t = -b + sqrt(max(disc, 0.0))
	return wrap_angle(atan2(oy + t * dy, ox + t * dx))


def _camera_axes(v):
	yaw = view_heading(v)
	pitch = v.head_pitch
	forward = np.array([cos(yaw) * cos(pitch), sin(yaw) * cos(pitch), sin(pitch)])
	left = np.array([-sin(yaw), cos(yaw), 0.0])
	up = np.array([-cos(yaw) * sin(pitch), -sin(yaw) * sin(pitch), cos(pitch)])
	return forward, left, up

def project_points(v, cam, points):
	"""Pinhole projection of (..., 3) field frame points.
	Returns (..., 2) image coordinates (u right, v down) and a mask of
	points in front of the camera."""
	forward, left, up = _camera_axes(v)
	origin = np.array([v.x, v.y, cam.mount_height])
	d = np.asarray(points, dtype=np.float64) - origin
	zc = d @ forward
	xc = d @ left
	yc = d @ up
	focal = (cam.image_width / 2) / tan(cam.horizontal_fov / 2)
	in_front = zc > 1e-9
	safe_z = np.where(in_front, zc, 1.0)
	u = cam.image_width / 2 - focal * xc / safe_z
	vv = cam.image_height / 2 - focal * yc / safe_z
	return np.stack([u, vv], axis=-1), in_front

def _occluded(ox, oy, tx, ty, occluders):
	"""Mask of tiles whose center ray from (ox, oy) hits an occluder disc
	before reaching the tile. tx, ty are arrays of tile center coordinates."""
	dx, dy = tx - ox, ty - oy
	dist = np.hypot(dx, dy)
	ux, uy = dx / dist, dy / dist
	hit = np.zeros(len(tx), dtype=bool)
	for occ in occluders:
		px, py = occ.x - ox, occ.y - oy
		along = px * ux + py * uy
		perp2 = (px * px + py * py) - along * along
		inside = perp2 <= occ.radius * occ.radius
		t_enter = along - np.sqrt(np.maximum(occ.radius * occ.radius - perp2, 0.0))
		hit |= inside & (along > 0) & (t_enter < dist)
	return hit

def visible_tiles(v, cam, grid, occluders=()):
	"""[(TileId, quad), ...] for every tile fully inside the image, not
	hidden behind an occluder and not seen at a grazing angle beyond
	cam.grazing_angle. quad is a (4, 2) array of image coordinates."""
	check_camera(cam)
	uv, in_front = project_points(v, cam, grid.corners)
	inside = (
		in_front.all(axis=1) &
		(uv[..., 0] >= 0).all(axis=1) & (uv[..., 0] <= cam.image_width).all(axis=1) &
		(uv[..., 1] >= 0).all(axis=1) & (uv[..., 1] <= cam.image_height).all(axis=1)
	)
	cx, cy = grid.params.center
	origin = np.array([v.x, v.y, cam.mount_height])
	to_camera = origin - grid.centers
	to_camera /= np.linalg.norm(to_camera, axis=1)[:, None]
	inward = np.zeros_like(grid.centers)
	inward[:, 0] = cx - grid.centers[:, 0]
	inward[:, 1] = cy - grid.centers[:, 1]
	inward /= np.linalg.norm(inward, axis=1)[:, None]
	incidence = np.arccos(np.clip((to_camera * inward).sum(axis=1), -1.0, 1.0))
	ok = inside & (incidence <= cam.grazing_angle)
	if occluders:
		ok &= ~_occluded(v.x, v.y, grid.centers[:, 0], grid.centers[:, 1], occluders)
	return [(grid.tiles[ix], uv[ix]) for ix in np.flatnonzero(ok)]
