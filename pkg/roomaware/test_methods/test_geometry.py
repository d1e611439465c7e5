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

from math import pi, radians, sqrt, atan2

import numpy as np

from roomaware.geometry import (
	CylinderParams, CameraModel, ViewPose, Occluder, TileGrid, TWO_PI,
	wrap_angle, angle_diff, make_tile_grid, view_center_azimuth, visible_tiles,
)

params = CylinderParams()
grid = TileGrid(params)
camera = CameraModel()


def test_wrap_angle():
	assert wrap_angle(pi) == -pi
	assert wrap_angle(-pi) == -pi
	assert abs(wrap_angle(3 * pi / 2) + pi / 2) < 1e-12
	assert abs(angle_diff(0.1, TWO_PI - 0.1) - 0.2) < 1e-12
	a = wrap_angle(np.linspace(-20, 20, 1001))
	assert ((a >= -pi) & (a < pi)).all()

def test_tile_grid():
	assert len(grid) == 72
	assert abs(grid.sector - radians(10)) < 1e-12
	g = make_tile_grid(CylinderParams(rows=1, cols=3))
	assert len(g) == 3
	assert abs(g.sector - 2 * pi / 3) < 1e-12
	assert grid.column_of(TWO_PI - 1e-9) == 35
	assert grid.column_of(0.0) == 0
	assert grid.column_of(-1e-9) == 35
	assert grid.index(grid.tiles[40]) == 40
	for bad in (dict(radius=0), dict(z_min=2.0), dict(cols=2), dict(rows=0),):
		try:
			TileGrid(CylinderParams(**bad))
			raise Exception("TileGrid accepted %r" % (bad,))
		except AssertionError:
			pass

def test_columns_partition():
	rng = np.random.default_rng(3)
	az = rng.uniform(-10, 10, 5000)
	cols = grid.column_of(az)
	assert ((cols >= 0) & (cols < 36)).all()
	for a, col in zip(np.mod(az, TWO_PI)[:500], cols[:500]):
		lo, hi = grid.azimuth_range(col)
		assert lo - 1e-12 <= a < hi + 1e-12, (a, col)

def test_view_center_azimuth():
	for h in (0.0, 1.0, -2.5, 3.0):
		assert abs(angle_diff(view_center_azimuth(ViewPose(0, 0, h), params), h)) < 1e-12
	assert abs(view_center_azimuth(ViewPose(0, 0, 0.0, pi / 2), params) - pi / 2) < 1e-12
	# offset robot, circle intersection at (r/2, r*sqrt(3)/2)
	r = params.radius
	got = view_center_azimuth(ViewPose(r / 2, 0, pi / 2), params)
	assert abs(got - atan2(r * sqrt(3) / 2, r / 2)) < 1e-12
	assert abs(got - pi / 3) < 1e-12
	for delta in np.linspace(-3, 3, 13):
		a = view_center_azimuth(ViewPose(0, 0, 0.4), params)
		b = view_center_azimuth(ViewPose(0, 0, 0.4 + delta), params)
		assert abs(angle_diff(b - a, delta)) < 1e-9

def test_visible_tiles_count():
	# facing the centre of column 0 from the cylinder centre: columns whose
	# both edges are within half the fov are visible, both rows fit
	v = ViewPose(0, 0, radians(5))
	res = visible_tiles(v, camera, grid)
	half = camera.horizontal_fov / 2
	want = 0
	for col in range(36):
		lo, hi = grid.azimuth_range(col)
		if abs(angle_diff(lo, radians(5))) <= half and abs(angle_diff(hi, radians(5))) <= half:
			want += 1
	assert want == 5
	assert len(res) == want * 2, res
	assert {tid.col for tid, _ in res} == {34, 35, 0, 1, 2}
	for tid, quad in res:
		assert quad.shape == (4, 2)
		assert ((quad[:, 0] >= 0) & (quad[:, 0] <= camera.image_width)).all()
		assert ((quad[:, 1] >= 0) & (quad[:, 1] <= camera.image_height)).all()

def test_visible_tiles_occluded():
	v = ViewPose(0, 0, radians(5))
	occ = Occluder(np.cos(radians(5)), np.sin(radians(5)), 0.1)
	cols = {tid.col for tid, _ in visible_tiles(v, camera, grid, [occ])}
	assert 0 not in cols
	assert {1, 2, 34, 35} <= cols

def test_visible_tiles_grazing():
	v = ViewPose(0, 0, radians(5))
	# the upper row is seen about 11 degrees off its normal, the lower about 3
	res = visible_tiles(v, camera._replace(grazing_angle=radians(5)), grid)
	assert res
	assert {tid.row for tid, _ in res} == {0}

def test_visible_tiles_monotone_in_fov():
	rng = np.random.default_rng(4)
	for _ in range(20):
		v = ViewPose(rng.uniform(-2, 2), rng.uniform(-1.5, 1.5), rng.uniform(-pi, pi), rng.uniform(-1, 1))
		prev = set()
		for fov in (40, 60, 80, 100, 120):
			now = {tid for tid, _ in visible_tiles(v, camera._replace(horizontal_fov=radians(fov)), grid)}
			assert prev <= now, (v, fov)
			prev = now
