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
Particle filter over the view center azimuth on the wall.

Each particle is a hypothesis of where (in field frame azimuth) the
camera's optical axis really meets the cylinder. A hypothesis is scored by
shifting every perceived tile by the offset between the hypothesis and the
believed view center and comparing it with the model tile it lands on.
New particles are injected at the best match every cycle so the filter
can leave a wrong local optimum.
'''

from collections import namedtuple
from math import pi, sqrt, log

import numpy as np

from roomaware.colour import similarity_matrix
from roomaware.error import DegenerateWeights
from roomaware.geometry import wrap_angle, angle_diff

OrientationFilterConfig = namedtuple('OrientationFilterConfig', 'particle_count motion_noise_std inject_fraction weight_floor cluster_window')
OrientationFilterConfig.__new__.__defaults__ = (200, 0.03, 0.05, 0.01, 0.35)

ClusterEstimate = namedtuple('ClusterEstimate', 'center spread mass')

def check_config(cfg):
	assert cfg.particle_count >= 10, "particle_count must be at least 10"
	assert 0 <= cfg.inject_fraction < 0.5, "inject_fraction must be in [0, 0.5)"
	assert cfg.weight_floor > 0, "weight_floor must be positive"
	assert cfg.motion_noise_std >= 0


class OrientationParticles(object):
	"""Parallel arrays of wrapped azimuths and non-negative weights."""

	__slots__ = ('azimuth', 'weight',)

	def __init__(self, azimuth, weight=None, wrap=True):
		self.azimuth = np.array(azimuth, dtype=np.float64).reshape(-1)
		if wrap:
			self.azimuth = wrap_angle(self.azimuth)
		if weight is None:
			weight = np.full(len(self.azimuth), 1.0 / max(len(self.azimuth), 1))
		self.weight = np.array(weight, dtype=np.float64).reshape(-1)
		assert len(self.weight) == len(self.azimuth)

	def __len__(self):
		return len(self.azimuth)

	def copy(self):
		return OrientationParticles(self.azimuth.copy(), self.weight.copy(), wrap=False)

	def normalized_weight(self):
		total = self.weight.sum()
		if total > 0:
			return self.weight / total
		return np.full(len(self), 1.0 / len(self))

	def dump(self):
		"""[[azimuth, weight], ...] for trial logs."""
		return np.stack([self.azimuth, self.weight], axis=1).tolist()


def uniform_particles(cfg, rng):
	return OrientationParticles(rng.uniform(-pi, pi, cfg.particle_count))


def predict(particles, delta_view, cfg, rng):
	"""Move every hypothesis by the believed view center change plus noise."""
	noise = rng.normal(0.0, cfg.motion_noise_std, len(particles)) if cfg.motion_noise_std > 0 else 0.0
	return OrientationParticles(particles.azimuth + delta_view + noise, particles.weight.copy())


def weigh(particles, perceived, believed_view_center, model, cfg, sigma0=1e-3):
	"""perceived is [(TileId, ColourHistogram), ...] addressed under the
	believed pose. Each particle gets prior weight times the geometric mean
	of (floor + similarity) over the seen model tiles its shift lands on,
	or floor times prior if it lands on no seen tile at all."""
	if not perceived:
		return particles.copy()
	grid = model.grid
	eps = cfg.weight_floor
	rows = np.array([tid.row for tid, _ in perceived])
	cols = np.array([tid.col for tid, _ in perceived])
	hists = np.stack([h.bins for _, h in perceived])
	sims = similarity_matrix(hists, model.means, model.variances, sigma0)
	tile_az = grid.center_azimuth(cols)
	offset = angle_diff(particles.azimuth, believed_view_center)
	target_cols = grid.column_of(tile_az[None, :] + offset[:, None])
	target = rows[None, :] * grid.cols + target_cols
	score = sims[np.arange(len(perceived))[None, :], target]
	seen = model.seen[target]
	logs = np.where(seen, np.log(eps + score), 0.0)
	matched = seen.sum(axis=1)
	geo_mean = np.where(matched > 0, np.exp(logs.sum(axis=1) / np.maximum(matched, 1)), eps)
	return OrientationParticles(particles.azimuth.copy(), particles.weight * geo_mean, wrap=False)


def best_particle(particles):
	"""Index of the highest weight, ties go to the lowest wrapped azimuth."""
	candidates = np.flatnonzero(particles.weight == particles.weight.max())
	return candidates[np.argmin(particles.azimuth[candidates])]

def systematic_indexes(weights, count, rng):
	cumulative = np.cumsum(weights / weights.sum())
	cumulative[-1] = 1.0
	positions = (np.arange(count) + rng.uniform()) / count
	return np.minimum(np.searchsorted(cumulative, positions, side='right'), len(weights) - 1)

def resample_and_inject(particles, cfg, rng):
	w = particles.weight
	if not np.isfinite(w).all() or w.sum() <= 0:
		raise DegenerateWeights("All %d orientation weights are zero" % (len(w),))
	n = len(particles)
	n_inject = int(round(cfg.inject_fraction * n))
	keep = systematic_indexes(w, n - n_inject, rng)
	best = particles.azimuth[best_particle(particles)]
	injected = best + rng.normal(0.0, cfg.motion_noise_std, n_inject) if n_inject else np.empty(0)
	azimuth = np.concatenate([particles.azimuth[keep], injected])
	return OrientationParticles(azimuth)


def _window_mass(azimuth, w, center, window):
	return w[np.abs(angle_diff(azimuth, center)) <= window].sum()

def cluster_center(particles, cfg):
	w = particles.normalized_weight()
	z = (w * np.exp(1j * particles.azimuth)).sum()
	r = abs(z)
	if r < 1e-12:
		# no mean direction (e.g. antipodal halves), take the densest
		# particle position, lowest azimuth on ties
		best, best_mass = None, -1.0
		for a in np.unique(particles.azimuth):
			mass = _window_mass(particles.azimuth, w, a, cfg.cluster_window)
			if mass > best_mass + 1e-12:
				best, best_mass = a, mass
		return ClusterEstimate(float(best), float('inf'), float(best_mass))
	center = wrap_angle(np.angle(z))
	spread = sqrt(max(-2.0 * log(min(r, 1.0)), 0.0))
	return ClusterEstimate(center, spread, float(_window_mass(particles.azimuth, w, center, cfg.cluster_window)))


class OrientationFilter(object):
	"""The filter as the pipeline runs it, one predict/weigh/resample cycle
	per frame. weighted is kept from the last cycle for confidences and logs."""

	def __init__(self, cfg, rng, sigma0=1e-3):
		check_config(cfg)
		self.cfg = cfg
		self.rng = rng
		self.sigma0 = sigma0
		self.reset()

	def reset(self):
		self.particles = uniform_particles(self.cfg, self.rng)
		self.weighted = self.particles

	def step(self, delta_view, perceived, believed_view_center, model):
		moved = predict(self.particles, delta_view, self.cfg, self.rng)
		self.weighted = weigh(moved, perceived, believed_view_center, model, self.cfg, self.sigma0)
		try:
			self.particles = resample_and_inject(self.weighted, self.cfg, self.rng)
		except DegenerateWeights:
			self.reset()
		return self.weighted

	def cluster(self):
		return cluster_center(self.weighted, self.cfg)
