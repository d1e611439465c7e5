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

import re
import os
import shlex
from io import open
from math import radians

from roomaware.extras import DotDict


_re_var = re.compile(r'(?<!\\)\$\{([^\}=]*)(?:=([^\}]*))?\}')
def interpolate(s):
	"""Replace ${FOO=BAR} with os.environ.get('FOO', 'BAR')
	(just ${FOO} is of course also supported, but not $FOO)"""
	return _re_var.subn(lambda m: os.environ.get(m.group(1), m.group(2)), s)[0]


class _E(Exception):
	pass

def _choice(*options):
	def parse(val):
		if val not in options:
			raise _E('Expected one of %s, got %r' % (', '.join(options), val,))
		return val
	return parse

def _number(conv):
	def parse(val):
		try:
			return conv(val)
		except ValueError:
			raise _E('%r is not a valid %s' % (val, conv.__name__,))
	return parse

def _tuple_of(conv):
	conv = _number(conv)
	def parse(vals):
		return tuple(conv(v) for v in vals)
	return parse

def _positive(val):
	if val <= 0:
		raise _E('Must be positive, got %r' % (val,))

def _non_negative(val):
	if val < 0:
		raise _E('Must not be negative, got %r' % (val,))

def _all_non_negative(vals):
	for v in vals:
		_non_negative(v)

_int = _number(int)
_float = _number(float)
SCENARIO_NAMES = ('head-only', 'penalty-walk',)

# key: (value names, None for any number of values; parser; default; checker)
KEYS = {
	'colour.c1': (['threshold'], _int, 16, _positive),
	'colour.c2': (['threshold'], _int, 32, _positive),
	'colour.c3': (['threshold'], _int, 64, _positive),
	'colour.sigma0': (['variance'], _float, 1e-3, _positive),

	'wall.center': (['x', 'y'], _tuple_of(float), (0.0, 0.0), None),
	'wall.radius': (['meters'], _float, 4.5, _positive),
	'wall.rows': (['count'], _int, 2, _positive),
	'wall.cols': (['count'], _int, 36, _positive),
	'wall.z_min': (['meters'], _float, 0.4, None),
	'wall.z_max': (['meters'], _float, 1.6, None),

	'camera.hfov_deg': (['degrees'], _float, 60.0, _positive),
	'camera.width': (['pixels'], _int, 640, _positive),
	'camera.height': (['pixels'], _int, 480, _positive),
	'camera.grazing_deg': (['degrees'], _float, 75.0, _positive),
	'camera.mount_height': (['meters'], _float, 0.45, None),
	'camera.pitch_deg': (['degrees'], _float, 0.0, None),

	'model.n_param': (['count'], _int, 20, _positive),
	'model.load': (['path'], str, None, None),

	'filter.count': (['count'], _int, 200, _positive),
	'filter.noise_std': (['radians'], _float, 0.03, _non_negative),
	'filter.inject_fraction': (['fraction'], _float, 0.05, _non_negative),
	'filter.epsilon': (['weight'], _float, 0.01, _positive),
	'filter.cluster_window': (['radians'], _float, 0.35, _positive),

	'confidence.fov_deg': (['degrees'], _float, 60.0, _positive),
	'confidence.window': (['frames'], _int, 15, _positive),

	'bc.flip_margin': (['margin'], _float, 0.25, None),
	'bc.purge_margin': (['margin'], _float, 0.25, None),
	'bc.hold_frames': (['frames'], _int, 10, _positive),
	'bc.cooldown_frames': (['frames'], _int, 30, _positive),
	'bc.train_margin': (['margin'], _float, 0.15, None),

	'selfloc.count': (['count'], _int, 100, _positive),
	'selfloc.purge_radius': (['meters'], _float, 1.0, _positive),
	'selfloc.motion_noise': (['x', 'y', 'heading'], _tuple_of(float), (0.02, 0.02, 0.01), _all_non_negative),
	'selfloc.inject_fraction': (['fraction'], _float, 0.01, _non_negative),
	'selfloc.init_spread': (['x', 'y', 'heading'], _tuple_of(float), (0.1, 0.1, 0.05), _all_non_negative),
	'selfloc.multimodal_share': (['fraction'], _float, 0.2, _positive),

	'field.length': (['meters'], _float, 6.0, _positive),
	'field.width': (['meters'], _float, 4.0, _positive),
	'field.goal_width': (['meters'], _float, 1.5, _positive),
	'field.penalty_distance': (['meters'], _float, 1.8, _positive),

	'sim.frame_rate': (['hz'], _int, 10, _positive),
	'sim.duration_s': (['seconds'], _float, 200.0, _positive),
	'sim.samples_per_tile': (['count'], _int, 64, _positive),
	'sim.pixel_noise': (['std'], _float, 4.0, _non_negative),
	'sim.texture': (['asymmetric or periodic'], _choice('asymmetric', 'periodic'), 'asymmetric', None),
	'sim.patches': (['count'], _int, 12, _positive),
	'sim.texture_noise': (['std'], _float, 2.0, _non_negative),
	'sim.odometry_noise': (['x', 'y', 'heading'], _tuple_of(float), (0.005, 0.005, 0.005), _all_non_negative),
	'sim.obs_range_std': (['meters'], _float, 0.1, _positive),
	'sim.obs_bearing_std': (['radians'], _float, 0.03, _positive),
	'sim.max_range': (['meters'], _float, 6.0, _positive),
	'sim.fall_times': (None, _tuple_of(float), (), _all_non_negative),
	'sim.walk_speed': (['meters per second'], _float, 0.15, _non_negative),
	'sim.head_sweep_deg': (['degrees'], _float, 60.0, _non_negative),
	'sim.head_rate_deg': (['degrees per second'], _float, 20.0, _non_negative),
	'sim.penalty_times': (None, _tuple_of(float), (), _all_non_negative),
	'sim.penalty_s': (['seconds'], _float, 5.0, _non_negative),

	'trial.warmup_s': (['seconds'], _float, 30.0, _non_negative),
	'trial.init': (['reflected, correct or mixed'], _choice('reflected', 'correct', 'mixed'), 'reflected', None),
	'trial.settle_s': (['seconds'], _float, 2.0, _non_negative),
	'trial.seed': (['seed'], _int, 0, _non_negative),

	'experiment.scenarios': (None, lambda vals: tuple(_choice(*SCENARIO_NAMES)(v) for v in vals), SCENARIO_NAMES, None),
	'experiment.head_only_trials': (['count'], _int, 20, _non_negative),
	'experiment.penalty_walk_trials': (['count'], _int, 10, _non_negative),
	'experiment.workers': (['count'], _int, 0, _non_negative),
}


def _nest(flat):
	res = DotDict()
	for key, val in flat.items():
		section, name = key.split('.', 1)
		res.setdefault(section, DotDict())[name] = val
	return res


def _check(cfg):
	"""Checks between keys, after everything is parsed."""
	c = cfg.colour
	if not (c.c1 < c.c2 < c.c3 <= 128):
		raise _E('Need colour.c1 < colour.c2 < colour.c3 <= 128, got %d %d %d' % (c.c1, c.c2, c.c3,))
	if cfg.wall.z_max <= cfg.wall.z_min:
		raise _E('wall.z_max must be above wall.z_min')
	if cfg.wall.cols < 3:
		raise _E('wall.cols must be at least 3')
	for key in ('camera.hfov_deg', 'confidence.fov_deg'):
		section, name = key.split('.')
		if not cfg[section][name] < 180:
			raise _E('%s must be below 180' % (key,))
	if cfg.camera.grazing_deg > 90:
		raise _E('camera.grazing_deg must be at most 90')
	for key in ('filter.inject_fraction', 'selfloc.inject_fraction', 'selfloc.multimodal_share'):
		section, name = key.split('.')
		if not cfg[section][name] < 0.5:
			raise _E('%s must be below 0.5' % (key,))
	for name in ('flip_margin', 'purge_margin', 'train_margin'):
		if not 0 < cfg.bc[name] < 1:
			raise _E('bc.%s must be in (0, 1)' % (name,))
	if cfg.bc.cooldown_frames < cfg.bc.hold_frames:
		raise _E('bc.cooldown_frames must be at least bc.hold_frames')
	for key in ('filter.count', 'selfloc.count'):
		section, name = key.split('.')
		if cfg[section][name] < 10:
			raise _E('%s must be at least 10' % (key,))
	for name in ('head_only_trials', 'penalty_walk_trials'):
		if cfg.experiment[name] % 2:
			raise _E('experiment.%s must be even (half the trials start on each side)' % (name,))
	if not 0 < cfg.field.goal_width < cfg.field.width:
		raise _E('field.goal_width must be less than field.width')
	if not cfg.field.penalty_distance < cfg.field.length / 2:
		raise _E('field.penalty_distance must be less than half of field.length')
	if int(round(cfg.sim.duration_s * cfg.sim.frame_rate)) < 1:
		raise _E('sim.duration_s must be at least one frame (1 / sim.frame_rate seconds)')


def default_config():
	return _nest({key: default for key, (_, _, default, _) in KEYS.items()})


def parse_config(lines, filename):
	"""lines is an iterable of text lines. Lines are "key = value";
	an indented line continues the value of the previous key."""
	from roomaware.error import UserError

	lines = list(enumerate(lines, 1))
	values = {}
	lineno = [None]

	def handle(key, val):
		args, parser, _, checker = KEYS[key]
		if args is not None:
			if len(val) != len(args):
				if len(args) == 1:
					raise _E("%s takes a single value %s (maybe you meant to quote it?)" % (key, args[0],))
				raise _E("%s takes %d values (expected %s, got %r)" % (key, len(args), ' '.join(args), val,))
			if len(args) == 1:
				val = val[0]
		val = parser(val)
		if checker:
			checker(val)
		values[key] = val

	try:
		key = None
		pending = []
		for n, line in lines:
			line_stripped = line.strip()
			if not line_stripped or line_stripped[0] == '#':
				continue
			if line == line.lstrip():
				if key:
					handle(key, pending)
				lineno[0] = n
				if '=' not in line:
					raise _E('Expected a "="')
				key, val = line.split('=', 1)
				key = key.strip()
				if key not in KEYS:
					raise _E('Unknown key %r' % (key,))
				if key in values:
					raise _E("%r doesn't take multiple values" % (key,))
				pending = []
			else:
				if not key:
					lineno[0] = n
					raise _E('First line indented')
				val = line
			try:
				pending.extend(shlex.split(interpolate(val), posix=True, comments=True))
			except ValueError as e:
				lineno[0] = n
				raise _E(str(e))
		if key:
			handle(key, pending)
		lineno[0] = None

		res = default_config()
		for key, val in values.items():
			section, name = key.split('.', 1)
			res[section][name] = val
		_check(res)
	except _E as e:
		if lineno[0] is None:
			prefix = 'Error in %s:\n' % (filename,)
		else:
			prefix = 'Error on line %d of %s:\n' % (lineno[0], filename,)
		raise UserError(prefix + e.args[0])
	if res.model.load:
		res.model.load = os.path.join(os.path.dirname(filename), res.model.load)
	return res


def load_config(filename):
	with open(filename, 'r', encoding='utf-8') as fh:
		return parse_config(fh, filename)


def settings(cfg):
	"""The typed per-module configuration objects for a parsed config."""
	from roomaware.colour import BinningConfig
	from roomaware.geometry import CylinderParams, CameraModel
	from roomaware.orientation_filter import OrientationFilterConfig
	from roomaware.controller import ControllerConfig
	from roomaware.selfloc import SelfLocConfig, FieldMap
	from roomaware.sim import SimConfig

	w = cfg.wall
	cam = cfg.camera
	f = cfg.filter
	bc = cfg.bc
	sl = cfg.selfloc
	fl = cfg.field
	return DotDict(
		binning=BinningConfig(cfg.colour.c1, cfg.colour.c2, cfg.colour.c3),
		sigma0=cfg.colour.sigma0,
		cylinder=CylinderParams(tuple(w.center), w.radius, w.z_min, w.z_max, w.rows, w.cols),
		camera=CameraModel(radians(cam.hfov_deg), cam.width, cam.height, cam.mount_height, radians(cam.grazing_deg)),
		pitch=radians(cam.pitch_deg),
		n_param=cfg.model.n_param,
		model_load=cfg.model.load,
		filter=OrientationFilterConfig(f.count, f.noise_std, f.inject_fraction, f.epsilon, f.cluster_window),
		fov=radians(cfg.confidence.fov_deg),
		window=cfg.confidence.window,
		controller=ControllerConfig(bc.flip_margin, bc.purge_margin, bc.hold_frames, bc.cooldown_frames, bc.train_margin),
		selfloc=SelfLocConfig(sl.count, sl.purge_radius, tuple(sl.motion_noise), sl.inject_fraction, tuple(sl.init_spread), sl.multimodal_share),
		field=FieldMap(fl.length, fl.width, fl.goal_width, fl.penalty_distance),
		sim=SimConfig(**cfg.sim),
		trial=cfg.trial,
		experiment=cfg.experiment,
	)
