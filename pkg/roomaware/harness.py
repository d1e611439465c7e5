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
Trials and experiments.

A trial first trains a background model around the true start pose (or
takes a stored one), then runs the whole pipeline once per frame:

  world step -> self-localization -> believed view -> perceived tiles
  -> gated model training -> orientation filter -> confidences
  -> behaviour controller -> command applied to self-localization

It ends a few seconds after the first flip or purge, or at the time cap.
An experiment runs many seeded trials in a process pool and aggregates
them into a report.
'''

import multiprocessing
import sys
from collections import namedtuple
from math import pi, hypot
from os.path import join
from traceback import format_exc

import numpy as np

from roomaware import g
from roomaware.background_model import BackgroundModel
from roomaware.colour import build_histogram
from roomaware.compat import setproctitle, monotonic
from roomaware.confidence import ConfidenceHistory, pose_confidences
from roomaware.controller import Controller, FLIP, PURGE, RESET, gate_reason
from roomaware.error import PurgeWouldEmpty, TrialError, UserError
from roomaware.extras import fmttime
from roomaware.geometry import ViewPose, view_center_azimuth, visible_tiles, angle_diff
from roomaware.orientation_filter import OrientationFilter
from roomaware.report import ExperimentReport, aggregate, write_report, FLIP as FLIP_OUTCOME, PURGE as PURGE_OUTCOME, FAILED
from roomaware.selfloc import best_pose, flip_pose, init_particles, mcl_step, purge_reflection, reflect, reset_orientation
from roomaware.sim import HEAD_ONLY, PENALTY_WALK, CORRECT, REFLECTED, WARMUP, Scenario, World, compose, frame_rng, make_world_spec, synthesize_background
from roomaware.statmsg import status, install_siginfo
from roomaware.triallog import write_log

SCENARIO_KINDS = {'head-only': HEAD_ONLY, 'penalty-walk': PENALTY_WALK}
INIT_KINDS = {'correct': CORRECT, 'reflected': REFLECTED}
OUTCOME_OF = {FLIP: FLIP_OUTCOME, PURGE: PURGE_OUTCOME}

# rng stream for everything the robot itself draws (filters, commands)
TRIAL_STREAM = 100

TrialJob = namedtuple('TrialJob', 'scenario index seed world_seed init side')

TrialOutcome = namedtuple('TrialOutcome', 'scenario seed init side first_signal classification correct_after_signal position_error heading_error frames')


def trial_jobs(st, scenarios, trials=None, seed=None):
	"""Seeded trials per scenario, the first half starting on side 0.
	With trial.init = mixed, trials 2k and 2k + 1 share a world and a side
	and start correct and reflected respectively."""
	base = st.trial.seed if seed is None else seed
	for name in scenarios:
		if trials is None:
			n = st.experiment[name.replace('-', '_') + '_trials']
		else:
			n = trials
		for i in range(n):
			s = base + i
			if st.trial.init == 'mixed':
				init = 'reflected' if i % 2 else 'correct'
				world_seed = s - i % 2
				side = 0 if i // 2 < (n // 2 + 1) // 2 else 1
			else:
				init = st.trial.init
				world_seed = s
				side = 0 if i < n // 2 else 1
			yield TrialJob(name, i, s, world_seed, init, side)


def world_for(st, job, texture_seed=None):
	"""The simulated world of a trial. The texture comes from texture_seed
	(a stored model was trained on one particular texture)."""
	if texture_seed is None:
		texture_seed = job.world_seed
	rate = st.sim.frame_rate
	scenario = Scenario(SCENARIO_KINDS[job.scenario], int(round(st.sim.duration_s * rate)), INIT_KINDS[job.init], rate)
	spec = make_world_spec(st.field, st.cylinder, st.sim.patches, st.sim.texture_noise, st.sim.texture == 'periodic', texture_seed)
	return World(spec, st.sim, st.camera, scenario, job.side, job.world_seed, synthesize_background(spec, texture_seed))


def warm_up(world, st, seconds, model):
	"""Train model from views at the true start pose and its reflection.
	The gate is opened for the warmup and left as it was before."""
	was_enabled = model.training_enabled
	model.set_training_gate(True, 'Manual')
	with status('warmup %.0fs' % (seconds,)) as update:
		for frame, view in world.warmup_views(seconds):
			update('warmup frame %d' % (frame,))
			for tid, _, samples in world.render_view(view, frame_rng(world.seed, frame, WARMUP)):
				model.update_tile(tid, build_histogram(samples, st.binning))
	model.set_training_gate(was_enabled, 'Manual')
	return model


def perceive(tiles, believed_view, camera, grid, binning):
	"""Histograms addressed by the tiles visible under the believed view.

	Each believed tile gets the pixels of the true tile that lands at
	the same place in the image (nearest quad center, at most half a
	tile width away). This is what a camera image means to a robot that
	is wrong about its pose.
	"""
	if not tiles:
		return []
	believed = visible_tiles(believed_view, camera, grid)
	if not believed:
		return []
	centers = np.array([quad.mean(axis=0) for _, quad, _ in tiles])
	hists = {}
	res = []
	for tid, quad in believed:
		d = np.hypot(*(centers - quad.mean(axis=0)).T)
		j = int(np.argmin(d))
		if d[j] <= (quad[:, 0].max() - quad[:, 0].min()) / 2:
			if j not in hists:
				hists[j] = build_histogram(tiles[j][2], binning)
			res.append((tid, hists[j]))
	return res


def pose_correct(estimate, truth):
	"""Closer to the truth than to its reflection, heading within 90 degrees."""
	refl = reflect(truth)
	d_true = hypot(estimate.x - truth.x, estimate.y - truth.y)
	d_refl = hypot(estimate.x - refl.x, estimate.y - refl.y)
	return d_true < d_refl and abs(angle_diff(estimate.heading, truth.heading)) < pi / 2


def _pose(p):
	return [float(p.x), float(p.y), float(p.heading)]

def run_trial(st, job, model=None, verbose=False):
	"""Returns (TrialOutcome, trial log objects).
	model is a trained BackgroundModel to start from, None to warm up."""
	world = world_for(st, job, None if model is None else st.trial.seed)
	grid = world.grid
	if model is None:
		model = warm_up(world, st, st.trial.warmup_s, BackgroundModel(grid, st.n_param))
	else:
		if model.grid != grid:
			raise UserError('Stored background model does not match the wall configuration')
		model = model.copy()
	model.set_training_gate(False, 'LowConfidence', 0)
	scenario = world.scenario
	rate = scenario.frame_rate
	share = st.selfloc.multimodal_share
	rng = np.random.default_rng([job.seed, TRIAL_STREAM])
	particles = init_particles(world.start, st.selfloc, rng)
	if scenario.init == REFLECTED:
		particles = flip_pose(particles)
	orientation = OrientationFilter(st.filter, rng, st.sigma0)
	history = ConfidenceHistory(st.window)
	controller = Controller(st.controller)
	objs = [dict(
		type='trial',
		scenario=job.scenario,
		seed=job.seed,
		world_seed=job.world_seed,
		init=job.init,
		side=job.side,
		frame_rate=rate,
		fov=st.fov,
		window=st.window,
		controller=dict(st.controller._asdict()),
		verbose=bool(verbose),
	)]
	believed, multimodal = best_pose(particles, share)
	prev_view = None
	first_signal = None
	stop = scenario.duration_frames
	settle = int(round(st.trial.settle_s * rate))
	with status('trial %s seed %d' % (job.scenario, job.seed)) as update:
		for frame in range(scenario.duration_frames):
			update('trial %s seed %d frame %d' % (job.scenario, job.seed, frame))
			bundle = world.step(frame, believed)
			moved_from = believed
			particles = mcl_step(particles, bundle.odometry, bundle.observations, st.field, st.selfloc, rng)
			believed, multimodal = best_pose(particles, share)
			view = ViewPose(believed.x, believed.y, believed.heading, bundle.head_yaw, st.pitch)
			view_center = view_center_azimuth(view, st.cylinder)
			if prev_view is None:
				delta = 0.0
			else:
				# the believed view center motion as odometry explains it,
				# localization corrections are not view motion
				dead = compose(moved_from, bundle.odometry)
				dead_view = ViewPose(dead.x, dead.y, dead.heading, bundle.head_yaw, st.pitch)
				delta = angle_diff(view_center_azimuth(dead_view, st.cylinder), view_center_azimuth(prev_view, st.cylinder))
			prev_view = view
			perceived = perceive(bundle.tiles, view, st.camera, grid, st.binning)
			for tid, hist in perceived:
				model.update_tile(tid, hist)
			weighted = orientation.step(delta, perceived, view_center, model)
			conf = pose_confidences(weighted, view_center, st.fov)
			cluster = orientation.cluster()
			smoothed = history.push(conf)
			command, gate = controller.step(smoothed, multimodal, bundle.fall, bundle.penalty)
			model.set_training_gate(gate, 'LowConfidence' if gate else gate_reason(controller.state), frame)
			note = None
			if command:
				if command.kind == FLIP:
					particles = flip_pose(particles)
				elif command.kind == PURGE:
					try:
						particles = purge_reflection(particles, believed, st.selfloc.purge_radius, rng)
					except PurgeWouldEmpty as e:
						note = str(e)
						print('WARNING: %s seed %d frame %d: purge ignored, %s' % (job.scenario, job.seed, frame, note,), file=sys.stderr)
				elif command.kind == RESET:
					particles = reset_orientation(particles, rng)
					orientation.reset()
				if first_signal is None and command.kind in OUTCOME_OF:
					first_signal = (command.kind, frame / rate)
					stop = min(stop, frame + 1 + settle)
			obj = dict(
				type='frame',
				frame=frame,
				t=frame / rate,
				truth=_pose(bundle.true_pose),
				estimate=_pose(believed),
				multimodal=bool(multimodal),
				view_center=float(view_center),
				visible=len(bundle.tiles),
				perceived=len(perceived),
				confidence=[conf.current, conf.reflected],
				smoothed=[smoothed.current, smoothed.reflected],
				cluster=[float(cluster.center), float(cluster.spread), float(cluster.mass)],
				gate=bool(gate),
				fall=bool(bundle.fall),
				penalty=bool(bundle.penalty),
				command=command.kind if command else None,
			)
			if note:
				obj['note'] = note
			if verbose:
				obj['particles'] = weighted.dump()
			objs.append(obj)
			if frame + 1 >= stop:
				break
	final, _ = best_pose(particles, share)
	truth = bundle.true_pose
	outcome = TrialOutcome(
		job.scenario, job.seed, job.init, job.side,
		first_signal,
		OUTCOME_OF[first_signal[0]] if first_signal else FAILED,
		pose_correct(final, truth),
		hypot(final.x - truth.x, final.y - truth.y),
		abs(angle_diff(final.heading, truth.heading)),
		frame + 1,
	)
	obj = dict(outcome._asdict(), type='outcome', dropped_updates=model.dropped_updates, gate_changes=len(model.gate_log))
	obj['first_signal'] = list(first_signal) if first_signal else None
	objs.append(obj)
	return outcome, objs


def describe(job, outcome):
	if outcome.first_signal:
		kind, t = outcome.first_signal
		what = '%s at %.1fs' % (OUTCOME_OF[kind].lower(), t,)
	else:
		what = 'no signal'
	return '| %s #%d seed %d |  %s, %s.' % (job.scenario, job.index, job.seed, what, 'correct' if outcome.correct_after_signal else 'incorrect',)


def log_filename(out_dir, job):
	return join(out_dir, '%s-%d.jsonl' % (job.scenario, job.seed,))


_worker = {}

def _pool_init(st, out_dir, verbose, model):
	g.running = 'trial'
	install_siginfo()
	_worker.update(st=st, out_dir=out_dir, verbose=verbose, model=model)

def _run_job(job):
	setproctitle('%s #%d' % (job.scenario, job.index,))
	t0 = monotonic()
	try:
		outcome, objs = run_trial(_worker['st'], job, _worker['model'], _worker['verbose'])
		if _worker['out_dir']:
			write_log(log_filename(_worker['out_dir'], job), objs)
	except UserError:
		raise
	except Exception:
		raise TrialError(job.scenario, job.seed, format_exc())
	return job, outcome, monotonic() - t0


def _collect(it):
	"""Results of pool.imap in order, waiting in short slices so the
	shell process keeps handling signals."""
	while True:
		try:
			yield it.next(timeout=1)
		except multiprocessing.TimeoutError:
			continue
		except StopIteration:
			return


def run_experiment(st, out_dir, scenarios=None, trials=None, seed=None, workers=None, verbose=False, model=None):
	"""Run every trial, print one line per trial, write the trial logs and
	report.csv to out_dir and return the ExperimentReport."""
	if scenarios is None:
		scenarios = st.experiment.scenarios
	jobs = list(trial_jobs(st, scenarios, trials, seed))
	if workers is None:
		workers = st.experiment.workers
	outcomes = []
	if jobs:
		if workers == 1 or len(jobs) == 1:
			_pool_init(st, out_dir, verbose, model)
			results = map(_run_job, jobs)
			pool = None
		else:
			if hasattr(multiprocessing, 'get_context'):
				Pool = multiprocessing.get_context('forkserver').Pool
			else:
				Pool = multiprocessing.Pool
			pool = Pool(workers or None, initializer=_pool_init, initargs=(st, out_dir, verbose, model))
			results = _collect(pool.imap(_run_job, jobs))
		try:
			for job, outcome, elapsed in results:
				print('%s (%s)' % (describe(job, outcome), fmttime(elapsed),))
				outcomes.append(outcome)
		except BaseException:
			if pool:
				pool.terminate()
			raise
		if pool:
			pool.close()
			pool.join()
	report = aggregate(outcomes) if outcomes else ExperimentReport(())
	if out_dir:
		write_report(report, join(out_dir, 'report.csv'))
	return report
