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

import os
from os.path import join

from roomaware.compat import ArgumentParser
from roomaware.configfile import SCENARIO_NAMES
from roomaware.error import UserError, ModelFormat


def main(argv):
	from roomaware.background_model import load_model
	from roomaware.harness import run_experiment, trial_jobs, world_for
	from roomaware.report import print_report
	from roomaware.shell import load_settings
	from roomaware.sim import write_ppm
	from roomaware.statmsg import status, install_siginfo

	parser = ArgumentParser(
		prog=argv.pop(0),
		description='Run seeded trials (half of them starting on each side) and write\nper-trial logs and report.csv to the output directory.',
	)
	parser.add_argument('--config', metavar='FILE', help='configuration file (defaults without)')
	parser.add_argument('--out', metavar='DIR', required=True, help='directory for report.csv and trial logs')
	parser.add_argument('--seed', type=int, help='first seed (default trial.seed)')
	parser.add_argument('--trials', type=int, help='trials per scenario, even (default from config)')
	parser.add_argument('--scenario', choices=SCENARIO_NAMES, help='only this scenario')
	parser.add_argument('--workers', type=int, help='worker processes (default experiment.workers, 0 is one per cpu)')
	parser.add_argument('--verbose', action='store_true', help='log the orientation particles every frame')
	parser.add_argument('--panorama', action='store_true', help='also write panorama.ppm of the first trial world')
	args = parser.parse_args(argv)

	if args.trials is not None and (args.trials < 2 or args.trials % 2):
		raise UserError('--trials must be even and at least 2 (half the trials start on each side)')
	if args.seed is not None and args.seed < 0:
		raise UserError('--seed must not be negative')
	if args.workers is not None and args.workers < 0:
		raise UserError('--workers must not be negative')
	st = load_settings(args.config)
	model = None
	if st.model_load:
		try:
			model = load_model(st.model_load)
		except (IOError, ModelFormat) as e:
			raise UserError('Failed to load background model %s: %s' % (st.model_load, e,))
	scenarios = (args.scenario,) if args.scenario else st.experiment.scenarios
	os.makedirs(args.out, exist_ok=True)
	install_siginfo()

	if args.panorama and scenarios:
		job = next(trial_jobs(st, scenarios[:1], 2, args.seed))
		world = world_for(st, job, st.trial.seed if model else None)
		fn = join(args.out, 'panorama.ppm')
		write_ppm(world.texture, fn)
		print('Panorama written to', fn)

	with status('experiment in %s' % (args.out,)):
		report = run_experiment(st, args.out, scenarios, args.trials, args.seed, args.workers, args.verbose, model)
	print()
	print_report(report, st.sim.duration_s)
	print()
	print('Report written to', join(args.out, 'report.csv'))
	return 0
