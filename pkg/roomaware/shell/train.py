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

from roomaware.compat import ArgumentParser
from roomaware.error import UserError


def main(argv):
	from roomaware.background_model import BackgroundModel, save_model
	from roomaware.harness import TrialJob, warm_up, world_for
	from roomaware.shell import load_settings

	parser = ArgumentParser(
		prog=argv.pop(0),
		description='Train a background model on the trial.seed world (body turning\nonce around at the head-only start position and its reflection) and save it.',
	)
	parser.add_argument('--config', metavar='FILE', help='configuration file (defaults without)')
	parser.add_argument('--out', metavar='FILE', required=True, help='model file to write (.bgm)')
	parser.add_argument('--seconds', type=float, default=None, help='training time (default trial.warmup_s)')
	args = parser.parse_args(argv)

	st = load_settings(args.config)
	seconds = st.trial.warmup_s if args.seconds is None else args.seconds
	if seconds <= 0:
		raise UserError('--seconds must be positive')
	seed = st.trial.seed
	world = world_for(st, TrialJob('head-only', 0, seed, seed, 'correct', 0))
	model = warm_up(world, st, seconds, BackgroundModel(world.grid, st.n_param))
	save_model(model, args.out)
	print('Trained %d of %d tiles with %d updates, saved to %s' % (model.seen_count(), len(world.grid), model.version, args.out,))
	return 0
