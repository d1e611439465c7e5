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


def print_trace(objs):
	"""Tab separated confidence trace, one line per frame."""
	print('\t'.join(('t', 'current', 'reflected', 'smoothed_current', 'smoothed_reflected', 'command',)))
	for o in objs:
		if o.type == 'frame':
			print('\t'.join(['%.1f' % (o.t,)] + ['%.4f' % (v,) for v in o.confidence + o.smoothed] + [o.command or '']))

def main(argv):
	from roomaware.triallog import read_log, replay

	parser = ArgumentParser(
		prog=argv.pop(0),
		description='Feed a logged trial back through confidence smoothing and the\nbehaviour controller (and the raw confidences, if particles were\nlogged) and report frames that do not match the log.',
	)
	parser.add_argument('--log', metavar='FILE', required=True, help='trial log (.jsonl)')
	parser.add_argument('--trace', action='store_true', help='print the confidence trace')
	args = parser.parse_args(argv)

	objs = read_log(args.log)
	header = objs[0]
	if args.trace:
		print_trace(objs)
	frames, mismatches = replay(objs)
	commands = [(o.frame, o.command) for o in objs if o.type == 'frame' and o.command]
	print('%s seed %d, %s init, side %d: %d frames, %d commands%s' % (
		header.scenario, header.seed, header.init, header.side, frames, len(commands),
		'' if header.verbose else ' (no particles logged, raw confidences not checked)',
	))
	for frame, kind in commands:
		print('  %6.1fs  %s' % (frame / header.frame_rate, kind,))
	if objs[-1].type == 'outcome':
		o = objs[-1]
		print('Outcome: %s, %s.' % (o.classification, 'correct' if o.correct_after_signal else 'incorrect',))
	if mismatches:
		for frame, what, logged, again in mismatches[:20]:
			print('MISMATCH frame %d %s: logged %r, recomputed %r' % (frame, what, logged, again,))
		if len(mismatches) > 20:
			print('... and %d more' % (len(mismatches) - 20,))
		return 1
	print('No mismatches.')
	return 0
