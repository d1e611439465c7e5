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

import sys
from os.path import basename
from argparse import RawDescriptionHelpFormatter

from roomaware.compat import ArgumentParser
from roomaware.error import UserError, TrialError


def load_settings(config_fn):
	"""Typed settings from config_fn, or the defaults without one."""
	from roomaware.configfile import load_config, default_config, settings
	if config_fn:
		try:
			cfg = load_config(config_fn)
		except IOError as e:
			raise UserError('Failed to read config %s: %s' % (config_fn, e.strerror,))
	else:
		cfg = default_config()
	return settings(cfg)

def cmd_run(argv):
	from roomaware.shell.run import main
	return main(argv)
cmd_run.help = '''run seeded trials and write a report'''

def cmd_train(argv):
	from roomaware.shell.train import main
	return main(argv)
cmd_train.help = '''train a background model and save it'''

def cmd_replay(argv):
	from roomaware.shell.replay import main
	return main(argv)
cmd_replay.help = '''recompute confidences and commands from a trial log'''

def cmd_tests(argv):
	from roomaware.test_methods.build_tests import main
	return main(argv)
cmd_tests.help = '''run the test suite'''

def cmd_version(argv):
	from roomaware import __version__ as ra_version
	if len(argv) > 1:
		if argv[1:] in (['-h'], ['--help']):
			print('Usage:', argv[0])
			return 0
		else:
			print('Usage:', argv[0], file=sys.stderr)
			return 1
	else:
		print(ra_version)
cmd_version.help = '''show installed roomaware version'''

COMMANDS = {
	'replay': cmd_replay,
	'run': cmd_run,
	'tests': cmd_tests,
	'train': cmd_train,
	'version': cmd_version,
}

def main():
	import multiprocessing
	if hasattr(multiprocessing, 'set_forkserver_preload'):
		# trial workers start from the forkserver, have it import the pipeline once
		multiprocessing.set_forkserver_preload(['roomaware', 'roomaware.harness'])

	from roomaware import g
	g.running = 'shell'

	if hasattr(sys.stdout, 'reconfigure'):
		sys.stdout.reconfigure(line_buffering=True)

	argv = sys.argv[1:]
	epilog = ['commands:', '']
	cmdlen = max(len(cmd) for cmd in COMMANDS)
	template = '  %%%ds  %%s' % (cmdlen,)
	for cmd, func in sorted(COMMANDS.items()):
		epilog.append(template % (cmd, func.help,))
	epilog.append('')
	epilog.append('use %(prog)s <command> --help for <command> usage')
	parser = ArgumentParser(
		usage='%(prog)s command [args]',
		epilog='\n'.join(epilog),
		formatter_class=RawDescriptionHelpFormatter,
	)
	parser.add_argument('--version', action='store_true', help='alias for the version command')
	main_argv = []
	while argv and argv[0].startswith('-'):
		main_argv.append(argv.pop(0))
	args = parser.parse_args(main_argv)
	if args.version:
		sys.exit(cmd_version(()))
	args.command = argv.pop(0) if argv else None
	if args.command not in COMMANDS:
		parser.print_help(file=sys.stderr)
		print(file=sys.stderr)
		if args.command is not None:
			print('Unknown command "%s"' % (args.command,), file=sys.stderr)
		sys.exit(2)
	cmd = COMMANDS[args.command]
	try:
		argv.insert(0, '%s %s' % (basename(sys.argv[0]), args.command,))
		return cmd(argv)
	except UserError as e:
		print(e, file=sys.stderr)
		return 1
	except TrialError as e:
		print(e, file=sys.stderr)
		print(e.format_msg(), file=sys.stderr)
		return 1
