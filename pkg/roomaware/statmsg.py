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

# Use it like this:
#
# with status("some text") as update:
#   long running code here
#
# and send the process SIGUSR1 (or press ^T where there is SIGINFO) to
# see how long it has been doing that part. If you want to change the
# status text (without resetting the time) you can call the update
# function with the new text.
#
# The harness wraps every trial and every warmup in a status, so a
# stuck experiment shows which seed and frame each worker is on.

from __future__ import print_function
from __future__ import division

from contextlib import contextmanager
from threading import Lock
import signal
import os

from roomaware.compat import monotonic


_status_stack = []
_status_lock = Lock()

@contextmanager
def status(msg):
	assert msg and isinstance(msg, str) and '\0' not in msg
	entry = [msg, monotonic()]
	with _status_lock:
		_status_stack.append(entry)
		ix = len(_status_stack) - 1
	def update(msg):
		assert msg and isinstance(msg, str)
		entry[0] = msg
	try:
		yield update
	finally:
		with _status_lock:
			if _status_stack and _status_stack[-1] is entry:
				_status_stack.pop()
			else:
				print('POP OF WRONG STATUS: %d:%s (index %d of %d)' % (os.getpid(), msg, ix, len(_status_stack)))
				if entry in _status_stack:
					_status_stack.remove(entry)

def status_stack_export():
	with _status_lock:
		return [(os.getpid(), indent, msg, t) for indent, (msg, t) in enumerate(_status_stack)]

def print_status_stacks(stacks=None):
	if stacks is None:
		stacks = status_stack_export()
	report_t = monotonic()
	for pid, indent, msg, t in stacks:
		print("%6d STATUS: %s%s (%.1f seconds)" % (pid, "    " * indent, msg, report_t - t))

def siginfo(sig, frame):
	print_status_stacks()

def install_siginfo():
	"""Print the status stack on SIGUSR1 (and SIGINFO if the OS has it).
	The shell and every pool worker call this (forkserver workers do not
	inherit handlers), so signalling the process group shows all of them."""
	names = ['SIGUSR1', 'SIGINFO']
	for name in names:
		sig = getattr(signal, name, None)
		if sig is not None:
			signal.signal(sig, siginfo)
			signal.siginterrupt(sig, False)
