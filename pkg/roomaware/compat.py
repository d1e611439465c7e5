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

# process titles and argument parsing, the bits that vary between installs

from __future__ import print_function
from __future__ import division
from __future__ import unicode_literals

from argparse import ArgumentParser as _ArgumentParser
from time import monotonic

try:
	from setproctitle import setproctitle as _setproctitle, getproctitle
	# setproctitle init may be delayed until called (v1.2+) and should happen early
	getproctitle()
	del getproctitle
except ImportError:
	def _setproctitle(title): pass

__all__ = ('ArgumentParser', 'monotonic', 'setproctitle',)

# Worker processes get titles like "ra trial head-only #3" so they
# can be told apart in ps/top while an experiment runs.
def setproctitle(title):
	from roomaware import g
	if g.running and g.running != 'shell':
		title = 'ra %s %s' % (g.running, title,)
	else:
		title = 'ra ' + title
	_setproctitle(title)

# allow_abbrev=False so "--trial" is never taken to mean "--trials".
class ArgumentParser(_ArgumentParser):
	def __init__(self, *a, **kw):
		return _ArgumentParser.__init__(self, *a, allow_abbrev=False, **kw)
