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

class RoomAwareError(Exception):
	"""Base class for all roomaware exception types"""
	pass

class UserError(RoomAwareError):
	"""Raised when the user (of a shell command or config file) did something wrong"""
	pass

class EmptyTileSample(RoomAwareError):
	"""A histogram was requested from zero pixels (the caller should skip the tile)"""
	pass

class UnseenTile(RoomAwareError):
	"""Comparison against a background tile that has never been trained"""
	pass

class ModelFormat(RoomAwareError):
	"""A background model snapshot is malformed, truncated or of an unknown version"""
	pass

class DegenerateWeights(RoomAwareError):
	"""Every particle weight is zero, resampling is impossible"""
	pass

class PurgeWouldEmpty(RoomAwareError):
	"""Every self-localization particle lies in the reflected region"""
	pass

class TrialError(RoomAwareError):
	def __init__(self, scenario, seed, msg):
		RoomAwareError.__init__(self, "Trial %s seed %d failed" % (scenario, seed,))
		self.scenario = scenario
		self.seed = seed
		self.msg = msg

	def format_msg(self):
		res = ["%s (seed %d):" % (self.scenario, self.seed,)]
		res.append("    %s" % (self.msg.replace("\n", "\n    "),))
		return "\n".join(res)

	def __reduce__(self):
		return TrialError, (self.scenario, self.seed, self.msg,)
