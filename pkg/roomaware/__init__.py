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

__all__ = []

def get_version():
	import os.path
	try:
		dn = os.path.dirname(__file__)
		fn = os.path.join(dn, 'version.txt')
		with open(fn, 'r') as fh:
			return next(fh).strip()
	except Exception:
		return None
__version__ = get_version()
del get_version

from .error import RoomAwareError, UserError, EmptyTileSample, UnseenTile
from .error import ModelFormat, DegenerateWeights, PurgeWouldEmpty, TrialError
__all__.extend(('RoomAwareError', 'UserError', 'EmptyTileSample', 'UnseenTile',))
__all__.extend(('ModelFormat', 'DegenerateWeights', 'PurgeWouldEmpty', 'TrialError',))
from .extras import DotDict
__all__.extend(('DotDict',))
from .colour import BinningConfig, ColourHistogram, build_histogram, similarity
from .geometry import CylinderParams, CameraModel, ViewPose, TileId, make_tile_grid, visible_tiles
from .background_model import BackgroundModel, save_model, load_model
from .orientation_filter import OrientationFilterConfig, OrientationFilter
from .confidence import ConfidencePair, ConfidenceHistory, pose_confidences
from .controller import ControllerConfig, Controller, decide
from .selfloc import Pose2D, FieldMap, SelfLocConfig, mcl_step, flip_pose, purge_reflection, reset_orientation, best_pose
__all__.extend(('BinningConfig', 'ColourHistogram', 'build_histogram', 'similarity',))
__all__.extend(('CylinderParams', 'CameraModel', 'ViewPose', 'TileId', 'make_tile_grid', 'visible_tiles',))
__all__.extend(('BackgroundModel', 'save_model', 'load_model',))
__all__.extend(('OrientationFilterConfig', 'OrientationFilter',))
__all__.extend(('ConfidencePair', 'ConfidenceHistory', 'pose_confidences',))
__all__.extend(('ControllerConfig', 'Controller', 'decide',))
__all__.extend(('Pose2D', 'FieldMap', 'SelfLocConfig', 'mcl_step', 'flip_pose', 'purge_reflection', 'reset_orientation', 'best_pose',))
