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
Colour handling for background tiles.

Pixels are converted to YCrCb (full range BT.601) and binned by chroma
only: the centered Cr and Cb values are each split by sign and three
thresholds c1 < c2 < c3 into eight intervals, and the two marginals are
concatenated into a 16 bin histogram (Cr in slots 0-7, Cb in 8-15).
Luma is ignored, which keeps the descriptor cheap and somewhat robust
against illumination.
'''

from collections import namedtuple

import numpy as np

from roomaware.error import EmptyTileSample, UnseenTile

BIN_COUNT = 16
CHANNEL_BINS = 8
CB_OFFSET = 8

PixelRGB = namedtuple('PixelRGB', 'r g b')
PixelYCrCb = namedtuple('PixelYCrCb', 'y cr cb')


class BinningConfig(namedtuple('BinningConfig', 'c1 c2 c3')):
	__slots__ = ()

	def __new__(cls, c1=16, c2=32, c3=64):
		assert 0 < c1 < c2 < c3 <= 128, "Need 0 < c1 < c2 < c3 <= 128, got %r" % ((c1, c2, c3,),)
		return super(BinningConfig, cls).__new__(cls, int(c1), int(c2), int(c3))

	bin_count = BIN_COUNT

	@property
	def edges(self):
		return np.array([-self.c3, -self.c2, -self.c1, 0, self.c1, self.c2, self.c3])


class ColourHistogram(object):
	"""Normalized chroma histogram, bins sum to 1."""

	__slots__ = ('bins',)

	def __init__(self, bins):
		self.bins = np.asarray(bins, dtype=np.float64)
		assert self.bins.shape == (BIN_COUNT,), self.bins.shape

	def __eq__(self, other):
		return isinstance(other, ColourHistogram) and np.array_equal(self.bins, other.bins)

	def __ne__(self, other):
		return not self == other

	def __repr__(self):
		return 'ColourHistogram(%s)' % (', '.join('%.4g' % (v,) for v in self.bins),)


class ColourHistogramModel(object):
	"""Per-tile model: moving average (mean) and variance of every bin.
	update_weight is the N of the moving average, kept for provenance."""

	__slots__ = ('mean', 'variance', 'seen', 'update_weight',)

	def __init__(self, mean=None, variance=None, seen=False, update_weight=20):
		self.mean = np.zeros(BIN_COUNT) if mean is None else np.array(mean, dtype=np.float64)
		self.variance = np.zeros(BIN_COUNT) if variance is None else np.array(variance, dtype=np.float64)
		self.seen = bool(seen)
		self.update_weight = int(update_weight)

	@classmethod
	def from_histogram(cls, h, update_weight=20):
		return cls(h.bins, None, True, update_weight)

	def __eq__(self, other):
		return (
			isinstance(other, ColourHistogramModel) and
			self.seen == other.seen and
			self.update_weight == other.update_weight and
			np.array_equal(self.mean, other.mean) and
			np.array_equal(self.variance, other.variance)
		)

	def __ne__(self, other):
		return not self == other


def rgb_to_ycrcb_array(rgb):
	"""(..., 3) array of r, g, b -> (..., 3) int array of y, cr, cb."""
	rgb = np.asarray(rgb, dtype=np.float64)
	r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
	y = 0.299 * r + 0.587 * g + 0.114 * b
	cr = 128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b
	cb = 128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b
	res = np.floor(np.stack([y, cr, cb], axis=-1) + 0.5)
	return np.clip(res, 0, 255).astype(np.int64)

def ycrcb_to_rgb_array(ycrcb):
	"""Inverse of rgb_to_ycrcb_array (up to rounding), for dumping textures."""
	ycrcb = np.asarray(ycrcb, dtype=np.float64)
	y, cr, cb = ycrcb[..., 0], ycrcb[..., 1] - 128.0, ycrcb[..., 2] - 128.0
	r = y + 1.402 * cr
	g = y - 0.344136 * cb - 0.714136 * cr
	b = y + 1.772 * cb
	res = np.floor(np.stack([r, g, b], axis=-1) + 0.5)
	return np.clip(res, 0, 255).astype(np.uint8)

def rgb_to_ycrcb(p):
	y, cr, cb = rgb_to_ycrcb_array([p.r, p.g, p.b]).tolist()
	return PixelYCrCb(y, cr, cb)


def _chroma_slots(cr, cb, cfg):
	edges = cfg.edges
	cr_bin = np.searchsorted(edges, np.asarray(cr) - 128, side='right')
	cb_bin = np.searchsorted(edges, np.asarray(cb) - 128, side='right')
	return cr_bin, cb_bin

def bin_index(p, cfg):
	"""(cr_bin, cb_bin), each in 0..7. The cb bin lives at slot cb_bin + 8
	of the concatenated histogram."""
	cr_bin, cb_bin = _chroma_slots(p.cr, p.cb, cfg)
	return int(cr_bin), int(cb_bin)

def _as_sample_array(samples):
	if isinstance(samples, np.ndarray):
		arr = samples
	else:
		arr = np.array([(p.y, p.cr, p.cb) for p in samples], dtype=np.int64)
	if arr.size == 0:
		raise EmptyTileSample("No pixels to build a histogram from")
	return arr.reshape(-1, 3)

def build_histogram(samples, cfg):
	"""Histogram of a list of PixelYCrCb (or an (n, 3) y/cr/cb array).
	Every pixel adds one count to a Cr slot and one to a Cb slot, so the
	normalization is by 2 * n."""
	arr = _as_sample_array(samples)
	cr_bin, cb_bin = _chroma_slots(arr[:, 1], arr[:, 2], cfg)
	counts = np.concatenate([
		np.bincount(cr_bin, minlength=CHANNEL_BINS),
		np.bincount(cb_bin, minlength=CHANNEL_BINS),
	]).astype(np.float64)
	return ColourHistogram(counts / (2 * len(arr)))


def similarity_matrix(perceived, means, variances, sigma0):
	"""Variance weighted histogram intersection of every perceived histogram
	(rows of a (T, 16) array) against every model tile (rows of (M, 16)
	mean and variance arrays). Returns (T, M), all values in [0, 1].

	Unstable bins (high variance) count for less, sigma0 keeps the weights
	finite for bins that never varied.
	"""
	assert sigma0 > 0
	p = np.asarray(perceived, dtype=np.float64)[:, None, :]
	m = np.asarray(means, dtype=np.float64)[None, :, :]
	w = 1.0 / (np.asarray(variances, dtype=np.float64)[None, :, :] + sigma0)
	num = (w * np.minimum(p, m)).sum(axis=-1)
	den = (w * ((p + m) / 2)).sum(axis=-1)
	with np.errstate(invalid='ignore', divide='ignore'):
		res = np.where(den > 0, num / den, 0.0)
	return np.clip(res, 0.0, 1.0)

def similarity(perceived, model, sigma0=1e-3):
	if not model.seen:
		raise UnseenTile("Model tile has never been seen")
	return float(similarity_matrix(perceived.bins[None, :], model.mean[None, :], model.variance[None, :], sigma0)[0, 0])
