"""Stage 3: CLAHE on the luma channel."""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .colorcast import YuvPlanes, rgb_to_yuv, yuv_to_rgb


@dataclass(frozen=True)
class ClaheParams:
    """``clip_limit`` is a multiple of the uniform bin height; None disables clipping."""

    tiles_x: int = 8
    tiles_y: int = 8
    clip_limit: Optional[float] = 2.0
    bins: int = 256

    def __post_init__(self):
        if self.tiles_x < 1 or self.tiles_y < 1:
            raise ValueError("tile counts must be positive")
        if self.bins < 2:
            raise ValueError("bins must be >= 2")
        if self.clip_limit is not None and not self.clip_limit >= 1.0:
            raise ValueError(f"clip_limit must be >= 1 or None, got {self.clip_limit}")

    @property
    def unbounded(self):
        return self.clip_limit is None or math.isinf(self.clip_limit)


def _partition(n, tiles):
    """Tile index per pixel and tile centers; the last tile takes the remainder."""
    tiles = min(tiles, n)
    size = n // tiles
    starts = np.arange(tiles) * size
    ends = np.append(starts[1:], n)
    tile_of = np.minimum(np.arange(n) // size, tiles - 1)
    centers = (starts + ends - 1) / 2.0
    return tiles, tile_of.astype(np.int64), centers


def _blend_weights(n, centers):
    """Indices of the two nearest tile centers and the weight of the second."""
    pos = np.arange(n, dtype=np.float64)
    last = len(centers) - 1
    i0 = np.clip(np.searchsorted(centers, pos, side="right") - 1, 0, last)
    i1 = np.minimum(i0 + 1, last)
    span = centers[i1] - centers[i0]
    w = np.where(span > 0, (pos - centers[i0]) / np.where(span > 0, span, 1.0), 0.0)
    w = np.clip(w, 0.0, 1.0)
    return i0.astype(np.int64), i1.astype(np.int64), w


def _bin_index(plane, bins):
    idx = np.floor(np.clip(plane, 0.0, 1.0) * bins).astype(np.int64)
    return np.minimum(idx, bins - 1)


def _mappings(hist, params):
    tile_pixels = hist.sum(axis=2, keepdims=True)
    if not params.unbounded:
        limit = params.clip_limit * tile_pixels / params.bins
        excess = np.maximum(hist - limit, 0.0).sum(axis=2, keepdims=True)
        hist = np.minimum(hist, limit) + excess / params.bins
    cdf = np.cumsum(hist, axis=2) / tile_pixels
    return np.minimum(cdf, 1.0)


def tile_mappings(plane, params=None):
    """Per-tile lookup tables, shape ``(tiles_y, tiles_x, bins)``."""
    params = params or ClaheParams()
    h, w = plane.shape
    ty, row_tile, _ = _partition(h, params.tiles_y)
    tx, col_tile, _ = _partition(w, params.tiles_x)
    bin_idx = _bin_index(plane, params.bins)
    hist = kernels.tile_histograms(bin_idx, row_tile, col_tile, ty, tx, params.bins)
    return _mappings(hist, params)


def clahe(plane, params=None):
    params = params or ClaheParams()
    plane = np.asarray(plane, dtype=np.float64)
    h, w = plane.shape
    ty, row_tile, row_centers = _partition(h, params.tiles_y)
    tx, col_tile, col_centers = _partition(w, params.tiles_x)
    bin_idx = _bin_index(plane, params.bins)
    hist = kernels.tile_histograms(bin_idx, row_tile, col_tile, ty, tx, params.bins)
    maps = _mappings(hist, params)
    r0, r1, wy = _blend_weights(h, row_centers)
    c0, c1, wx = _blend_weights(w, col_centers)
    out = kernels.interpolate_tiles(bin_idx, maps, r0, r1, wy, c0, c1, wx)
    return np.clip(out, 0.0, 1.0)


def enhance_contrast(rgb, params=None):
    y, u, v = rgb_to_yuv(rgb)
    y = clahe(np.clip(y, 0.0, 1.0), params)
    return yuv_to_rgb(YuvPlanes(y, u, v))
