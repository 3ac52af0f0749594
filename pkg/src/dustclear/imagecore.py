"""Image containers and the plane primitives the pipeline stages share.

Two representations are used throughout:

* :class:`Raster8` - interleaved 8-bit RGB, the I/O form.
* float64 numpy arrays - ``(H, W)`` planes and ``(H, W, 3)`` RGB images in
  ``[0, 1]``, the compute form.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels

LUMA_WEIGHTS = (0.299, 0.587, 0.114)


@dataclass(frozen=True, eq=False)
class Raster8:
    """Row-major interleaved RGB raster, one byte per sample.

    ``data`` has shape ``(height, width, 3)`` and dtype ``uint8``.
    """

    data: np.ndarray

    def __post_init__(self):
        data = np.ascontiguousarray(self.data, dtype=np.uint8)
        if data.ndim != 3 or data.shape[2] != 3:
            raise ValueError(f"raster must have shape (H, W, 3), got {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError("raster must be at least 1x1")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def width(self):
        return self.data.shape[1]

    @property
    def height(self):
        return self.data.shape[0]

    @classmethod
    def from_bytes(cls, width, height, payload):
        buf = np.frombuffer(payload, dtype=np.uint8)
        if buf.size != width * height * 3:
            raise ValueError(f"expected {width * height * 3} bytes, got {buf.size}")
        return cls(buf.reshape(height, width, 3))

    def tobytes(self):
        return self.data.tobytes()

    def __eq__(self, other):
        if not isinstance(other, Raster8):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(np.array_equal(self.data, other.data))


def to_planes(img):
    """Raster8 -> float64 ``(H, W, 3)`` array in [0, 1]."""
    return img.data.astype(np.float64) / 255.0


def to_raster(rgb):
    """Clamp to [0, 1], scale to 0..255 and round half away from zero."""
    scaled = np.clip(np.asarray(rgb, dtype=np.float64), 0.0, 1.0) * 255.0
    # values are non-negative, so half-away-from-zero is floor(x + 0.5)
    return Raster8(np.floor(scaled + 0.5).astype(np.uint8))


def luma(rgb):
    r, g, b = LUMA_WEIGHTS
    return r * rgb[..., 0] + g * rgb[..., 1] + b * rgb[..., 2]


def box_mean(src, radius):
    """Mean over the ``(2r+1)^2`` window around each pixel, shrunk at borders."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    src = np.ascontiguousarray(src, dtype=np.float64)
    if radius == 0:
        return src.copy()
    out = kernels.box_mean_kernel(src, int(radius))
    # running-sum cancellation can overshoot the input range by a few ulps
    return np.clip(out, src.min(), src.max())
