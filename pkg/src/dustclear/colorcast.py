"""Stage 1: remove the global color cast by zero-meaning the YUV chroma."""
from typing import NamedTuple

import numpy as np


class YuvPlanes(NamedTuple):
    y: np.ndarray
    u: np.ndarray
    v: np.ndarray


def rgb_to_yuv(rgb):
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    y = 0.299 * r + 0.587 * g + 0.114 * b
    u = -0.168736 * r - 0.331264 * g + 0.5 * b
    v = 0.5 * r - 0.418688 * g - 0.081312 * b
    return YuvPlanes(y, u, v)


def yuv_to_rgb(yuv, clamp=True):
    """Inverse conversion with the published (slightly inexact) coefficients.

    Round-tripping through :func:`rgb_to_yuv` is accurate to about 0.002 per
    channel, not exact.
    """
    y, u, v = yuv
    out = np.empty(y.shape + (3,), dtype=np.float64)
    out[..., 0] = y + 1.402 * v
    out[..., 1] = y - 0.3456 * u - 0.7145 * v
    out[..., 2] = y + 1.7710 * u
    if clamp:
        np.clip(out, 0.0, 1.0, out=out)
    return out


def correct_chroma(yuv):
    """Subtract the image-wide mean from U and V; Y is passed through as is."""
    y, u, v = yuv
    return YuvPlanes(y, u - np.mean(u), v - np.mean(v))


def correct_cast(rgb):
    return yuv_to_rgb(correct_chroma(rgb_to_yuv(rgb)))
