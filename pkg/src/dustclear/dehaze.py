"""Stage 2: dark-channel-prior haze removal with guided-filter refinement.

The haze model is ``I = J * t + A * (1 - t)``. The estimate adapts to each
image only through its own atmospheric light; every other knob lives in
:class:`DehazeParams`.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .imagecore import box_mean, luma

A_FLOOR = 0.05
BRIGHTEST_FRACTION = 0.001


@dataclass(frozen=True)
class DehazeParams:
    patch: int = 15
    omega: float = 0.95
    t_floor: float = 0.1
    gf_radius: int = 60
    gf_eps: float = 1e-3

    def __post_init__(self):
        if self.patch < 1 or self.patch % 2 == 0:
            raise ValueError(f"patch must be a positive odd integer, got {self.patch}")
        if not 0.0 <= self.omega <= 1.0:
            raise ValueError(f"omega must lie in [0, 1], got {self.omega}")
        if not 0.0 < self.t_floor < 1.0:
            raise ValueError(f"t_floor must lie in (0, 1), got {self.t_floor}")
        if self.gf_radius < 0:
            raise ValueError(f"gf_radius must be >= 0, got {self.gf_radius}")
        if not self.gf_eps > 0.0:
            raise ValueError(f"gf_eps must be > 0, got {self.gf_eps}")


@dataclass(frozen=True)
class AtmosphericLight:
    a_r: float
    a_g: float
    a_b: float

    def as_array(self):
        return np.array([self.a_r, self.a_g, self.a_b], dtype=np.float64)


def dark_channel(rgb, patch):
    if patch < 1 or patch % 2 == 0:
        raise ValueError(f"patch must be a positive odd integer, got {patch}")
    per_pixel = np.ascontiguousarray(np.min(rgb, axis=2), dtype=np.float64)
    if patch == 1:
        return per_pixel
    return kernels.window_min_kernel(per_pixel, patch // 2)


def estimate_atmospheric_light(rgb, dark):
    """Brightest pixel (by R+G+B) among the top 0.1% dark-channel values.

    Ties are broken by row-major order, and each component is floored at
    ``A_FLOOR`` so later divisions stay bounded.
    """
    if dark.shape != rgb.shape[:2]:
        raise ValueError("dark channel and image dimensions differ")
    flat_dark = dark.ravel()
    n = flat_dark.size
    k = max(1, int(n * BRIGHTEST_FRACTION))
    # same set as a stable descending sort cut at k, without the full sort
    kth = np.partition(flat_dark, n - k)[n - k]
    above = np.flatnonzero(flat_dark > kth)
    ties = np.flatnonzero(flat_dark == kth)[: k - above.size]
    cand = np.concatenate([above, ties])
    pixels = rgb.reshape(-1, 3)
    score = pixels[cand].sum(axis=1)
    winner = cand[score == score.max()].min()
    a = np.maximum(pixels[winner], A_FLOOR)
    return AtmosphericLight(float(a[0]), float(a[1]), float(a[2]))


def estimate_transmission(rgb, a, params):
    normalized = rgb / a.as_array()
    t = 1.0 - params.omega * dark_channel(normalized, params.patch)
    return np.maximum(t, params.t_floor)


def guided_filter(guide, src, radius, eps):
    """Edge-preserving smoothing of ``src`` steered by ``guide``."""
    if guide.shape != src.shape:
        raise ValueError("guide and src dimensions differ")
    if not eps > 0:
        raise ValueError("eps must be > 0")
    mean_i = box_mean(guide, radius)
    mean_p = box_mean(src, radius)
    cov_ip = box_mean(guide * src, radius) - mean_i * mean_p
    var_i = box_mean(guide * guide, radius) - mean_i * mean_i
    a = cov_ip / (var_i + eps)
    b = mean_p - a * mean_i
    return box_mean(a, radius) * guide + box_mean(b, radius)


def recover_radiance(rgb, t, a, t_floor, clamp=True):
    av = a.as_array()
    t = np.maximum(t, t_floor)[..., None]
    out = (rgb - av) / t + av
    if clamp:
        np.clip(out, 0.0, 1.0, out=out)
    return out


def dehaze(rgb, params=None):
    params = params or DehazeParams()
    dark = dark_channel(rgb, params.patch)
    a = estimate_atmospheric_light(rgb, dark)
    t = estimate_transmission(rgb, a, params)
    refined = guided_filter(luma(rgb), t, params.gf_radius, params.gf_eps)
    refined = np.clip(refined, params.t_floor, 1.0)
    return recover_radiance(rgb, refined, a, params.t_floor)
