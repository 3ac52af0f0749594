"""Deterministic synthetic clean scenes for tests, demos and benchmarks.

Scenes are mosaics of saturated, shaded color patches separated by thin
dark seams, so every neighbourhood contains a near-zero channel as real
haze-free outdoor imagery tends to.
"""
import numpy as np

from .imagecore import Raster8, to_raster


def make_scene(height, width, seed=0, cell=12, sky=None, sky_fraction=0.2):
    """Clean RGB mosaic; ``sky`` paints the top rows a flat color (e.g. the airlight)."""
    rng = np.random.default_rng(seed)
    ny = -(-height // cell)
    nx = -(-width // cell)
    # one color per cell with a clearly weakest channel
    base = rng.uniform(0.3, 0.8, size=(ny, nx, 3))
    weakest = rng.integers(0, 3, size=(ny, nx))
    np.put_along_axis(base, weakest[..., None], rng.uniform(0.05, 0.25, size=(ny, nx, 1)), axis=2)
    img = np.repeat(np.repeat(base, cell, axis=0), cell, axis=1)[:height, :width]

    yy, xx = np.mgrid[0:height, 0:width]
    shade = 0.75 + 0.25 * np.sin(xx / (7.0 + 5 * rng.random())) * np.cos(yy / (9.0 + 5 * rng.random()))
    img = img * shade[..., None]
    img = img + rng.normal(0.0, 0.015, img.shape)

    seams = (yy % cell < 2) | (xx % cell < 2)
    img[seams] *= 0.1
    if sky is not None:
        img[: int(round(height * sky_fraction))] = np.asarray(sky, dtype=np.float64)
    return to_raster(img)


def gray_ramp(height, width, lo=0.0, hi=1.0):
    ramp = np.linspace(lo, hi, width)
    plane = np.broadcast_to(ramp, (height, width))
    return Raster8(np.floor(np.repeat(plane[..., None], 3, axis=2) * 255 + 0.5).astype(np.uint8))
