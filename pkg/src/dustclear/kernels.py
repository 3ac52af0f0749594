"""Hot pixel loops, each with a numba kernel and a vectorized numpy twin.

The public names at the bottom of the module dispatch on
:data:`dustclear._accel.HAVE_NUMBA`. Both variants stay importable so the
test suite and the benchmark can compare them directly.

All windows shrink at the image border; nothing is padded with invented
pixel values (the +inf padding in ``window_min_numpy`` never wins a min).
"""
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ._accel import HAVE_NUMBA, njit

# ---------------------------------------------------------------- box mean


@njit
def box_mean_numba(src, radius):
    h, w = src.shape
    tmp = np.empty((h, w), dtype=np.float64)
    out = np.empty((h, w), dtype=np.float64)
    for y in range(h):
        s = 0.0
        for x in range(min(radius, w - 1) + 1):
            s += src[y, x]
        for x in range(w):
            lo = max(x - radius, 0)
            hi = min(x + radius, w - 1)
            tmp[y, x] = s / (hi - lo + 1)
            if x + radius + 1 < w:
                s += src[y, x + radius + 1]
            if x - radius >= 0:
                s -= src[y, x - radius]
    colsum = np.zeros(w, dtype=np.float64)
    for y in range(min(radius, h - 1) + 1):
        for x in range(w):
            colsum[x] += tmp[y, x]
    for y in range(h):
        lo = max(y - radius, 0)
        hi = min(y + radius, h - 1)
        n = hi - lo + 1
        for x in range(w):
            out[y, x] = colsum[x] / n
        if y + radius + 1 < h:
            for x in range(w):
                colsum[x] += tmp[y + radius + 1, x]
        if y - radius >= 0:
            for x in range(w):
                colsum[x] -= tmp[y - radius, x]
    return out


def _box_mean_axis(a, radius, axis):
    n = a.shape[axis]
    csum = np.cumsum(a, axis=axis)
    zero_shape = list(a.shape)
    zero_shape[axis] = 1
    csum = np.concatenate([np.zeros(zero_shape), csum], axis=axis)
    idx = np.arange(n)
    lo = np.maximum(idx - radius, 0)
    hi = np.minimum(idx + radius, n - 1)
    count = (hi - lo + 1).astype(np.float64)
    if axis == 0:
        return (csum[hi + 1] - csum[lo]) / count[:, None]
    return (csum[:, hi + 1] - csum[:, lo]) / count[None, :]


def box_mean_numpy(src, radius):
    return _box_mean_axis(_box_mean_axis(src, radius, 1), radius, 0)


# -------------------------------------------------------------- window min


@njit
def window_min_numba(src, radius):
    h, w = src.shape
    tmp = np.empty((h, w), dtype=np.float64)
    out = np.empty((h, w), dtype=np.float64)
    for y in range(h):
        for x in range(w):
            m = src[y, x]
            for k in range(max(x - radius, 0), min(x + radius, w - 1) + 1):
                if src[y, k] < m:
                    m = src[y, k]
            tmp[y, x] = m
    for y in range(h):
        lo = max(y - radius, 0)
        hi = min(y + radius, h - 1)
        for x in range(w):
            out[y, x] = tmp[y, x]
        for k in range(lo, hi + 1):
            for x in range(w):
                if tmp[k, x] < out[y, x]:
                    out[y, x] = tmp[k, x]
    return out


def window_min_numpy(src, radius):
    if radius == 0:
        return src.astype(np.float64, copy=True)
    k = 2 * radius + 1
    padded = np.pad(src, ((0, 0), (radius, radius)), constant_values=np.inf)
    tmp = sliding_window_view(padded, k, axis=1).min(axis=-1)
    padded = np.pad(tmp, ((radius, radius), (0, 0)), constant_values=np.inf)
    return sliding_window_view(padded, k, axis=0).min(axis=-1)


# ------------------------------------------------------------------ CLAHE


@njit
def tile_histograms_numba(bin_idx, row_tile, col_tile, tiles_y, tiles_x, bins):
    h, w = bin_idx.shape
    hist = np.zeros((tiles_y, tiles_x, bins), dtype=np.float64)
    for y in range(h):
        ty = row_tile[y]
        for x in range(w):
            hist[ty, col_tile[x], bin_idx[y, x]] += 1.0
    return hist


def tile_histograms_numpy(bin_idx, row_tile, col_tile, tiles_y, tiles_x, bins):
    flat = (row_tile[:, None] * tiles_x + col_tile[None, :]) * bins + bin_idx
    counts = np.bincount(flat.ravel(), minlength=tiles_y * tiles_x * bins)
    return counts.astype(np.float64).reshape(tiles_y, tiles_x, bins)


# lerp form (a + f * (b - a)) keeps the blend of equal mappings exact
@njit
def interpolate_tiles_numba(bin_idx, maps, r0, r1, wy, c0, c1, wx):
    h, w = bin_idx.shape
    out = np.empty((h, w), dtype=np.float64)
    for y in range(h):
        a0 = r0[y]
        a1 = r1[y]
        fy = wy[y]
        for x in range(w):
            b = bin_idx[y, x]
            fx = wx[x]
            m00 = maps[a0, c0[x], b]
            m10 = maps[a1, c0[x], b]
            top = m00 + fx * (maps[a0, c1[x], b] - m00)
            bot = m10 + fx * (maps[a1, c1[x], b] - m10)
            out[y, x] = top + fy * (bot - top)
    return out


def interpolate_tiles_numpy(bin_idx, maps, r0, r1, wy, c0, c1, wx):
    b = bin_idx
    R0, R1 = r0[:, None], r1[:, None]
    C0, C1 = c0[None, :], c1[None, :]
    fx = wx[None, :]
    fy = wy[:, None]
    m00 = maps[R0, C0, b]
    m10 = maps[R1, C0, b]
    top = m00 + fx * (maps[R0, C1, b] - m00)
    bot = m10 + fx * (maps[R1, C1, b] - m10)
    return top + fy * (bot - top)


# ------------------------------------------------------------ visible edges


@njit
def sobel_magnitude_numba(lum):
    h, w = lum.shape
    g = np.zeros((h, w), dtype=np.float64)
    for y in range(1, h - 1):
        for x in range(1, w - 1):
            gx = (lum[y - 1, x + 1] + 2.0 * lum[y, x + 1] + lum[y + 1, x + 1]) - (
                lum[y - 1, x - 1] + 2.0 * lum[y, x - 1] + lum[y + 1, x - 1]
            )
            gy = (lum[y + 1, x - 1] + 2.0 * lum[y + 1, x] + lum[y + 1, x + 1]) - (
                lum[y - 1, x - 1] + 2.0 * lum[y - 1, x] + lum[y - 1, x + 1]
            )
            g[y, x] = np.sqrt(gx * gx + gy * gy)
    return g


def sobel_magnitude_numpy(lum):
    h, w = lum.shape
    g = np.zeros((h, w), dtype=np.float64)
    if h < 3 or w < 3:
        return g
    c = lum
    gx = (c[:-2, 2:] + 2.0 * c[1:-1, 2:] + c[2:, 2:]) - (c[:-2, :-2] + 2.0 * c[1:-1, :-2] + c[2:, :-2])
    gy = (c[2:, :-2] + 2.0 * c[2:, 1:-1] + c[2:, 2:]) - (c[:-2, :-2] + 2.0 * c[:-2, 1:-1] + c[:-2, 2:])
    g[1:-1, 1:-1] = np.sqrt(gx * gx + gy * gy)
    return g


@njit
def visible_mask_numba(lum, grad, threshold, min_dominated):
    h, w = lum.shape
    vis = np.zeros((h, w), dtype=np.bool_)
    for y in range(1, h - 1):
        for x in range(1, w - 1):
            g = grad[y, x]
            if g <= 0.0:
                continue
            lmax = lum[y, x]
            lmin = lum[y, x]
            gmax = 0.0
            below = 0
            for dy in range(-1, 2):
                for dx in range(-1, 2):
                    v = lum[y + dy, x + dx]
                    if v > lmax:
                        lmax = v
                    if v < lmin:
                        lmin = v
                    if dy == 0 and dx == 0:
                        continue
                    n = grad[y + dy, x + dx]
                    if n > gmax:
                        gmax = n
                    if n < g:
                        below += 1
            denom = max(lmax + lmin, 1e-6)
            if (lmax - lmin) / denom <= threshold:
                continue
            if below >= min_dominated or g >= gmax:
                vis[y, x] = True
    return vis


_OFFSETS = [(dy, dx) for dy in (-1, 0, 1) for dx in (-1, 0, 1) if (dy, dx) != (0, 0)]


def visible_mask_numpy(lum, grad, threshold, min_dominated):
    h, w = lum.shape
    vis = np.zeros((h, w), dtype=bool)
    if h < 3 or w < 3:
        return vis
    g = grad[1:-1, 1:-1]
    lmax = lum[1:-1, 1:-1].copy()
    lmin = lmax.copy()
    gmax = np.zeros_like(g)
    below = np.zeros(g.shape, dtype=np.int64)
    for dy, dx in _OFFSETS:
        sl = (slice(1 + dy, h - 1 + dy), slice(1 + dx, w - 1 + dx))
        np.maximum(lmax, lum[sl], out=lmax)
        np.minimum(lmin, lum[sl], out=lmin)
        np.maximum(gmax, grad[sl], out=gmax)
        below += grad[sl] < g
    contrast = (lmax - lmin) / np.maximum(lmax + lmin, 1e-6)
    vis[1:-1, 1:-1] = (g > 0.0) & (contrast > threshold) & ((below >= min_dominated) | (g >= gmax))
    return vis


# --------------------------------------------------------------- dispatch

if HAVE_NUMBA:
    box_mean_kernel = box_mean_numba
    window_min_kernel = window_min_numba
    tile_histograms = tile_histograms_numba
    interpolate_tiles = interpolate_tiles_numba
    sobel_magnitude = sobel_magnitude_numba
    visible_mask = visible_mask_numba
else:
    box_mean_kernel = box_mean_numpy
    window_min_kernel = window_min_numpy
    tile_histograms = tile_histograms_numpy
    interpolate_tiles = interpolate_tiles_numpy
    sobel_magnitude = sobel_magnitude_numpy
    visible_mask = visible_mask_numpy
