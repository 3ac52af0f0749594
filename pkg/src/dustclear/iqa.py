"""No-reference restoration scores computed from visible edges.

``e``      relative gain in visible-edge count, restored vs original
``r_bar``  geometric mean of gradient ratios at the restored visible edges
``sigma``  fraction of pixels that became fully black or fully white
"""
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

import numpy as np

from . import kernels
from .imagecore import luma, to_raster

CONTRAST_THRESHOLD = 0.05
MIN_DOMINATED = 6
GRAD_GUARD = 1e-6


class UndefinedMetricError(ValueError):
    """A metric's denominator is empty (no visible edges to compare)."""


@dataclass
class EdgeMap:
    visible: np.ndarray
    grad: np.ndarray

    @property
    def count(self):
        return int(np.count_nonzero(self.visible))


@dataclass
class QualityReport:
    e: Optional[float] = None
    r_bar: Optional[float] = None
    sigma: float = 0.0
    n_o: int = 0
    n_r: int = 0
    n_s: int = 0
    guard_hits: int = 0
    timings_ms: Dict[str, float] = field(default_factory=dict)
    errors: List[str] = field(default_factory=list)
    # stage name -> Raster8, filled only when intermediates are requested
    intermediates: Dict[str, object] = field(default_factory=dict, repr=False)

    def to_dict(self):
        d = asdict(self)
        del d["intermediates"]
        return d


def visible_edges(rgb):
    lum = np.ascontiguousarray(luma(rgb), dtype=np.float64)
    grad = kernels.sobel_magnitude(lum)
    visible = kernels.visible_mask(lum, grad, CONTRAST_THRESHOLD, MIN_DOMINATED)
    return EdgeMap(visible=visible, grad=grad)


def rate_e(orig, restored):
    n_o, n_r = orig.count, restored.count
    if n_o == 0:
        raise UndefinedMetricError("e undefined: original has no visible edges")
    return (n_r - n_o) / n_o


def _edge_ratios(g_orig, restored_edges):
    mask = restored_edges.visible
    if not mask.any():
        raise UndefinedMetricError("r_bar undefined: restored image has no visible edges")
    denom = g_orig[mask]
    guarded = int(np.count_nonzero(denom < GRAD_GUARD))
    return restored_edges.grad[mask] / np.maximum(denom, GRAD_GUARD), guarded


def rate_rbar(orig, restored, restored_edges=None):
    """Geometric mean of restored/original gradient at restored visible edges."""
    if restored_edges is None:
        restored_edges = visible_edges(restored)
    ratios, _ = _edge_ratios(visible_edges(orig).grad, restored_edges)
    return float(np.exp(np.mean(np.log(ratios))))


def _saturated(raster):
    d = raster.data
    return np.all(d == 0, axis=2) | np.all(d == 255, axis=2)


def saturated_count(orig, restored):
    if orig.shape != restored.shape:
        raise ValueError("image dimensions differ")
    newly = _saturated(to_raster(restored)) & ~_saturated(to_raster(orig))
    return int(np.count_nonzero(newly))


def rate_sigma(orig, restored):
    h, w = restored.shape[:2]
    return saturated_count(orig, restored) / (h * w)


def assess(orig, restored, timings=None):
    """Score a pair; undefined metrics are left as None with a note in ``errors``."""
    if orig.shape != restored.shape:
        raise ValueError("image dimensions differ")
    rep = QualityReport(timings_ms=dict(timings or {}))
    e_orig = visible_edges(orig)
    e_rest = visible_edges(restored)
    rep.n_o, rep.n_r = e_orig.count, e_rest.count
    try:
        rep.e = rate_e(e_orig, e_rest)
    except UndefinedMetricError as exc:
        rep.errors.append(str(exc))
    try:
        ratios, rep.guard_hits = _edge_ratios(e_orig.grad, e_rest)
        rep.r_bar = float(np.exp(np.mean(np.log(ratios))))
    except UndefinedMetricError as exc:
        rep.errors.append(str(exc))
    rep.n_s = saturated_count(orig, restored)
    h, w = orig.shape[:2]
    rep.sigma = rep.n_s / (h * w)
    return rep
