"""Three-stage enhancement (cast -> dehaze -> CLAHE), degradation and batches."""
import csv
import io
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from .colorcast import YuvPlanes, correct_cast, rgb_to_yuv, yuv_to_rgb
from .contrast import ClaheParams, enhance_contrast
from .dehaze import DehazeParams, dehaze
from .imagecore import to_planes, to_raster
from .iqa import QualityReport, assess
from .ppm import read_image, supported_suffixes, write_image

log = logging.getLogger(__name__)

STAGES = ("cast", "dehaze", "clahe")
METRIC_COLUMNS = ("e", "r_bar", "sigma", "n_o", "n_r", "n_s")


@dataclass(frozen=True)
class PipelineConfig:
    dehaze: DehazeParams = field(default_factory=DehazeParams)
    clahe: ClaheParams = field(default_factory=ClaheParams)
    skip_cast: bool = False
    skip_dehaze: bool = False
    skip_clahe: bool = False
    emit_intermediates: bool = False

    def __post_init__(self):
        if self.skip_cast and self.skip_dehaze and self.skip_clahe:
            raise ValueError("at least one pipeline stage must be enabled")


@dataclass(frozen=True)
class DegradationParams:
    t: float = 0.6
    airlight: Tuple[float, float, float] = (0.9, 0.8, 0.55)
    u_shift: float = 0.0
    v_shift: float = 0.0
    noise: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.t <= 1.0:
            raise ValueError(f"t must lie in [0, 1], got {self.t}")
        if len(self.airlight) != 3 or not all(0.0 < a <= 1.0 for a in self.airlight):
            raise ValueError(f"airlight components must lie in (0, 1], got {self.airlight}")
        if self.noise < 0:
            raise ValueError("noise must be >= 0")


def run_stages(rgb, cfg):
    """Run the enabled stages on a float image.

    Returns the final image, a ``{stage: image}`` dict of intermediates and
    per-stage timings in milliseconds (``total`` spans the stage section).
    """
    steps = (
        ("cast", cfg.skip_cast, correct_cast),
        ("dehaze", cfg.skip_dehaze, lambda x: dehaze(x, cfg.dehaze)),
        ("clahe", cfg.skip_clahe, lambda x: enhance_contrast(x, cfg.clahe)),
    )
    timings = {}
    stages = {}
    t_start = time.perf_counter()
    for name, skip, fn in steps:
        t0 = time.perf_counter()
        if not skip:
            rgb = fn(rgb)
            stages[name] = rgb
        timings[name] = (time.perf_counter() - t0) * 1e3
    timings["total"] = (time.perf_counter() - t_start) * 1e3
    return rgb, stages, timings


def enhance(img, cfg=None):
    """Enhance a Raster8; returns ``(output, report)``.

    With ``cfg.emit_intermediates`` set, ``report.intermediates`` maps each
    executed stage to its Raster8 output.
    """
    cfg = cfg or PipelineConfig()
    src = to_planes(img)
    out, stages, timings = run_stages(src, cfg)
    result = to_raster(out)
    report = assess(src, to_planes(result), timings)
    if cfg.emit_intermediates:
        report.intermediates = {name: to_raster(x) for name, x in stages.items()}
    return result, report


def synth_degrade(clean, p, seed=None):
    """Forward haze model ``I = J*t + A*(1-t)`` followed by a chroma offset."""
    j = to_planes(clean)
    a = np.asarray(p.airlight, dtype=np.float64)
    out = j * p.t + a * (1.0 - p.t)
    if p.u_shift or p.v_shift:
        y, u, v = rgb_to_yuv(out)
        out = yuv_to_rgb(YuvPlanes(y, u + p.u_shift, v + p.v_shift))
    if p.noise > 0:
        rng = np.random.default_rng(seed)
        out = out + rng.normal(0.0, p.noise, out.shape)
    return to_raster(out)


# ------------------------------------------------------------------ batch


@dataclass
class BatchResult:
    rows: list
    mean: dict
    failures: int

    def to_json(self):
        return json.dumps({"images": self.rows, "mean": self.mean}, indent=2, sort_keys=False) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        cols = ["name", *METRIC_COLUMNS, *(f"timings_ms.{s}" for s in (*STAGES, "total")), "errors"]
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for row in [*self.rows, {"name": "mean", **self.mean}]:
            timings = row.get("timings_ms") or {}
            writer.writerow(
                [row.get("name")]
                + [_csv_value(row.get(c)) for c in METRIC_COLUMNS]
                + [_csv_value(timings.get(s)) for s in (*STAGES, "total")]
                + ["; ".join(row.get("errors", []))]
            )
        return buf.getvalue()

    def write(self, path):
        path = Path(path)
        text = self.to_csv() if path.suffix.lower() == ".csv" else self.to_json()
        path.write_text(text)


def _csv_value(v):
    if v is None:
        return ""
    return repr(v) if isinstance(v, float) else str(v)


def report_row(name, report, timings=True):
    row = {"name": name}
    for c in METRIC_COLUMNS:
        row[c] = getattr(report, c)
    row["guard_hits"] = report.guard_hits
    if timings:
        row["timings_ms"] = dict(report.timings_ms)
    row["errors"] = list(report.errors)
    return row


def _mean_row(rows, timings):
    mean = {}
    for c in METRIC_COLUMNS:
        vals = [r[c] for r in rows if r.get(c) is not None]
        mean[c] = float(np.mean(vals)) if vals else None
    if timings:
        keys = (*STAGES, "total")
        mean["timings_ms"] = {
            k: float(np.mean([r["timings_ms"][k] for r in rows if "timings_ms" in r])) if rows else None
            for k in keys
        }
    mean["count"] = len(rows)
    return mean


def _process_one(path, out_dir, cfg, timings):
    try:
        img = read_image(path)
    except (OSError, ValueError) as exc:
        log.warning("skipping %s: %s", path.name, exc)
        return {"name": path.name, "errors": [f"read failed: {exc}"]}, False
    result, report = enhance(img, cfg)
    write_image(out_dir / path.name, result)
    if cfg.emit_intermediates:
        inter = out_dir / "intermediates"
        inter.mkdir(exist_ok=True)
        for stage, raster in report.intermediates.items():
            write_image(inter / f"{path.stem}.{stage}{path.suffix}", raster)
    return report_row(path.name, report, timings), True


def run_batch(input_dir, output_dir, cfg=None, jobs=1, report_path=None, timings=True):
    """Enhance every supported image in ``input_dir``.

    Rows come back sorted by filename whatever ``jobs`` is. Unreadable files
    produce an error row instead of aborting the batch. ``timings=False``
    drops the wall-clock columns so reports compare byte-for-byte.
    """
    cfg = cfg or PipelineConfig()
    input_dir, output_dir = Path(input_dir), Path(output_dir)
    if not input_dir.is_dir():
        raise FileNotFoundError(f"input directory not found: {input_dir}")
    suffixes = supported_suffixes()
    paths = sorted(p for p in input_dir.iterdir() if p.is_file() and p.suffix.lower() in suffixes)
    if not paths:
        raise FileNotFoundError(f"no input images in {input_dir}")
    output_dir.mkdir(parents=True, exist_ok=True)

    if jobs <= 1:
        results = [_process_one(p, output_dir, cfg, timings) for p in paths]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda p: _process_one(p, output_dir, cfg, timings), paths))

    rows = [r for r, _ in results]
    failures = sum(1 for _, ok in results if not ok)
    ok_rows = [r for r, ok in results if ok]
    batch = BatchResult(rows=rows, mean=_mean_row(ok_rows, timings), failures=failures)
    if report_path is not None:
        batch.write(report_path)
    return batch
