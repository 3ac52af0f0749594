"""``dustclear`` command line entry point.

Exit codes: 0 success, 1 fatal I/O or configuration error, 2 batch finished
with per-image failures.
"""
import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .contrast import ClaheParams
from .dehaze import DehazeParams
from .imagecore import to_planes
from .iqa import assess
from .pipeline import (
    BatchResult,
    DegradationParams,
    PipelineConfig,
    enhance,
    report_row,
    run_batch,
    synth_degrade,
)
from .ppm import read_image, write_image

log = logging.getLogger("dustclear")

EXIT_OK, EXIT_FATAL, EXIT_PARTIAL = 0, 1, 2


def _tiles(text):
    try:
        nx, ny = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NxM, got {text!r}")
    return nx, ny


def _clip(text):
    if text.lower() in ("none", "inf", "off"):
        return None
    return float(text)


def _triple(text):
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        vals = ()
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"expected R,G,B, got {text!r}")
    return vals


def _add_pipeline_flags(p):
    d = DehazeParams()
    c = ClaheParams()
    p.add_argument("--skip-cast", action="store_true")
    p.add_argument("--skip-dehaze", action="store_true")
    p.add_argument("--skip-clahe", action="store_true")
    p.add_argument("--patch", type=int, default=d.patch, help="dark-channel window edge (odd)")
    p.add_argument("--omega", type=float, default=d.omega)
    p.add_argument("--t-floor", type=float, default=d.t_floor)
    p.add_argument("--gf-radius", type=int, default=d.gf_radius)
    p.add_argument("--gf-eps", type=float, default=d.gf_eps)
    p.add_argument("--tiles", type=_tiles, default=(c.tiles_x, c.tiles_y), help="CLAHE tiles as NxM")
    p.add_argument("--clip", type=_clip, default=c.clip_limit, help="CLAHE clip limit, or 'none'")


def _config(args, emit=False):
    return PipelineConfig(
        dehaze=DehazeParams(
            patch=args.patch,
            omega=args.omega,
            t_floor=args.t_floor,
            gf_radius=args.gf_radius,
            gf_eps=args.gf_eps,
        ),
        clahe=ClaheParams(tiles_x=args.tiles[0], tiles_y=args.tiles[1], clip_limit=args.clip),
        skip_cast=args.skip_cast,
        skip_dehaze=args.skip_dehaze,
        skip_clahe=args.skip_clahe,
        emit_intermediates=emit,
    )


def cmd_enhance(args):
    cfg = _config(args, emit=args.emit_intermediates is not None)
    src = Path(args.input)
    result, report = enhance(read_image(src), cfg)
    write_image(args.output, result)
    if args.emit_intermediates is not None:
        inter = Path(args.emit_intermediates)
        inter.mkdir(parents=True, exist_ok=True)
        for stage, raster in report.intermediates.items():
            write_image(inter / f"{src.stem}.{stage}{Path(args.output).suffix}", raster)
    row = report_row(src.name, report)
    if args.report:
        BatchResult(rows=[row], mean=dict(row, count=1), failures=0).write(args.report)
    log.info("e=%s r_bar=%s sigma=%.4f total=%.1f ms", row["e"], row["r_bar"], row["sigma"], row["timings_ms"]["total"])
    return EXIT_OK


def cmd_batch(args):
    batch = run_batch(
        args.input_dir,
        args.output_dir,
        _config(args, emit=args.emit_intermediates),
        jobs=args.jobs,
        report_path=args.report,
        timings=not args.no_timings,
    )
    log.info("processed %d images, %d failures", len(batch.rows), batch.failures)
    return EXIT_PARTIAL if batch.failures else EXIT_OK


def cmd_assess(args):
    orig = to_planes(read_image(args.orig))
    restored = to_planes(read_image(args.restored))
    report = assess(orig, restored)
    row = report_row(Path(args.restored).name, report, timings=False)
    text = json.dumps(row, indent=2) + "\n"
    if args.report:
        Path(args.report).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_degrade(args):
    params = DegradationParams(
        t=args.t, airlight=args.airlight, u_shift=args.u_shift, v_shift=args.v_shift, noise=args.noise
    )
    write_image(args.output, synth_degrade(read_image(args.input), params, seed=args.seed))
    return EXIT_OK


def cmd_histogram(args):
    data = read_image(args.input).data
    counts = [np.bincount(data[..., c].ravel(), minlength=256) for c in range(3)]
    lines = ["level,r,g,b"] + [f"{i},{counts[0][i]},{counts[1][i]},{counts[2][i]}" for i in range(256)]
    Path(args.out).write_text("\n".join(lines) + "\n")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="dustclear", description="Sand-dust image enhancement.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enhance", help="enhance one image")
    p.add_argument("input")
    p.add_argument("output")
    _add_pipeline_flags(p)
    p.add_argument("--report", help="write a JSON report")
    p.add_argument("--emit-intermediates", metavar="DIR", help="save each stage's output here")
    p.set_defaults(func=cmd_enhance)

    p = sub.add_parser("batch", help="enhance every image in a directory")
    p.add_argument("input_dir")
    p.add_argument("output_dir")
    _add_pipeline_flags(p)
    p.add_argument("--report", help="report path (.csv or .json)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--emit-intermediates", action="store_true", help="save stage outputs under OUT/intermediates")
    p.add_argument("--no-timings", action="store_true", help="omit wall-clock columns (reproducible reports)")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("assess", help="score a restored image against its original")
    p.add_argument("orig")
    p.add_argument("restored")
    p.add_argument("--report")
    p.set_defaults(func=cmd_assess)

    p = sub.add_parser("degrade", help="synthesize a sand-dust image from a clean one")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--t", type=float, required=True, help="scalar transmission")
    p.add_argument("--airlight", type=_triple, required=True, help="R,G,B in (0,1]")
    p.add_argument("--u-shift", type=float, default=0.0)
    p.add_argument("--v-shift", type=float, default=0.0)
    p.add_argument("--noise", type=float, default=0.0, help="gaussian noise sigma")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_degrade)

    p = sub.add_parser("histogram", help="dump per-channel 256-bin histograms as CSV")
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_histogram)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"dustclear: error: {exc}", file=sys.stderr)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
