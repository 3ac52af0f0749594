"""Compare the numba kernels with the pure-numpy fallback.

Each backend runs in its own interpreter because the choice is made at
import time from DUSTCLEAR_NO_NUMBA.

    python benchmarks/bench_backends.py [--sizes 512x384,1024x768] [--repeats 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from dustclear import BACKEND
from dustclear import kernels
from dustclear.contrast import clahe
from dustclear.imagecore import luma, to_planes
from dustclear.iqa import visible_edges
from dustclear.pipeline import enhance
from dustclear.scenes import make_scene

sizes, repeats = json.loads(sys.argv[1]), int(sys.argv[2])

def best(fn):
    fn()  # warm-up / JIT
    out = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        out = min(out, time.perf_counter() - t0)
    return out * 1e3

rows = []
for h, w in sizes:
    raster = make_scene(h, w, seed=0)
    rgb = to_planes(raster)
    plane = np.ascontiguousarray(luma(rgb))
    rows.append({
        "size": f"{w}x{h}",
        "box_mean r=60": best(lambda: kernels.box_mean_kernel(plane, 60)),
        "window_min r=7": best(lambda: kernels.window_min_kernel(plane, 7)),
        "clahe 8x8": best(lambda: clahe(plane)),
        "visible_edges": best(lambda: visible_edges(rgb)),
        "full pipeline": best(lambda: enhance(raster)),
    })
print(json.dumps({"backend": BACKEND, "rows": rows}))
"""


def run(backend, sizes, repeats):
    env = dict(os.environ)
    env.pop("DUSTCLEAR_NO_NUMBA", None)
    if backend == "numpy":
        env["DUSTCLEAR_NO_NUMBA"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", WORKER, json.dumps(sizes), str(repeats)],
        env=env, check=True, capture_output=True, text=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", default="512x384,1024x768,2048x1536")
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()
    sizes = [tuple(reversed([int(v) for v in s.split("x")])) for s in args.sizes.split(",")]

    results = {b: run(b, sizes, args.repeats) for b in ("numba", "numpy")}
    if results["numba"]["backend"] != "numba":
        print("numba is not importable; only the numpy backend was measured\n")

    ops = [k for k in results["numpy"]["rows"][0] if k != "size"]
    print(f"{'size':>10} {'operation':>16} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    print("-" * 58)
    for nb, np_ in zip(results["numba"]["rows"], results["numpy"]["rows"]):
        for op in ops:
            print(f"{nb['size']:>10} {op:>16} {nb[op]:>10.1f} {np_[op]:>10.1f} {np_[op] / nb[op]:>7.2f}x")
        print()


if __name__ == "__main__":
    main()
