"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--radius 12] [--repeat 3]

Both backends are imported directly, so one process measures both.  The
end-to-end row runs the CLI cover pipeline in a subprocess, once with the
default backend and once with COXBUILD_PURE=1.
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from coxbuild import _kernels_py as py
from coxbuild.buildings import ProductBuilding, TreeBuilding
from coxbuild.window import Window

try:
    from coxbuild import _kernels as cy
except ImportError:
    cy = None


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def cases(radius):
    T = TreeBuilding(2)
    win = Window(T, radius)
    n = len(win)
    rng = np.random.default_rng(0)
    owner = np.full(n, -1, dtype=np.int32)
    owner[rng.choice(n, 8, replace=False)] = np.arange(8, dtype=np.int32)
    mask = (win.depth % 3 != 0).astype(np.uint8)
    ch = win.chambers[:1500]
    enc = T.encode_arrays(ch)
    P = ProductBuilding(TreeBuilding(2), TreeBuilding(2))
    pts = Window(P, 6).chambers[:3000]
    (d1, d2), (i1, i2) = P._factor_index(pts)
    return n, {
        "bfs_distances": lambda k: k.bfs_distances(win.indptr, win.indices, np.array([0])),
        "label_components": lambda k: k.label_components(win.indptr, win.indices, mask),
        "voronoi_min": lambda k: k.voronoi_min(win.indptr, win.indices, owner),
        "tree_distance_block": lambda k: k.tree_distance_block(*enc, *enc),
        "pair_sum_max": lambda k: k.pair_sum_max(d1, d2, i1, i2, i1, i2),
    }


def end_to_end(pure: bool) -> float:
    env = dict(os.environ)
    env.pop("COXBUILD_PURE", None)
    if pure:
        env["COXBUILD_PURE"] = "1"
    args = [sys.executable, "-m", "coxbuild.cli", "cover", "--building", "tree", "--q", "2",
            "--radius", "13", "--d", "3"]
    t = time.perf_counter()
    subprocess.run(args, env=env, stdout=subprocess.DEVNULL, check=False)
    return time.perf_counter() - t


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radius", type=int, default=12, help="tree window radius for the graph kernels")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--no-end-to-end", action="store_true")
    args = ap.parse_args(argv)
    if cy is None:
        print("compiled extension not built; only the fallback can be timed")
    n, table = cases(args.radius)
    print(f"window: {n} chambers (tree q=2, radius {args.radius})")
    print(f"{'kernel':<22}{'cython s':>12}{'python s':>12}{'speedup':>10}")
    for name, fn in table.items():
        tp = best(lambda: fn(py), args.repeat)
        if cy is None:
            print(f"{name:<22}{'-':>12}{tp:>12.4f}{'-':>10}")
            continue
        tc = best(lambda: fn(cy), args.repeat)
        print(f"{name:<22}{tc:>12.4f}{tp:>12.4f}{tp / tc:>9.1f}x")
    if not args.no_end_to_end:
        tc, tp = end_to_end(False), end_to_end(True)
        print(f"{'cover (end to end)':<22}{tc:>12.2f}{tp:>12.2f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
