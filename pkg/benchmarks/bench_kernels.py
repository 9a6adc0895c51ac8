"""Time the compiled kernels against their pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat 3] [--scale 1.0]

Prints one row per kernel with the best-of-``repeat`` wall time of each
backend and the speedup.  Both backends get identical inputs and produce
identical outputs (checked before timing).
"""
import argparse
import time

import numpy as np

from rstre import decompose, sample_disorder
from rstre._backend import get_kernels


def cases(scale):
    n = max(64, int(20000 * scale))
    s = sample_disorder(n, 5.0, seed=1)
    d = decompose(s)
    light = sample_disorder(max(64, int(2000 * scale)), -1.0, seed=2)
    lp, li = light.adjacency
    k = d.num_components
    runs = max(10, int(2000 * scale))
    return {
        "wilson_two_valued": lambda kr: kr.wilson_two_valued(light.n, lp, li, 1.0, 3, 1, 10**9),
        "assemble_contracted": lambda kr: kr.assemble_contracted(
            n, d.labels, d.sizes, d.offsets, d.members, d.indptr, d.indices, d.excess, 4, 10**9),
        "aldous_broder_contracted": lambda kr: kr.aldous_broder_contracted(
            n, d.labels, d.sizes, d.offsets, d.members, 0, 5, 10**8),
        "component_diameters": lambda kr: kr.component_diameters(
            d.indptr, d.indices, d.offsets, d.members, d.excess, 4096),
        "first_repeat_times": lambda kr: kr.first_repeat_times(d.labels, k, runs, k + 1, 6),
        "bp_heights": lambda kr: kr.bp_heights(10000, runs, 2000, 7),
        "exploration_trials": lambda kr: kr.exploration_trials(n, 1 / n, runs, 8),
        "domination_trials": lambda kr: kr.domination_trials(n, 1 / n, runs, 500, 9),
    }


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--scale", type=float, default=1.0, help="multiplies problem sizes")
    args = ap.parse_args(argv)
    py, cy = get_kernels("python"), get_kernels("cython")
    print(f"{'kernel':<26}{'cython s':>12}{'python s':>12}{'speedup':>10}")
    for name, fn in cases(args.scale).items():
        if not _same(fn(cy), fn(py)):
            raise SystemExit(f"{name}: backends disagree")
        tc = best_time(lambda: fn(cy), args.repeat)
        tp = best_time(lambda: fn(py), args.repeat)
        print(f"{name:<26}{tc:>12.4f}{tp:>12.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
