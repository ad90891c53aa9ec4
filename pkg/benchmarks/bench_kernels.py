"""Benchmark the compiled sigma_min sweep against the numpy fallback.

Runs the same triangular resolvent-norm sweep through both backends over a
seeded workload and reports wall times, per-point costs, speedups, and the
largest relative disagreement.  Usage:

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --sizes 8,32,128 --grid 81 --repeats 5
"""

import argparse
import os
import time

import numpy as np
import scipy.linalg

from g1lab import kernels


def make_workload(n, grid, seed=2026):
    rng = np.random.default_rng(seed)
    m = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(n)
    t, _ = scipy.linalg.schur(m, output="complex")
    xs = np.linspace(-2.0, 2.0, grid)
    shifts = (xs[None, :] + 1j * xs[:, None]).ravel()
    return np.ascontiguousarray(t), shifts


def time_backend(name, t, shifts, repeats):
    os.environ["G1LAB_KERNEL"] = name
    best = np.inf
    out = None
    for _ in range(repeats):
        tic = time.perf_counter()
        out = kernels.sigma_min_sweep(t, shifts)
        best = min(best, time.perf_counter() - tic)
    return best, out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="8,16,32,64",
                        help="comma-separated matrix orders")
    parser.add_argument("--grid", type=int, default=101,
                        help="grid is grid x grid shift points")
    parser.add_argument("--repeats", type=int, default=3,
                        help="repeats per backend; best time is reported")
    args = parser.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"shift points per sweep: {args.grid * args.grid}")
    if not kernels.have_compiled():
        print("compiled extension not built; timing the python backend only")
    header = f"{'n':>5} {'python':>12} {'compiled':>12} {'speedup':>8} {'max rel diff':>13}"
    print(header)
    print("-" * len(header))
    saved = os.environ.get("G1LAB_KERNEL")
    try:
        for n in sizes:
            t, shifts = make_workload(n, args.grid)
            t_py, out_py = time_backend("python", t, shifts, args.repeats)
            us_py = 1e6 * t_py / len(shifts)
            if not kernels.have_compiled():
                print(f"{n:>5} {us_py:>10.2f}us {'-':>12} {'-':>8} {'-':>13}")
                continue
            t_cy, out_cy = time_backend("compiled", t, shifts, args.repeats)
            us_cy = 1e6 * t_cy / len(shifts)
            rel = np.abs(out_py - out_cy) / np.maximum(out_py, 1e-300)
            print(
                f"{n:>5} {us_py:>10.2f}us {us_cy:>10.2f}us "
                f"{t_py / t_cy:>7.2f}x {rel.max():>13.3e}"
            )
    finally:
        if saved is None:
            os.environ.pop("G1LAB_KERNEL", None)
        else:
            os.environ["G1LAB_KERNEL"] = saved


if __name__ == "__main__":
    main()
