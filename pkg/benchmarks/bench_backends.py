"""Benchmark the numba loop kernels against the pure-numpy fallback.

Times the hot primitives on both backends in-process, then a small
certification sweep end-to-end in subprocesses with SEMIRAD_BACKEND set.

Usage: python benchmarks/bench_backends.py [--quick]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from semirad import _kernel_numpy
from semirad import _kernel_source
from semirad.backend import BACKEND, HAVE_NUMBA


def timeit(fn, args, repeat):
    fn(*args)  # warm-up / jit compile
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        for _ in range(repeat):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / repeat)
    return best


def pencil_for(rng, m):
    mat = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    hr = np.ascontiguousarray((mat + mat.conj().T) / 2)
    hi = np.ascontiguousarray(1j * (mat - mat.conj().T) / 2)
    return hr, hi


def bench_kernels(quick):
    rng = np.random.default_rng(0)
    sizes = (2, 4, 8, 12)
    repeat = 50 if quick else 200
    print(f"{'kernel':28s} {'m':>3s} {'loops':>12s} {'numpy':>12s} {'speedup':>8s}")
    for m in sizes:
        hr, hi = pencil_for(rng, m)
        h = np.ascontiguousarray(hr + 0.3 * hi)
        rows = [
            ("lambda_max", (h,), _kernel_source.lambda_max, _kernel_numpy.lambda_max),
            (
                "eigh_herm",
                (h, 60),
                _kernel_source.eigh_herm,
                _kernel_numpy.eigh_herm,
            ),
            (
                "radius_pencil K=256",
                (hr, hi, 256, 3, 1e-12),
                _kernel_source.radius_pencil,
                _kernel_numpy.radius_pencil,
            ),
        ]
        for name, args, f_loops, f_numpy in rows:
            t1 = timeit(f_loops, args, repeat)
            t2 = timeit(f_numpy, args, repeat)
            print(
                f"{name:28s} {m:3d} {t1 * 1e6:10.1f}us {t2 * 1e6:10.1f}us "
                f"{t2 / t1:7.1f}x"
            )


def bench_sweep(quick):
    trials = "3" if quick else "10"
    cmd = [
        sys.executable, "-m", "semirad.cli", "certify",
        "--dims", "2,3,4", "--trials", trials, "--seed", "0",
    ]
    print(f"\nend-to-end: certify --dims 2,3,4 --trials {trials}")
    for backend in ("numba", "numpy"):
        if backend == "numba" and not HAVE_NUMBA:
            print("  numba backend unavailable, skipping")
            continue
        env = dict(os.environ, SEMIRAD_BACKEND=backend)
        # warm pass so jit compilation does not pollute the numba timing
        subprocess.run(cmd, env=env, capture_output=True, check=True)
        t0 = time.perf_counter()
        subprocess.run(cmd, env=env, capture_output=True, check=True)
        print(f"  {backend:6s} {time.perf_counter() - t0:8.2f}s")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="fewer repetitions")
    args = parser.parse_args()
    print(f"active backend: {BACKEND} (numba available: {HAVE_NUMBA})")
    if not HAVE_NUMBA:
        print("note: loop kernels run uncompiled without numba")
    bench_kernels(args.quick)
    bench_sweep(args.quick)


if __name__ == "__main__":
    main()
