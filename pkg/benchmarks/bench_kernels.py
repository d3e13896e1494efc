#!/usr/bin/env python3
"""Benchmark the CYB and Jacobi kernels: numba vs numpy vs the exact Python path.

    python3 benchmarks/bench_kernels.py --types A3,D4,G2,F4 --repeat 5

Every backend is checked against the others before timing.
"""

import argparse
import statistics
import time

import numpy as np

from cybel import kernels
from cybel.chevalley import build_algebra
from cybel.rmatrix import build_dj
from cybel.tensor import bracket_arrays, cyb


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def bench_type(label, repeat, skip_python):
    alg = build_algebra(label[0], int(label[1:]))
    r = build_dj(alg, verify=False).tensor
    ptr, idx, val = bracket_arrays(alg)
    rows = []

    ref = cyb(r, backend="numpy")
    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    if kernels.HAVE_NUMBA:
        assert cyb(r, backend="numba") == ref
        kernels.jacobi_numba(ptr, idx, val, alg.dim)  # compile outside the timer
    if not skip_python:
        assert cyb(r, backend="python") == ref
        backends.append("python")
    for b in backends:
        best, med = best_of(lambda: cyb(r, backend=b), repeat)
        rows.append((label, "cyb", b, best, med))

    jac = {"numpy": kernels.jacobi_numpy}
    if kernels.HAVE_NUMBA:
        jac["numba"] = kernels.jacobi_numba
    for b, fn in jac.items():
        assert fn(ptr, idx, val, alg.dim) == (-1, -1, -1)
        best, med = best_of(lambda: fn(ptr, idx, val, alg.dim), repeat)
        rows.append((label, "jacobi", b, best, med))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--types", default="A3,B3,D4,G2,F4")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--skip-python", action="store_true", help="omit the slow exact path")
    args = parser.parse_args()

    print(f"numba available: {kernels.HAVE_NUMBA}; default backend: {kernels.BACKEND}; numpy {np.__version__}")
    print(f"{'type':<5} {'kernel':<7} {'backend':<8} {'best ms':>10} {'median ms':>10}")
    for label in args.types.split(","):
        for t, k, b, best, med in bench_type(label.strip(), args.repeat, args.skip_python):
            print(f"{t:<5} {k:<7} {b:<8} {best * 1e3:10.2f} {med * 1e3:10.2f}")


if __name__ == "__main__":
    main()
