#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Run after building the extension:

    python3 benchmarks/bench_kernels.py

The same comparisons can be forced through the fallback end to end with
MOVEWIN_FORCE_PYTHON=1 (the solver then runs entirely on NumPy kernels).
"""

import time

import numpy as np

from movewin import _kernels_py
from movewin.backend import USING_COMPILED, kernels


def timeit(fn, *args, repeat=7, **kw):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args, **kw)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_step_combine(n):
    rng = np.random.default_rng(0)
    u = rng.normal(size=n) + 1j * rng.normal(size=n)
    w = rng.normal(size=n) + 1j * rng.normal(size=n)
    es = np.exp(1j * rng.normal(size=n))
    ps = rng.normal(size=n) + 1j * rng.normal(size=n)
    return (timeit(_kernels_py.step_combine, u, w, es, ps, 0.01),
            timeit(kernels.step_combine, u, w, es, ps, 0.01))


def bench_bump(n):
    rng = np.random.default_rng(1)
    z = rng.uniform(-1.5, 1.5, n)
    return (timeit(_kernels_py.bump_profile, z),
            timeit(kernels.bump_profile, z))


def bench_ramp(n):
    rng = np.random.default_rng(2)
    y = rng.uniform(-0.5, 1.5, n)
    return (timeit(_kernels_py.ramp_profile, y),
            timeit(kernels.ramp_profile, y))


def bench_trig_eval(modes, points):
    rng = np.random.default_rng(3)
    c = rng.normal(size=modes) + 1j * rng.normal(size=modes)
    theta = rng.uniform(-np.pi, np.pi, points)
    return (timeit(_kernels_py.trig_eval, c, theta, repeat=3),
            timeit(kernels.trig_eval, c, theta, repeat=3))


def main():
    if not USING_COMPILED:
        print("compiled extension not active: both columns run the fallback")
    rows = [
        ("step_combine n=8193", *bench_step_combine(8193)),
        ("step_combine n=1050625 (2-D)", *bench_step_combine(1025 ** 2)),
        ("bump_profile n=1e6", *bench_bump(1_000_000)),
        ("ramp_profile n=1e6", *bench_ramp(1_000_000)),
        ("trig_eval 4097 modes x 16385 pts", *bench_trig_eval(4097, 16385)),
    ]
    print(f"{'kernel':36s} {'numpy':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, t_py, t_cy in rows:
        print(f"{name:36s} {t_py * 1e3:9.2f}ms {t_cy * 1e3:9.2f}ms "
              f"{t_py / t_cy:7.2f}x")


if __name__ == "__main__":
    main()
