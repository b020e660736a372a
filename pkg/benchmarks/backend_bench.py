#!/usr/bin/env python3
"""Compare the jit and pure-numpy kernel backends.

Times one full optimization pass per backend at several sizes, plus a whole
solver run on a mid-size instance, and verifies both backends produce
bit-identical positions while at it.

    python benchmarks/backend_bench.py [--sizes 50,100,200] [--repeats 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from forbid import kernels
from forbid.model import LayoutInstance
from forbid.sgd import ScheduleParams, run_pass
from forbid.solver import SolverConfig, solve
from forbid.stress import StressParams


def make_instance(seed: int, n: int) -> LayoutInstance:
    rng = np.random.default_rng(seed)
    span = 1.6 * np.sqrt(n)
    pos = rng.uniform(0.0, span, (n, 2))
    sizes = np.exp(rng.uniform(np.log(0.5), np.log(3.0), (n, 2)))
    return LayoutInstance([f"n{i}" for i in range(n)], pos, sizes)


def time_pass(backend: str, layout: LayoutInstance, repeats: int) -> tuple[float, np.ndarray]:
    kernels.set_backend(backend)
    params = StressParams()
    schedule = ScheduleParams(max_iterations=15)
    out = run_pass(layout, layout, params, schedule, seed=1)  # warm the jit cache
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = run_pass(layout, layout, params, schedule, seed=1)
        best = min(best, time.perf_counter() - t0)
    return best, out.positions


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="50,100,200,400")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if not kernels.numba_available():
        raise SystemExit("numba backend unavailable; nothing to compare")

    print(f"{'n':>6} {'numba (ms)':>12} {'numpy (ms)':>12} {'speedup':>9}  identical")
    for n in sizes:
        layout = make_instance(42, n)
        t_nb, pos_nb = time_pass("numba", layout, args.repeats)
        t_np, pos_np = time_pass("numpy", layout, args.repeats)
        same = np.array_equal(pos_nb, pos_np)
        print(
            f"{n:>6} {t_nb * 1e3:>12.2f} {t_np * 1e3:>12.2f} "
            f"{t_np / t_nb:>8.1f}x  {same}"
        )

    n = 150
    layout = make_instance(7, n)
    print(f"\nfull solve, n={n}:")
    for backend in ("numba", "numpy"):
        kernels.set_backend(backend)
        t0 = time.perf_counter()
        result = solve(layout, SolverConfig(seed=7))
        dt = time.perf_counter() - t0
        print(
            f"  {backend:>5}: {dt * 1e3:8.1f} ms "
            f"(passes={result.passes}, final_scale={result.final_scale:.3f})"
        )
    kernels.set_backend("auto")


if __name__ == "__main__":
    main()
