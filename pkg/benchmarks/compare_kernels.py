"""Benchmark the compiled kernel core against the NumPy fallback.

Runs the three hot kernels on a realistic workload, checks that both
backends agree, and prints a timing table.

Usage: python benchmarks/compare_kernels.py [--grid N] [--repeat R]
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from cooperlight._kernels import pure
from cooperlight.lattice import make_grid

try:
    from cooperlight._kernels import _native as native
except ImportError:
    native = None


def timed(fn, repeat):
    best = math.inf
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid", type=int, default=256)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if native is None:
        print("compiled extension not available; nothing to compare")
        return 1

    grid = make_grid(args.grid)
    kx, ky = grid.kx, grid.ky
    mesh = np.linspace(-5.0, 5.0, 1024)
    node_tol = 1e-9 * 0.2

    cases = [
        (
            "helical_energies",
            lambda b: b.helical_energies(kx, ky, 1.0, 0.0, 0.5, 0.3, 1),
        ),
        (
            "smeared_dos",
            lambda b: b.smeared_dos(
                b.helical_energies(kx, ky, 1.0, 0.0, 0.5, 0.3, 1), mesh, 0.02
            ),
        ),
        (
            "purity_sum",
            lambda b: b.purity_sum(kx, ky, 3, 0.5, 0.2, 0.0, 1.0, 0.0, node_tol),
        ),
        (
            "emission_sums",
            lambda b: b.emission_sums(
                kx, ky, 1, 1.0, 0.0, 0.5, 0.0, 3, 0.5, 0.2, 0.0,
                1.0, 0.0, 0.0, 0.0, 0.01, 0.05, 1.0, node_tol,
            ),
        ),
    ]

    print(f"grid {args.grid}x{args.grid}, best of {args.repeat}")
    print(f"{'kernel':<18}{'native [ms]':>12}{'pure [ms]':>12}{'speedup':>9}")
    for name, call in cases:
        t_nat, v_nat = timed(lambda: call(native), args.repeat)
        t_pure, v_pure = timed(lambda: call(pure), args.repeat)
        close = np.allclose(
            np.asarray(v_nat, dtype=float), np.asarray(v_pure, dtype=float),
            rtol=1e-10, atol=1e-12,
        )
        flag = "" if close else "  !! MISMATCH"
        print(
            f"{name:<18}{t_nat * 1e3:>12.2f}{t_pure * 1e3:>12.2f}"
            f"{t_pure / t_nat:>9.1f}x{flag}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
