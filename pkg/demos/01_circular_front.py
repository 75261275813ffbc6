#!/usr/bin/env python3
"""A circular front at constant speed, checked against its exact solution.

The simplest field there is: speed 1 everywhere and a single circular source
of radius 3, so the true travel time at any point is exactly its signed
distance to the circle rim. That makes this the calibration example: every
solver should reproduce the same field to solver tolerance, and halving the
grid spacing should halve the error against the exact distance (first-order
convergence of the upwind discretization).
"""
from __future__ import annotations

import numpy as np

from eikonal import analytic_example1, field_max_diff, make_example, run_method, solve_fixpoint

from _plotting import note_plot, save_field_plot


def exact_field(grid):
    xs = grid.origin[0] + grid.dx * np.arange(grid.nx)
    ys = grid.origin[1] + grid.dy * np.arange(grid.ny)
    return np.array([[analytic_example1((x, y), (0.0, 0.0), 3.0) for x in xs] for y in ys])


def main() -> None:
    print(__doc__)

    print("All four methods against the iterated fixpoint reference (64^2):")
    grid, bc = make_example(1, 64)
    reference = solve_fixpoint(grid, bc)
    for method in ("fmm", "fsm", "fim", "ifim"):
        g, b = make_example(1, 64)
        result = run_method(method, g, b)
        diff = field_max_diff(result.phi, reference.phi)
        print(f"  {method:>4}: max |phi - reference| = {diff:.3e}, "
              f"solver calls = {result.stats.solver_calls}")

    print("\nDiscretization error of fast marching vs the exact signed distance:")
    previous = None
    for n in (64, 128, 256):
        g, b = make_example(1, n)
        result = run_method("fmm", g, b)
        err = float(np.max(np.abs(result.phi - exact_field(g))))
        note = "" if previous is None else f"  (order {np.log2(previous / err):.2f})"
        print(f"  {n:>3}^2: Linf error = {err:.4e}{note}")
        previous = err

    grid, bc = make_example(1, 128)
    run_method("fmm", grid, bc)
    note_plot(save_field_plot("01_circular_front.png", grid,
                              "Travel time from a radius-3 circle, speed 1"))


if __name__ == "__main__":
    main()
