#!/usr/bin/env python3
"""Two circular sources: the field is the pointwise first arrival.

Two circles of different radii seed the field, and each grid point takes
the travel time of whichever front reaches it first. Along the ridge where
the two arrival times tie, characteristics collide; upwinding handles that
without any special casing, and all methods still agree to solver tolerance.
This is also the workhorse field for the determinism check, because the
collision ridge is where a sloppy parallel reduction would first diverge.
"""
from __future__ import annotations

import numpy as np

from eikonal import field_max_diff, make_example, run_method, solve_fixpoint

from _plotting import note_plot, save_field_plot


def main() -> None:
    print(__doc__)

    n = 128
    grid, bc = make_example(2, n)
    reference = solve_fixpoint(grid, bc)
    print(f"Methods vs the fixpoint reference ({n}^2, two sources):")
    for method in ("fmm", "fsm", "fim", "ifim"):
        g, b = make_example(2, n)
        result = run_method(method, g, b)
        print(f"  {method:>4}: max diff = {field_max_diff(result.phi, reference.phi):.3e}, "
              f"iterations = {result.stats.iterations}")

    # The equidistant ridge: points whose arrival differs the least between
    # running with only one of the two sources.
    g_big, b_big = make_example(2, n)
    run_method("fmm", g_big, b_big)
    from eikonal import new_grid, seed_circle, solve_fmm

    d = 20.0 / (n - 1)
    lone = new_grid(n, n, d, d, origin=(-10.0, -10.0), speed=1.0)
    only_big = solve_fmm(lone, seed_circle(lone, (2.0, -5.0), 3.0)).phi
    lone2 = new_grid(n, n, d, d, origin=(-10.0, -10.0), speed=1.0)
    only_small = solve_fmm(lone2, seed_circle(lone2, (-2.0, 5.0), 1.5)).phi

    diff = np.abs(g_big.phi - np.minimum(only_big, only_small))
    ridge_band = np.abs(only_big - only_small) < 3.0 * d
    print(f"\nMerged field vs pointwise min of the single-source fields:")
    print(f"  away from the tie ridge: max diff = {float(diff[~ridge_band].max()):.3e}")
    print(f"  inside the ridge band ({int(ridge_band.sum())} cells): "
          f"max diff = {float(diff[ridge_band].max()):.3e} (~{float(diff[ridge_band].max()) / d:.2f} h)")
    print("  In the continuum the first arrival IS the pointwise min; on the grid")
    print("  the update smears the ridge kink over a cell, so the merged solve")
    print("  undercuts the min by O(h) there and only by discretization noise")
    print("  elsewhere.")

    note_plot(save_field_plot("02_two_sources.png", g_big,
                              "First arrival from two circular sources"))


if __name__ == "__main__":
    main()
