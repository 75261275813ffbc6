"""Brute-force fixpoint reference solver.

Repeats full-grid Jacobi passes phi <- min(phi, update(neighbors)) until the
largest per-cell change drops below tol. No ordering tricks, no active sets:
slow but obviously correct, which is exactly what the fast solvers are
validated against. Passes are capped at 10 * (nx + ny); exceeding the cap
raises instead of spinning, since every sane grid converges long before it.
"""
from __future__ import annotations

import math
import time

import numpy as np

from ._kernels import neighbor_mins, padded_phi, update_batch
from .grid import BoundaryCondition, CellState, Grid, apply_boundary
from .parallel import parallel_map_blocks, resolve_workers
from .result import RunStats, SolverResult


def solve_fixpoint(
    grid: Grid,
    bc: BoundaryCondition,
    tol: float = 1e-12,
    workers: int = 1,
    max_passes: int | None = None,
) -> SolverResult:
    t0 = time.perf_counter()
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    workers = resolve_workers(workers)
    apply_boundary(grid, bc)

    free = (grid.state != CellState.SOURCE) & (grid.state != CellState.BLOCKED)
    cells = np.flatnonzero(free.ravel())
    speed_flat = grid.speed.ravel()
    phi_flat = grid.phi.ravel()
    nx, dx, dy = grid.nx, grid.dx, grid.dy
    cap = 10 * (grid.nx + grid.ny) if max_passes is None else max_passes

    stats = RunStats()
    while True:
        snapshot = padded_phi(grid.phi)

        def one_pass(chunk: np.ndarray, snapshot=snapshot) -> np.ndarray:
            xmin, ymin = neighbor_mins(snapshot, chunk, nx)
            return update_batch(xmin, ymin, speed_flat[chunk], dx, dy)

        candidates = parallel_map_blocks(cells, one_pass, workers)
        stats.solver_calls += len(cells)
        stats.iterations += 1

        old = phi_flat[cells]
        new = np.minimum(old, candidates)
        decreased = new < old
        phi_flat[cells] = new
        if not np.any(decreased):
            break
        max_change = float(np.max(old[decreased] - new[decreased]))
        if max_change < tol:
            break
        if stats.iterations >= cap:
            raise RuntimeError(
                f"fixpoint iteration did not converge within {cap} passes "
                f"(last max change {max_change:.3e})"
            )

    stats.wall_time = time.perf_counter() - t0
    return SolverResult(phi=grid.phi.copy(), stats=stats)


def analytic_example1(point: tuple[float, float], center: tuple[float, float], radius: float) -> float:
    """Exact arrival time for a unit-speed front from a circle: signed distance."""
    return math.hypot(point[0] - center[0], point[1] - center[1]) - radius
