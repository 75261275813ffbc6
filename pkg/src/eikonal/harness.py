"""Example catalog, benchmark runner, and field verification utilities.

The catalog holds five canonical planar problems on the square domain
[-10, 10]^2 (the barrier example uses unit spacing from the map instead):

1. unit speed, one circular source of radius 3 at the origin;
2. unit speed, circular sources of radius 3 at (2, -5) and 1.5 at (-2, 5);
3. speed 1 inside the closed square [3, 7]^2 and 0.01 outside, circular
   sources of radius 0.5 at (-5, 5) and (5, -5) — the fast inclusion drags
   the front sideways, so arrival times are strongly asymmetric;
4. two-wall occupancy grid with staggered gaps, point source at the start
   cell — the shortest-path fixture;
5. speed sin^2(x) + sin^2(y) + 0.3, circular source of radius 0.5 at the
   origin — a smooth speed lattice that scatters the front into many local
   wavelets.

``run_bench`` times each requested method on each (example, size) pair and
reports operation counts next to two independent correctness columns: the
max residual of the discrete equation and the max difference against the
brute-force fixpoint reference. ``worker_sweep`` reruns a data-parallel
method across worker counts and hashes the outputs, making bit-level
determinism checkable from the command line.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from ._kernels import neighbor_mins, padded_phi, update_batch
from .fim import solve_fim
from .fmm import solve_fmm
from .fsm import solve_fsm
from .grid import (
    INF,
    BoundaryCondition,
    CellState,
    Grid,
    new_grid,
    seed_circle,
    seed_point,
)
from .ifim import solve_ifim
from .oracle import solve_fixpoint
from .pathplan import barrier_speed, synthetic_barrier_map, synthetic_endpoints
from .result import SolverResult

DOMAIN = (-10.0, 10.0)
EXAMPLE_IDS = (1, 2, 3, 4, 5)

#: Methods accepted by :func:`run_method`; ``oracle`` is the correctness
#: reference and is excluded from the default benchmark line-up.
METHOD_NAMES = ("fmm", "fsm", "fim", "ifim", "oracle")
BENCH_METHODS = ("fmm", "fsm", "fim", "ifim")
#: Methods whose heavy phases run through the deterministic block executor.
PARALLEL_METHODS = frozenset({"fim", "ifim", "oracle"})


def speed_example3(x, y):
    """Speed 1 inside the closed square [3, 7]^2, 0.01 outside."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    inside = (x >= 3.0) & (x <= 7.0) & (y >= 3.0) & (y <= 7.0)
    out = np.where(inside, 1.0, 0.01)
    return float(out) if out.ndim == 0 else out


def speed_example5(x, y):
    """Smooth oscillatory speed sin^2(x) + sin^2(y) + 0.3 (always >= 0.3)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    out = np.sin(x) ** 2 + np.sin(y) ** 2 + 0.3
    return float(out) if out.ndim == 0 else out


def make_example(example_id: int, n: int) -> tuple[Grid, BoundaryCondition]:
    """Build the n-by-n grid and boundary condition for one catalog entry.

    Examples 1, 2, 3 and 5 discretize [-10, 10]^2 with spacing 20/(n-1);
    circular sources are seeded with the signed distance to their rim.
    Example 4 uses the synthetic two-wall map at unit spacing with a zero
    seed at its start cell (needs n >= 16 so the walls and gaps resolve).
    """
    if example_id not in EXAMPLE_IDS:
        raise ValueError(f"unknown example id {example_id}, expected one of {EXAMPLE_IDS}")
    if n < 8:
        raise ValueError(f"grid size must be at least 8, got {n}")

    if example_id == 4:
        bmap = synthetic_barrier_map(n)
        grid = new_grid(n, n, 1.0, 1.0, origin=(0.0, 0.0), speed=barrier_speed(bmap))
        start, _goal = synthetic_endpoints(n)
        return grid, seed_point(grid, start, 0.0)

    lo, hi = DOMAIN
    d = (hi - lo) / (n - 1)
    x = lo + d * np.arange(n)
    y = lo + d * np.arange(n)
    xx, yy = np.meshgrid(x, y)

    if example_id == 1:
        grid = new_grid(n, n, d, d, origin=(lo, lo), speed=1.0)
        bc = seed_circle(grid, (0.0, 0.0), 3.0)
    elif example_id == 2:
        grid = new_grid(n, n, d, d, origin=(lo, lo), speed=1.0)
        bc = seed_circle(grid, (2.0, -5.0), 3.0).merged_with(
            seed_circle(grid, (-2.0, 5.0), 1.5)
        )
    elif example_id == 3:
        grid = new_grid(n, n, d, d, origin=(lo, lo), speed=speed_example3(xx, yy))
        bc = seed_circle(grid, (-5.0, 5.0), 0.5).merged_with(
            seed_circle(grid, (5.0, -5.0), 0.5)
        )
    else:  # example_id == 5
        grid = new_grid(n, n, d, d, origin=(lo, lo), speed=speed_example5(xx, yy))
        bc = seed_circle(grid, (0.0, 0.0), 0.5)
    return grid, bc


def run_method(
    method: str,
    grid: Grid,
    bc: BoundaryCondition,
    tol: float = 1e-12,
    workers: int = 1,
) -> SolverResult:
    """Dispatch one solver by name on a fresh grid.

    ``workers`` only affects the data-parallel methods; the inherently
    sequential ones (fmm, fsm) run serially regardless. ``tol`` is ignored
    by fmm, whose causal ordering is exact rather than iterated.
    """
    if method == "fmm":
        return solve_fmm(grid, bc)
    if method == "fsm":
        return solve_fsm(grid, bc, tol=tol)
    if method == "fim":
        return solve_fim(grid, bc, tol=tol, workers=workers)
    if method == "ifim":
        return solve_ifim(grid, bc, tol=tol, workers=workers)
    if method == "oracle":
        return solve_fixpoint(grid, bc, tol=tol, workers=workers)
    raise ValueError(f"unknown method {method!r}, expected one of {METHOD_NAMES}")


def max_residual(grid: Grid) -> float:
    """Largest violation of the discrete equation over the solved field.

    For every non-source, non-blocked cell with finite phi, recompute the
    one-cell update from the current neighbors and return the largest
    |phi - update|. Vacuously 0.0 when no such cell exists. A converged
    field satisfies its own stencil, so this is a solver-independent check.
    """
    free = (grid.state != CellState.SOURCE) & (grid.state != CellState.BLOCKED)
    mask = free & np.isfinite(grid.phi)
    cells = np.flatnonzero(mask.ravel())
    if cells.size == 0:
        return 0.0
    xmin, ymin = neighbor_mins(padded_phi(grid.phi), cells, grid.nx)
    recomputed = update_batch(xmin, ymin, grid.speed.ravel()[cells], grid.dx, grid.dy)
    return float(np.abs(grid.phi.ravel()[cells] - recomputed).max())


def field_max_diff(a: np.ndarray, b: np.ndarray) -> float:
    """Max |a - b| treating two infinities of the same sign as equal."""
    if a.shape != b.shape:
        raise ValueError(f"field shapes differ: {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    both_inf = np.isinf(a) & np.isinf(b) & (np.sign(a) == np.sign(b))
    with np.errstate(invalid="ignore"):
        diff = np.abs(a - b)
    return float(np.where(both_inf, 0.0, diff).max())


def field_sha256(phi: np.ndarray) -> str:
    """Hex digest of the raw field bytes; equal digests mean bit-identical."""
    return hashlib.sha256(np.ascontiguousarray(phi).tobytes()).hexdigest()


@dataclass
class BenchRow:
    example: int
    n: int
    method: str
    wall_time: float
    solver_calls: int
    iterations: int
    peak_active: int
    peak_remedy: int
    max_residual: float
    max_diff_vs_oracle: float


BENCH_COLUMNS = (
    "example",
    "n",
    "method",
    "wall_time",
    "solver_calls",
    "iterations",
    "peak_active",
    "peak_remedy",
    "max_residual",
    "max_diff_vs_oracle",
)


@dataclass
class BenchReport:
    rows: list[BenchRow]

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def to_csv(self, path: str) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(",".join(BENCH_COLUMNS) + "\n")
            for r in self.rows:
                fh.write(
                    f"{r.example},{r.n},{r.method},{r.wall_time!r},{r.solver_calls},"
                    f"{r.iterations},{r.peak_active},{r.peak_remedy},"
                    f"{r.max_residual!r},{r.max_diff_vs_oracle!r}\n"
                )

    def format_table(self) -> str:
        header = (
            f"{'ex':>2} {'n':>5} {'method':<7} {'wall_s':>10} {'calls':>10} "
            f"{'iters':>6} {'peak_act':>8} {'peak_rem':>8} {'residual':>10} {'vs_oracle':>10}"
        )
        lines = [header, "-" * len(header)]
        for r in self.rows:
            lines.append(
                f"{r.example:>2} {r.n:>5} {r.method:<7} {r.wall_time:>10.4f} "
                f"{r.solver_calls:>10} {r.iterations:>6} {r.peak_active:>8} "
                f"{r.peak_remedy:>8} {r.max_residual:>10.2e} {r.max_diff_vs_oracle:>10.2e}"
            )
        return "\n".join(lines)


def run_bench(
    example_ids,
    sizes,
    methods=BENCH_METHODS,
    workers: int = 1,
    repetitions: int = 3,
    tol: float = 1e-12,
) -> BenchReport:
    """Benchmark methods over (example, size) pairs: one row per combination.

    Wall time is the minimum over ``repetitions`` fresh runs (every run
    rebuilds the grid; the solvers are deterministic, so the operation
    counts and the field are identical across repetitions). Each row also
    records the field's equation residual and its difference against the
    fixpoint reference computed once per (example, size).
    """
    if repetitions < 1:
        raise ValueError(f"repetitions must be >= 1, got {repetitions}")
    for method in methods:
        if method not in METHOD_NAMES:
            raise ValueError(f"unknown method {method!r}, expected one of {METHOD_NAMES}")

    rows: list[BenchRow] = []
    for example_id in example_ids:
        for n in sizes:
            ref_grid, ref_bc = make_example(example_id, n)
            reference = solve_fixpoint(ref_grid, ref_bc, tol=tol, workers=workers).phi
            for method in methods:
                best = INF
                result = None
                grid = None
                for _ in range(repetitions):
                    grid, bc = make_example(example_id, n)
                    result = run_method(method, grid, bc, tol=tol, workers=workers)
                    best = min(best, result.stats.wall_time)
                assert result is not None and grid is not None
                rows.append(
                    BenchRow(
                        example=example_id,
                        n=n,
                        method=method,
                        wall_time=best,
                        solver_calls=result.stats.solver_calls,
                        iterations=result.stats.iterations,
                        peak_active=result.stats.peak_active,
                        peak_remedy=result.stats.peak_remedy,
                        max_residual=max_residual(grid),
                        max_diff_vs_oracle=field_max_diff(result.phi, reference),
                    )
                )
    return BenchReport(rows)


@dataclass
class WorkerRun:
    workers: int
    wall_time: float
    phi_sha256: str


def worker_sweep(example_id: int, n: int, method: str, workers_list, tol: float = 1e-12) -> list[WorkerRun]:
    """Re-run one data-parallel method across worker counts and hash outputs.

    The executor's static block partition makes results bit-identical for
    any worker count, so all returned digests must match; comparing them is
    the caller's check. Sequential methods have no parallel phase to sweep
    and are rejected.
    """
    if method not in PARALLEL_METHODS:
        raise ValueError(
            f"method {method!r} has no data-parallel phase; "
            f"worker sweeps apply to {sorted(PARALLEL_METHODS)}"
        )
    runs: list[WorkerRun] = []
    for w in workers_list:
        grid, bc = make_example(example_id, n)
        result = run_method(method, grid, bc, tol=tol, workers=int(w))
        runs.append(WorkerRun(int(w), result.stats.wall_time, field_sha256(result.phi)))
    return runs


def export_field_csv(grid: Grid, path: str) -> None:
    """Write a field snapshot: one geometry line, then one line per cell.

    Line 1 holds ``nx,ny,dx,dy,x0,y0``; the remaining nx*ny lines hold
    ``i,j,phi`` in row-major order (j outer, i inner). Values use repr so
    the round-trip through :func:`import_field_csv` is bit-exact; +inf is
    written as ``inf``.
    """
    with open(path, "w", encoding="ascii") as fh:
        fh.write(
            f"{grid.nx},{grid.ny},{grid.dx!r},{grid.dy!r},"
            f"{grid.origin[0]!r},{grid.origin[1]!r}\n"
        )
        phi = grid.phi
        for j in range(grid.ny):
            for i in range(grid.nx):
                fh.write(f"{i},{j},{float(phi[j, i])!r}\n")


def import_field_csv(path: str) -> Grid:
    """Read a snapshot written by :func:`export_field_csv`.

    Only geometry and phi are stored in the file, so the returned grid has
    unit speed and all-Far state; it is a field container, not a resumable
    solver state.
    """
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline()
        parts = header.strip().split(",")
        if len(parts) != 6:
            raise ValueError(f"{path}:1: expected 6 header fields nx,ny,dx,dy,x0,y0, got {len(parts)}")
        try:
            nx, ny = int(parts[0]), int(parts[1])
            dx, dy, x0, y0 = (float(p) for p in parts[2:])
        except ValueError:
            raise ValueError(f"{path}:1: malformed header {header.strip()!r}") from None
        grid = new_grid(nx, ny, dx, dy, origin=(x0, y0), speed=1.0)
        count = 0
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            fields = line.strip().split(",")
            if len(fields) != 3:
                raise ValueError(f"{path}:{lineno}: expected i,j,phi, got {line.strip()!r}")
            try:
                i, j, value = int(fields[0]), int(fields[1]), float(fields[2])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: malformed row {line.strip()!r}") from None
            if not (0 <= i < nx and 0 <= j < ny):
                raise ValueError(f"{path}:{lineno}: cell ({i}, {j}) outside {nx}x{ny} grid")
            grid.phi[j, i] = value
            count += 1
        if count != nx * ny:
            raise ValueError(f"{path}: expected {nx * ny} cell rows, found {count}")
    return grid
