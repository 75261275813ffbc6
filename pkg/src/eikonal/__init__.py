"""Eikonal travel-time solvers on uniform 2D grids.

Solves ||grad phi|| = 1/F from pinned source cells with four methods that
share one Godunov upwind stencil — fast marching (heap ordering), fast
sweeping (alternating Gauss-Seidel), a fast iterative active-list scheme,
and its improved variant that drops per-iteration neighbor checks in favor
of a post-hoc verification and repair pass — plus a brute-force fixpoint
reference, a benchmark harness, bit-deterministic data-parallel execution,
and steepest-descent shortest paths over solved fields.
"""
from .fim import solve_fim
from .fmm import IndexedMinHeap, solve_fmm
from .fsm import SweepOrdering, solve_fsm
from .grid import (
    INF,
    BoundaryCondition,
    CellIndex,
    CellState,
    Direction,
    Grid,
    apply_boundary,
    neighbor_value,
    new_grid,
    reset_field,
    seed_circle,
    seed_point,
)
from .harness import (
    BENCH_METHODS,
    EXAMPLE_IDS,
    METHOD_NAMES,
    PARALLEL_METHODS,
    BenchReport,
    BenchRow,
    WorkerRun,
    export_field_csv,
    field_max_diff,
    field_sha256,
    import_field_csv,
    make_example,
    max_residual,
    run_bench,
    run_method,
    speed_example3,
    speed_example5,
    worker_sweep,
)
from .ifim import RemedySet, build_remedy_set, ifim_remedy_step, ifim_update_step, solve_ifim
from .local_solver import (
    residual_2d,
    residual_3d,
    update_2d_aniso,
    update_2d_uniform,
    update_3d_uniform,
)
from .oracle import analytic_example1, solve_fixpoint
from .parallel import chunk_bounds, parallel_map_blocks, parallel_map_cells, resolve_workers
from .pathplan import (
    BarrierMap,
    PathPolyline,
    barrier_speed,
    gradient_descent_path,
    load_barrier_map,
    save_barrier_map,
    synthetic_barrier_map,
    synthetic_endpoints,
)
from .result import RunStats, SolverResult

__version__ = "0.1.0"

__all__ = [
    "BENCH_METHODS",
    "EXAMPLE_IDS",
    "INF",
    "METHOD_NAMES",
    "PARALLEL_METHODS",
    "BarrierMap",
    "BenchReport",
    "BenchRow",
    "BoundaryCondition",
    "CellIndex",
    "CellState",
    "Direction",
    "Grid",
    "IndexedMinHeap",
    "PathPolyline",
    "RemedySet",
    "RunStats",
    "SolverResult",
    "SweepOrdering",
    "WorkerRun",
    "analytic_example1",
    "apply_boundary",
    "barrier_speed",
    "build_remedy_set",
    "chunk_bounds",
    "export_field_csv",
    "field_max_diff",
    "field_sha256",
    "gradient_descent_path",
    "ifim_remedy_step",
    "ifim_update_step",
    "import_field_csv",
    "load_barrier_map",
    "make_example",
    "max_residual",
    "neighbor_value",
    "new_grid",
    "parallel_map_blocks",
    "parallel_map_cells",
    "reset_field",
    "residual_2d",
    "residual_3d",
    "resolve_workers",
    "run_bench",
    "run_method",
    "save_barrier_map",
    "seed_circle",
    "seed_point",
    "solve_fim",
    "solve_fixpoint",
    "solve_fmm",
    "solve_fsm",
    "solve_ifim",
    "speed_example3",
    "speed_example5",
    "synthetic_barrier_map",
    "synthetic_endpoints",
    "update_2d_aniso",
    "update_2d_uniform",
    "update_3d_uniform",
    "worker_sweep",
]
