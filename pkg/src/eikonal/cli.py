"""Command-line front end: solve, bench, verify, plan.

Examples::

    eikonal solve --example 1 --size 128 --method ifim --out field.csv
    eikonal bench --examples 1,2,5 --sizes 64,128 --report bench.csv
    eikonal verify --example 3 --size 64
    eikonal plan --map maze.pgm --start 40,11 --goal 16,53 --out path.csv
    eikonal plan --map synthetic:64 --out path.csv
"""
from __future__ import annotations

import argparse
import sys

from .grid import CellIndex, new_grid, seed_point
from .harness import (
    BENCH_METHODS,
    EXAMPLE_IDS,
    METHOD_NAMES,
    export_field_csv,
    field_max_diff,
    make_example,
    max_residual,
    run_bench,
    run_method,
)
from .oracle import solve_fixpoint
from .pathplan import (
    barrier_speed,
    gradient_descent_path,
    load_barrier_map,
    synthetic_barrier_map,
    synthetic_endpoints,
)

VERIFY_GATE = 1e-9
BIG_SIZE = 512


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _cell(text: str) -> CellIndex:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected i,j cell index, got {text!r}")
    try:
        return CellIndex(int(parts[0]), int(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integer cell index, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eikonal", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one catalog example and print run stats")
    p_solve.add_argument("--example", type=int, required=True, choices=EXAMPLE_IDS)
    p_solve.add_argument("--size", type=int, required=True, help="grid size n (n-by-n)")
    p_solve.add_argument("--method", default="ifim", choices=METHOD_NAMES)
    p_solve.add_argument("--workers", type=int, default=1)
    p_solve.add_argument("--tol", type=float, default=1e-12)
    p_solve.add_argument("--out", help="write the solved field as CSV")

    p_bench = sub.add_parser("bench", help="time methods across examples and sizes")
    p_bench.add_argument("--examples", type=_int_list, default=list(EXAMPLE_IDS))
    p_bench.add_argument("--sizes", type=_int_list, default=[64, 128])
    p_bench.add_argument("--methods", default=",".join(BENCH_METHODS),
                         help=f"comma-separated subset of {','.join(METHOD_NAMES)}")
    p_bench.add_argument("--reps", type=int, default=3)
    p_bench.add_argument("--workers", type=int, default=1)
    p_bench.add_argument("--tol", type=float, default=1e-12)
    p_bench.add_argument("--report", help="write the table as CSV")
    p_bench.add_argument("--big", action="store_true",
                         help=f"allow sizes above {BIG_SIZE} (long runtimes)")

    p_verify = sub.add_parser("verify", help="check every method against the fixpoint reference")
    p_verify.add_argument("--example", type=int, required=True, choices=EXAMPLE_IDS)
    p_verify.add_argument("--size", type=int, required=True)
    p_verify.add_argument("--workers", type=int, default=1)
    p_verify.add_argument("--tol", type=float, default=1e-12)

    p_plan = sub.add_parser("plan", help="solve a barrier map and extract a shortest path")
    p_plan.add_argument("--map", required=True, dest="map_path",
                        help="occupancy grid (.pgm or .csv), or synthetic:N for the bundled fixture")
    p_plan.add_argument("--start", type=_cell, help="source cell i,j (default: synthetic fixture start)")
    p_plan.add_argument("--goal", type=_cell, help="query cell i,j (default: synthetic fixture goal)")
    p_plan.add_argument("--method", default="ifim", choices=METHOD_NAMES)
    p_plan.add_argument("--step", type=float, default=0.5, help="descent step length (default 0.5 cells)")
    p_plan.add_argument("--workers", type=int, default=1)
    p_plan.add_argument("--tol", type=float, default=1e-12)
    p_plan.add_argument("--out", help="write the path as x,y,phi CSV")
    return parser


def _cmd_solve(args) -> int:
    grid, bc = make_example(args.example, args.size)
    result = run_method(args.method, grid, bc, tol=args.tol, workers=args.workers)
    s = result.stats
    print(
        f"example {args.example} n={args.size} method={args.method}: "
        f"wall={s.wall_time:.4f}s calls={s.solver_calls} iterations={s.iterations} "
        f"peak_active={s.peak_active} peak_remedy={s.peak_remedy} "
        f"residual={max_residual(grid):.3e}"
    )
    if args.out:
        export_field_csv(grid, args.out)
        print(f"field written to {args.out}")
    return 0


def _cmd_bench(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    big = [n for n in args.sizes if n > BIG_SIZE]
    if big and not args.big:
        print(f"error: sizes {big} exceed {BIG_SIZE}; pass --big to run them anyway", file=sys.stderr)
        return 2
    report = run_bench(args.examples, args.sizes, methods=methods,
                       workers=args.workers, repetitions=args.reps, tol=args.tol)
    print(report.format_table())
    if args.report:
        report.to_csv(args.report)
        print(f"report written to {args.report}")
    return 0


def _cmd_verify(args) -> int:
    ref_grid, ref_bc = make_example(args.example, args.size)
    reference = solve_fixpoint(ref_grid, ref_bc, tol=args.tol, workers=args.workers).phi
    failures = 0
    for method in BENCH_METHODS:
        grid, bc = make_example(args.example, args.size)
        result = run_method(method, grid, bc, tol=args.tol, workers=args.workers)
        diff = field_max_diff(result.phi, reference)
        residual = max_residual(grid)
        ok = diff <= VERIFY_GATE and residual <= VERIFY_GATE
        failures += 0 if ok else 1
        print(f"{method:<5} max_diff_vs_reference={diff:.3e} residual={residual:.3e} "
              f"{'PASS' if ok else 'FAIL'}")
    if failures:
        print(f"{failures} method(s) disagree with the reference beyond {VERIFY_GATE:.0e}",
              file=sys.stderr)
        return 1
    print(f"all methods agree with the reference within {VERIFY_GATE:.0e}")
    return 0


def _cmd_plan(args) -> int:
    if args.map_path.startswith("synthetic:"):
        try:
            n = int(args.map_path.split(":", 1)[1])
        except ValueError:
            print(f"error: bad synthetic map size in {args.map_path!r}", file=sys.stderr)
            return 2
        bmap = synthetic_barrier_map(n)
        default_start, default_goal = synthetic_endpoints(n)
    else:
        bmap = load_barrier_map(args.map_path)
        default_start = default_goal = None

    start = args.start if args.start is not None else default_start
    goal = args.goal if args.goal is not None else default_goal
    if start is None or goal is None:
        print("error: --start and --goal are required for loaded maps", file=sys.stderr)
        return 2

    grid = new_grid(bmap.width, bmap.height, 1.0, 1.0, origin=(0.0, 0.0),
                    speed=barrier_speed(bmap))
    bc = seed_point(grid, start, 0.0)
    result = run_method(args.method, grid, bc, tol=args.tol, workers=args.workers)
    goal_xy = grid.cell_center(goal.i, goal.j)
    path = gradient_descent_path(grid, goal_xy, args.step)
    print(
        f"map {bmap.width}x{bmap.height}: solved with {args.method} "
        f"({result.stats.solver_calls} calls), path {len(path)} points, "
        f"travel time at goal {path.phi[0]:.4f}"
    )
    if args.out:
        path.to_csv(args.out)
        print(f"path written to {args.out}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"solve": _cmd_solve, "bench": _cmd_bench, "verify": _cmd_verify, "plan": _cmd_plan}
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
