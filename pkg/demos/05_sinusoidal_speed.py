#!/usr/bin/env python3
"""Where the remedy-based iterative solver wins — and where it loses.

Both iterative solvers maintain an active list of cells whose values are
still moving. The baseline (fim) additionally recomputes, every iteration,
each settled neighbor of every active cell to see whether it must rejoin
the list; those per-iteration checks dominate its operation count. The
remedy variant (ifim) drops the checks from its update step entirely and
instead reconciles stale cells afterwards in a dedicated remedy pass.

On smooth fields the gamble pays off outright: the update step leaves
nothing stale, the remedy set stays empty, and ifim does a small fraction
of the baseline's work. On the sinusoidal speed map below, though, the
check-free update step leaves a large stale region, and the remedy pass
relaxes it in lockstep rounds — corrections creep one cell per round — so
its serial operation count overshoots the baseline even though the final
fields agree to solver tolerance.
"""
from __future__ import annotations

from eikonal import field_max_diff, make_example, solve_fim, solve_ifim, speed_example5


def main() -> None:
    print(__doc__)

    print("Speed samples: trough F(0,0) =", f"{speed_example5(0.0, 0.0):.2f},",
          "crest F(pi/2,pi/2) =", f"{speed_example5(1.5707963267948966, 1.5707963267948966):.2f}")
    print()
    header = f"{'example':>22} {'n':>4} {'fim calls':>10} {'ifim calls':>11} {'ifim remedy peak':>17} {'verdict':>8}"
    print(header)
    print("-" * len(header))
    for example, label in ((1, "constant speed"), (2, "two sources"), (5, "sinusoidal speed")):
        for n in (64, 128):
            grid, bc = make_example(example, n)
            baseline = solve_fim(grid, bc)
            grid2, bc2 = make_example(example, n)
            remedy = solve_ifim(grid2, bc2)
            agree = field_max_diff(baseline.phi, remedy.phi)
            verdict = "wins" if remedy.stats.solver_calls < baseline.stats.solver_calls else "loses"
            print(f"{label:>22} {n:>4} {baseline.stats.solver_calls:>10} "
                  f"{remedy.stats.solver_calls:>11} {remedy.stats.peak_remedy:>17} {verdict:>8}")
            assert agree <= 1e-9, agree
    print()
    print("Both solvers always produce the same field (checked to 1e-9 above);")
    print("the difference is purely how much work the schedule performs.")


if __name__ == "__main__":
    main()
