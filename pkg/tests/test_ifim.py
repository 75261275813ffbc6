"""Check-free active-list solver with verification and repair stages."""
import numpy as np
import pytest

from eikonal.grid import (
    BoundaryCondition,
    CellIndex,
    CellState,
    new_grid,
    reset_field,
    seed_point,
)
from eikonal.harness import field_max_diff, field_sha256, make_example, max_residual
from eikonal.ifim import (
    build_remedy_set,
    ifim_remedy_step,
    ifim_update_step,
    solve_ifim,
)
from eikonal.oracle import solve_fixpoint


@pytest.mark.parametrize("example_id", [1, 2, 3, 5])
def test_full_solve_matches_reference(example_id):
    grid, bc = make_example(example_id, 48)
    ref = solve_fixpoint(grid, bc).phi
    grid2, bc2 = make_example(example_id, 48)
    res = solve_ifim(grid2, bc2)
    assert field_max_diff(res.phi, ref) <= 1e-9
    assert max_residual(grid2) <= 1e-9


def test_update_step_spends_calls_only_on_active_cells():
    # The defining economy: one recompute per active cell per iteration and
    # nothing else — no neighbor checks anywhere.
    grid, bc = make_example(2, 48)
    stats = ifim_update_step(grid, bc)
    assert stats.active_history is not None
    assert stats.solver_calls == sum(stats.active_history)
    assert stats.peak_active == max(stats.active_history)


def test_update_step_can_leave_stale_values_that_remedy_repairs():
    # A slow pocket: the front that first reaches the far side is the slow
    # one through the pocket; the fast detour around it arrives later, and
    # without neighbor checks the update step cannot propagate it back.
    speed = np.ones((24, 24))
    speed[8:16, 8:16] = 0.05
    g = new_grid(24, 24, 1.0, 1.0, speed=speed)
    bc = seed_point(g, CellIndex(0, 0), 0.0)
    ifim_update_step(g, bc)
    remedy, _calls = build_remedy_set(g)
    assert len(remedy) > 0  # verification found stale cells

    ifim_remedy_step(g, remedy)
    g2 = new_grid(24, 24, 1.0, 1.0, speed=speed)
    ref = solve_fixpoint(g2, seed_point(g2, CellIndex(0, 0), 0.0)).phi
    assert field_max_diff(g.phi, ref) <= 1e-9


def test_build_remedy_set_does_not_modify_field():
    grid, bc = make_example(5, 32)
    ifim_update_step(grid, bc)
    before = grid.phi.copy()
    build_remedy_set(grid)
    assert np.array_equal(grid.phi, before)


def test_build_remedy_counts_one_call_per_free_cell():
    grid, bc = make_example(1, 32)
    ifim_update_step(grid, bc)
    _remedy, calls = build_remedy_set(grid)
    free = np.count_nonzero(
        (grid.state != CellState.SOURCE) & (grid.state != CellState.BLOCKED)
    )
    assert calls == free


def test_converged_field_builds_empty_remedy_set():
    grid, bc = make_example(1, 32)
    solve_ifim(grid, bc)
    remedy, _calls = build_remedy_set(grid)
    assert len(remedy) == 0


def test_single_stale_cell_is_repaired():
    grid, bc = make_example(1, 32)
    ref = solve_fixpoint(grid, bc).phi
    # re-solve, then corrupt one interior cell upward
    grid2, bc2 = make_example(1, 32)
    solve_ifim(grid2, bc2)
    grid2.phi[20, 14] += 0.3
    remedy, _calls = build_remedy_set(grid2)
    flagged = set(remedy.cells)
    assert CellIndex(14, 20).linear(grid2.nx) in flagged
    ifim_remedy_step(grid2, remedy)
    assert field_max_diff(grid2.phi, ref) <= 1e-9


def test_smooth_single_source_needs_no_remedy():
    grid, bc = make_example(1, 64)
    res = solve_ifim(grid, bc)
    assert res.stats.peak_remedy == 0


def test_all_cells_seeded_means_no_update_iterations():
    g = new_grid(4, 4, 1.0, 1.0)
    bc = BoundaryCondition(
        tuple((CellIndex(i, j), 0.1 * (i + j)) for i in range(4) for j in range(4))
    )
    stats = ifim_update_step(g, bc)
    assert stats.iterations == 0
    assert stats.solver_calls == 0


def test_staged_calls_equal_composed_solve():
    grid, bc = make_example(2, 40)
    update = ifim_update_step(grid, bc)
    remedy, build_calls = build_remedy_set(grid)
    repair = ifim_remedy_step(grid, remedy)

    grid2, bc2 = make_example(2, 40)
    res = solve_ifim(grid2, bc2)
    assert res.stats.solver_calls == update.solver_calls + build_calls + repair.solver_calls
    assert res.stats.iterations == update.iterations + repair.iterations
    assert np.array_equal(res.phi, grid.phi)


def test_deterministic_across_runs_and_workers():
    digests = set()
    for w in (1, 1, 3):
        grid, bc = make_example(5, 40)
        digests.add(field_sha256(solve_ifim(grid, bc, workers=w).phi))
    assert len(digests) == 1


def test_blocked_cells_stay_infinite():
    grid, bc = make_example(4, 32)
    res = solve_ifim(grid, bc)
    blocked = grid.state == CellState.BLOCKED
    assert np.all(np.isinf(res.phi[blocked]))
    assert np.all(np.isfinite(res.phi[~blocked]))


def test_tol_validation():
    g = new_grid(8, 8, 1.0, 1.0)
    with pytest.raises(ValueError):
        solve_ifim(g, seed_point(g, CellIndex(0, 0), 0.0), tol=-1e-9)
