"""Sweeping solver: round counts follow characteristic direction changes."""
import numpy as np
import pytest

from eikonal.fsm import STANDARD_ROUND, SweepOrdering, solve_fsm
from eikonal.grid import BoundaryCondition, CellIndex, new_grid
from eikonal.harness import field_max_diff, make_example
from eikonal.oracle import solve_fixpoint


def test_plane_wave_converges_in_one_productive_round():
    # Left-column sources, unit speed: every characteristic points +x, which
    # one of the four orderings resolves completely in the first round.
    g = new_grid(24, 16, 1.0, 1.0)
    bc = BoundaryCondition(tuple((CellIndex(0, j), 0.0) for j in range(16)))
    res = solve_fsm(g, bc)
    assert res.stats.iterations == 1
    expect = np.tile(np.arange(24, dtype=float), (16, 1))
    assert np.max(np.abs(res.phi - expect)) <= 1e-12


def test_open_domain_needs_few_rounds():
    grid, bc = make_example(1, 64)
    res = solve_fsm(grid, bc)
    assert res.stats.iterations <= 2


def test_barrier_map_needs_multiple_rounds():
    grid, bc = make_example(4, 64)
    res = solve_fsm(grid, bc)
    assert res.stats.iterations > 1


def test_matches_reference_on_contrast_speed():
    grid, bc = make_example(3, 48)
    ref = solve_fixpoint(grid, bc).phi
    grid2, bc2 = make_example(3, 48)
    res = solve_fsm(grid2, bc2)
    assert field_max_diff(res.phi, ref) <= 1e-9


def test_ordering_validation():
    g = new_grid(8, 8, 1.0, 1.0)
    bc = BoundaryCondition(((CellIndex(0, 0), 0.0),))
    with pytest.raises(ValueError):
        solve_fsm(g, bc, orderings=STANDARD_ROUND[:3])
    with pytest.raises(ValueError):
        solve_fsm(g, bc, orderings=(STANDARD_ROUND[0],) * 4)
    with pytest.raises(ValueError):
        solve_fsm(g, bc, tol=-1.0)


def test_any_ordering_permutation_converges_to_same_field():
    base = None
    perms = [
        STANDARD_ROUND,
        tuple(reversed(STANDARD_ROUND)),
        (STANDARD_ROUND[2], STANDARD_ROUND[0], STANDARD_ROUND[3], STANDARD_ROUND[1]),
    ]
    for perm in perms:
        grid, bc = make_example(2, 32)
        res = solve_fsm(grid, bc, orderings=perm)
        if base is None:
            base = res.phi
        else:
            assert field_max_diff(res.phi, base) <= 1e-9


def test_counts_solver_calls():
    grid, bc = make_example(1, 16)
    res = solve_fsm(grid, bc)
    free = int(np.count_nonzero(grid.state <= 1))  # FAR/ACTIVE cells swept
    # every free cell is visited by all four orderings in every executed round
    assert res.stats.solver_calls % (4 * free) == 0
    assert res.stats.solver_calls >= 4 * free
