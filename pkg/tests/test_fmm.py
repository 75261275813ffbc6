"""Marching solver: the indexed heap and causal acceptance order."""
import numpy as np
import pytest

from eikonal.fmm import IndexedMinHeap, solve_fmm
from eikonal.grid import CellIndex, CellState, new_grid, seed_point
from eikonal.harness import field_max_diff, make_example
from eikonal.oracle import solve_fixpoint


def test_heap_pops_in_key_order_with_index_tiebreak():
    h = IndexedMinHeap(10)
    h.push(3, 2.0)
    h.push(7, 1.0)
    h.push(5, 1.0)
    h.push(1, 3.0)
    assert h.pop_min() == (5, 1.0)  # tie at key 1.0 -> smaller index first
    assert h.pop_min() == (7, 1.0)
    assert h.pop_min() == (3, 2.0)
    assert h.pop_min() == (1, 3.0)
    with pytest.raises(IndexError):
        h.pop_min()


def test_heap_membership_and_key_lookup():
    h = IndexedMinHeap(4)
    h.push(2, 0.5)
    assert 2 in h and 1 not in h
    assert h.key_of(2) == 0.5
    with pytest.raises(KeyError):
        h.key_of(1)
    with pytest.raises(ValueError):
        h.push(2, 0.1)


def test_heap_decrease_key_reorders_and_rejects_increase():
    h = IndexedMinHeap(6)
    h.push(0, 5.0)
    h.push(1, 4.0)
    h.push(2, 3.0)
    h.decrease_key(0, 1.0)
    with pytest.raises(ValueError):
        h.decrease_key(1, 9.0)
    with pytest.raises(KeyError):
        h.decrease_key(5, 0.0)
    assert h.pop_min() == (0, 1.0)
    assert h.pop_min() == (2, 3.0)
    assert h.pop_min() == (1, 4.0)


def test_heap_randomized_against_sorted_reference():
    rng = np.random.default_rng(7)
    keys = rng.integers(0, 50, size=400).astype(float)  # many ties
    h = IndexedMinHeap(400)
    for cell, key in enumerate(keys):
        h.push(cell, float(key))
    popped = [h.pop_min() for _ in range(400)]
    expected = sorted(((float(k), c) for c, k in enumerate(keys)))
    assert [(c, k) for k, c in expected] == popped


def test_matches_reference_field():
    grid, bc = make_example(1, 32)
    ref = solve_fixpoint(grid, bc).phi
    grid2, bc2 = make_example(1, 32)
    res = solve_fmm(grid2, bc2)
    assert field_max_diff(res.phi, ref) <= 1e-9


def test_accepted_order_is_nondecreasing():
    grid, bc = make_example(5, 32)
    res = solve_fmm(grid, bc, track_order=True)
    values = res.phi.ravel()[res.accepted_order]
    assert np.all(np.diff(values) >= 0.0)


def test_order_not_tracked_by_default():
    grid, bc = make_example(1, 16)
    assert solve_fmm(grid, bc).accepted_order is None


def test_blocked_cells_never_accepted():
    grid, bc = make_example(4, 32)
    res = solve_fmm(grid, bc, track_order=True)
    blocked = np.flatnonzero((grid.state == CellState.BLOCKED).ravel())
    assert not set(blocked.tolist()) & set(res.accepted_order.tolist())
    assert np.all(np.isinf(res.phi.ravel()[blocked]))


def test_deterministic_across_runs():
    a = solve_fmm(*make_example(2, 24)).phi
    b = solve_fmm(*make_example(2, 24)).phi
    assert np.array_equal(a, b)


def test_seed_values_survive():
    g = new_grid(8, 8, 1.0, 1.0)
    res = solve_fmm(g, seed_point(g, CellIndex(4, 4), -1.5))
    assert res.phi[4, 4] == -1.5
    assert np.all(np.isfinite(res.phi))
