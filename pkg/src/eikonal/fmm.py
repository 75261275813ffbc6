"""Fast marching: single-pass causal ordering via an indexed min-heap.

Cells are partitioned into Accepted (final), Tentative (in the heap), and
Distant. Each pop accepts the globally smallest tentative value - ties break
on the smaller linear index so runs are reproducible - and relaxes its
neighbors. Upwind minima may read tentative neighbors: they are never smaller
than the accepted front, so the Godunov min is unaffected. Single-threaded by
construction; the heap order is the algorithm.
"""
from __future__ import annotations

import time

import numpy as np

from .grid import INF, BoundaryCondition, CellState, Grid, apply_boundary
from .local_solver import update_2d_aniso, update_2d_uniform
from .result import RunStats, SolverResult


class IndexedMinHeap:
    """Binary min-heap over (key, cell) with O(1) cell lookup.

    Equal keys order by cell index. decrease_key rejects cells that are not
    in the heap and refuses to move a key upwards.
    """

    def __init__(self, capacity: int):
        self._keys: list[float] = []
        self._cells: list[int] = []
        self._pos = [-1] * capacity

    def __len__(self) -> int:
        return len(self._keys)

    def __contains__(self, cell: int) -> bool:
        return self._pos[cell] >= 0

    def key_of(self, cell: int) -> float:
        slot = self._pos[cell]
        if slot < 0:
            raise KeyError(f"cell {cell} is not in the heap")
        return self._keys[slot]

    def _less(self, a: int, b: int) -> bool:
        ka, kb = self._keys[a], self._keys[b]
        if ka != kb:
            return ka < kb
        return self._cells[a] < self._cells[b]

    def _swap(self, a: int, b: int) -> None:
        keys, cells, pos = self._keys, self._cells, self._pos
        keys[a], keys[b] = keys[b], keys[a]
        cells[a], cells[b] = cells[b], cells[a]
        pos[cells[a]] = a
        pos[cells[b]] = b

    def _sift_up(self, slot: int) -> None:
        while slot > 0:
            parent = (slot - 1) >> 1
            if self._less(slot, parent):
                self._swap(slot, parent)
                slot = parent
            else:
                break

    def _sift_down(self, slot: int) -> None:
        n = len(self._keys)
        while True:
            child = 2 * slot + 1
            if child >= n:
                break
            if child + 1 < n and self._less(child + 1, child):
                child += 1
            if self._less(child, slot):
                self._swap(slot, child)
                slot = child
            else:
                break

    def push(self, cell: int, key: float) -> None:
        if self._pos[cell] >= 0:
            raise ValueError(f"cell {cell} is already in the heap")
        self._keys.append(key)
        self._cells.append(cell)
        self._pos[cell] = len(self._keys) - 1
        self._sift_up(len(self._keys) - 1)

    def pop_min(self) -> tuple[int, float]:
        if not self._keys:
            raise IndexError("pop from an empty heap")
        cell, key = self._cells[0], self._keys[0]
        last = len(self._keys) - 1
        self._swap(0, last)
        self._keys.pop()
        self._cells.pop()
        self._pos[cell] = -1
        if self._keys:
            self._sift_down(0)
        return cell, key

    def decrease_key(self, cell: int, new_key: float) -> None:
        slot = self._pos[cell]
        if slot < 0:
            raise KeyError(f"cell {cell} is not in the heap")
        if new_key > self._keys[slot]:
            raise ValueError(
                f"decrease_key would raise cell {cell} from {self._keys[slot]} to {new_key}"
            )
        if new_key == self._keys[slot]:
            return
        self._keys[slot] = new_key
        self._sift_up(slot)


def solve_fmm(grid: Grid, bc: BoundaryCondition, track_order: bool = False) -> SolverResult:
    """March the front outward from the boundary condition.

    With track_order=True the result carries the linear indices of cells in
    acceptance order (non-decreasing phi).
    """
    t0 = time.perf_counter()
    apply_boundary(grid, bc)
    nx, ny = grid.nx, grid.ny
    dx, dy = grid.dx, grid.dy
    uniform = dx == dy
    n = nx * ny

    phi = grid.phi.ravel().tolist()
    speed = grid.speed.ravel().tolist()
    state = grid.state.ravel()
    blocked = (state == CellState.BLOCKED).tolist()
    accepted = (state == CellState.SOURCE).tolist()

    heap = IndexedMinHeap(n)
    stats = RunStats()
    order: list[int] = [] if track_order else None

    def relax_neighbors(idx: int) -> None:
        i = idx % nx
        j = idx // nx
        for nbr, ok in (
            (idx - 1, i > 0),
            (idx + 1, i < nx - 1),
            (idx - nx, j > 0),
            (idx + nx, j < ny - 1),
        ):
            if not ok or accepted[nbr] or blocked[nbr]:
                continue
            ni = nbr % nx
            nj = nbr // nx
            west = phi[nbr - 1] if ni > 0 else INF
            east = phi[nbr + 1] if ni < nx - 1 else INF
            south = phi[nbr - nx] if nj > 0 else INF
            north = phi[nbr + nx] if nj < ny - 1 else INF
            xmin = west if west < east else east
            ymin = south if south < north else north
            if uniform:
                cand = update_2d_uniform(xmin, ymin, speed[nbr], dx)
            else:
                cand = update_2d_aniso(xmin, ymin, speed[nbr], dx, dy)
            stats.solver_calls += 1
            if cand < phi[nbr]:
                phi[nbr] = cand
                if nbr in heap:
                    heap.decrease_key(nbr, cand)
                else:
                    heap.push(nbr, cand)

    for cell, _ in bc.seeds:
        relax_neighbors(cell.linear(nx))

    while len(heap):
        if len(heap) > stats.peak_active:
            stats.peak_active = len(heap)
        cell, _ = heap.pop_min()
        accepted[cell] = True
        stats.iterations += 1
        if order is not None:
            order.append(cell)
        relax_neighbors(cell)

    grid.phi[:] = np.asarray(phi).reshape(ny, nx)
    stats.wall_time = time.perf_counter() - t0
    return SolverResult(
        phi=grid.phi.copy(),
        stats=stats,
        accepted_order=np.asarray(order, dtype=np.int64) if order is not None else None,
    )
