"""Uniform 2D grid state shared by all solvers.

A grid couples three arrays of shape (ny, nx): travel time ``phi``, front
speed ``speed``, and a per-cell ``state`` flag. Cell (i, j) has linear index
``j * nx + i`` (row-major) and physical center ``origin + (i * dx, j * dy)``.
Cells with zero speed are Blocked: their phi stays +inf forever and every
neighbor read through them yields +inf.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Callable, NamedTuple

import numpy as np

INF = float("inf")


class CellState(IntEnum):
    FAR = 0
    ACTIVE = 1
    SOURCE = 2
    REMEDY = 3
    BLOCKED = 4


class CellIndex(NamedTuple):
    i: int
    j: int

    def linear(self, nx: int) -> int:
        return self.j * nx + self.i


class Direction(IntEnum):
    """The four axis neighbors of a cell."""

    WEST = 0   # -x
    EAST = 1   # +x
    SOUTH = 2  # -y
    NORTH = 3  # +y


_OFFSETS = {
    Direction.WEST: (-1, 0),
    Direction.EAST: (1, 0),
    Direction.SOUTH: (0, -1),
    Direction.NORTH: (0, 1),
}


@dataclass
class Grid:
    nx: int
    ny: int
    dx: float
    dy: float
    origin: tuple[float, float]
    phi: np.ndarray = field(repr=False)
    speed: np.ndarray = field(repr=False)
    state: np.ndarray = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.ny, self.nx)

    def in_bounds(self, i: int, j: int) -> bool:
        return 0 <= i < self.nx and 0 <= j < self.ny

    def cell_center(self, i: int, j: int) -> tuple[float, float]:
        return (self.origin[0] + i * self.dx, self.origin[1] + j * self.dy)

    def cell_centers(self) -> tuple[np.ndarray, np.ndarray]:
        """Coordinate arrays (x, y), each of shape (ny, nx)."""
        x = self.origin[0] + self.dx * np.arange(self.nx)
        y = self.origin[1] + self.dy * np.arange(self.ny)
        return np.meshgrid(x, y)


@dataclass(frozen=True)
class BoundaryCondition:
    """Cells whose phi is pinned for the whole run (the source set)."""

    seeds: tuple[tuple[CellIndex, float], ...]

    def __post_init__(self):
        seen = set()
        norm = []
        for cell, value in self.seeds:
            cell = CellIndex(int(cell[0]), int(cell[1]))
            if not math.isfinite(value):
                raise ValueError(f"seed value for {cell} must be finite, got {value}")
            if cell in seen:
                raise ValueError(f"duplicate seed cell {cell}")
            seen.add(cell)
            norm.append((cell, float(value)))
        object.__setattr__(self, "seeds", tuple(norm))

    def __len__(self) -> int:
        return len(self.seeds)

    def merged_with(self, other: "BoundaryCondition") -> "BoundaryCondition":
        return BoundaryCondition(self.seeds + other.seeds)


def new_grid(
    nx: int,
    ny: int,
    dx: float,
    dy: float,
    origin: tuple[float, float] = (0.0, 0.0),
    speed: float | np.ndarray | Callable[[float, float], float] = 1.0,
) -> Grid:
    """Allocate a grid with phi = +inf everywhere.

    ``speed`` is a constant, an (ny, nx) array, or a callable f(x, y) sampled
    at cell centers. Zero-speed cells are marked Blocked; negative speeds are
    rejected.
    """
    if nx < 1 or ny < 1:
        raise ValueError(f"grid must have at least one cell, got {nx}x{ny}")
    if dx <= 0 or dy <= 0:
        raise ValueError(f"grid spacing must be positive, got dx={dx}, dy={dy}")

    if callable(speed):
        x = origin[0] + dx * np.arange(nx)
        y = origin[1] + dy * np.arange(ny)
        xx, yy = np.meshgrid(x, y)
        f = np.vectorize(speed, otypes=[np.float64])(xx, yy)
    else:
        f = np.asarray(speed, dtype=np.float64)
        if f.ndim == 0:
            f = np.full((ny, nx), float(f))
    if f.shape != (ny, nx):
        raise ValueError(f"speed array shape {f.shape} does not match grid {(ny, nx)}")
    if np.any(f < 0) or not np.all(np.isfinite(f)):
        raise ValueError("speed must be finite and non-negative everywhere")

    phi = np.full((ny, nx), INF)
    state = np.full((ny, nx), CellState.FAR, dtype=np.uint8)
    state[f == 0.0] = CellState.BLOCKED
    return Grid(nx, ny, float(dx), float(dy), (float(origin[0]), float(origin[1])), phi, f.copy(), state)


def neighbor_value(grid: Grid, cell: CellIndex, direction: Direction) -> float:
    """phi of the axis neighbor; +inf when out of bounds or Blocked."""
    di, dj = _OFFSETS[Direction(direction)]
    i, j = cell[0] + di, cell[1] + dj
    if not grid.in_bounds(i, j):
        return INF
    if grid.state[j, i] == CellState.BLOCKED:
        return INF
    return float(grid.phi[j, i])


def seed_point(grid: Grid, cell: CellIndex, value: float) -> BoundaryCondition:
    """Boundary condition pinning a single cell."""
    i, j = int(cell[0]), int(cell[1])
    if not grid.in_bounds(i, j):
        raise ValueError(f"seed cell ({i}, {j}) is outside the {grid.nx}x{grid.ny} grid")
    if grid.state[j, i] == CellState.BLOCKED:
        raise ValueError(f"seed cell ({i}, {j}) is blocked (zero speed)")
    return BoundaryCondition(((CellIndex(i, j), float(value)),))


def seed_circle(grid: Grid, center: tuple[float, float], radius: float) -> BoundaryCondition:
    """Seed every cell inside a circle with the signed distance to its rim.

    Cells whose centers satisfy ||x - center|| <= radius get the (non-positive)
    value ||x - center|| - radius. If no cell center falls inside, the nearest
    non-blocked cell is seeded with its (positive) signed distance so the front
    still has an anchor.
    """
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    cx, cy = center
    xx, yy = grid.cell_centers()
    dist = np.hypot(xx - cx, yy - cy)
    free = grid.state != CellState.BLOCKED
    inside = (dist <= radius) & free

    seeds = []
    if np.any(inside):
        jj, ii = np.nonzero(inside)
        for i, j in zip(ii.tolist(), jj.tolist()):
            seeds.append((CellIndex(i, j), float(dist[j, i] - radius)))
    else:
        if not np.any(free):
            raise ValueError("cannot seed a fully blocked grid")
        masked = np.where(free, dist, INF)
        flat = int(np.argmin(masked))
        j, i = divmod(flat, grid.nx)
        seeds.append((CellIndex(i, j), float(dist[j, i] - radius)))
    return BoundaryCondition(tuple(seeds))


def apply_boundary(grid: Grid, bc: BoundaryCondition) -> None:
    """Write seed values into phi and mark them Source.

    Every solver calls this first; seeds are immutable afterwards.
    """
    if len(bc) == 0:
        raise ValueError("boundary condition has no seeds")
    for cell, value in bc.seeds:
        i, j = cell
        if not grid.in_bounds(i, j):
            raise ValueError(f"seed cell ({i}, {j}) is outside the {grid.nx}x{grid.ny} grid")
        if grid.state[j, i] == CellState.BLOCKED:
            raise ValueError(f"seed cell ({i}, {j}) is blocked (zero speed)")
    for cell, value in bc.seeds:
        i, j = cell
        grid.phi[j, i] = value
        grid.state[j, i] = CellState.SOURCE


def source_mask(grid: Grid) -> np.ndarray:
    return grid.state == CellState.SOURCE


def blocked_mask(grid: Grid) -> np.ndarray:
    return grid.state == CellState.BLOCKED


def reset_field(grid: Grid) -> None:
    """Clear phi and solver state, keeping speed and Blocked flags."""
    grid.phi.fill(INF)
    keep = grid.state == CellState.BLOCKED
    grid.state.fill(CellState.FAR)
    grid.state[keep] = CellState.BLOCKED
