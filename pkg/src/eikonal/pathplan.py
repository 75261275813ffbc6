"""Barrier maps and shortest paths over a solved travel-time field.

A barrier map is a boolean occupancy grid ingested from plain PGM (P2) or
CSV; blocked cells get speed 0 so fronts cannot enter them. Once a solver
has produced the travel-time field from a source point, the shortest path
from any query point follows steepest descent: fixed-length steps along the
negative normalized gradient of the bilinearly interpolated field until the
walk enters a source cell.

Blocked cells and cells the front never reached (phi = +inf, e.g. the
barrier interior) carry no field information: gradients fall back to
one-sided differences next to them, interpolation renormalizes its weights
over the remaining usable corners, and steps that would land inside them
slide along the wall instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .grid import CellIndex, CellState, Grid

_FREE_VALUE = 255


@dataclass
class BarrierMap:
    """Boolean occupancy grid: ``blocked[j, i]`` is True inside a barrier."""

    width: int
    height: int
    blocked: np.ndarray

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError(f"map dimensions must be >= 1, got {self.width}x{self.height}")
        if self.blocked.shape != (self.height, self.width):
            raise ValueError(
                f"blocked array shape {self.blocked.shape} does not match "
                f"declared dimensions {self.height}x{self.width}"
            )


def _parse_pgm(text: str, path: str) -> BarrierMap:
    # Token stream with line tracking; '#' starts a comment to end of line.
    tokens: list[tuple[str, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        for tok in body.split():
            tokens.append((tok, lineno))

    def take(what: str) -> tuple[str, int]:
        if not tokens:
            raise ValueError(f"{path}: truncated PGM, expected {what}")
        return tokens.pop(0)

    magic, lineno = take("magic number")
    if magic != "P2":
        raise ValueError(f"{path}:{lineno}: expected plain PGM magic 'P2', got {magic!r}")

    dims = []
    for what in ("width", "height", "maxval"):
        tok, lineno = take(what)
        try:
            value = int(tok)
        except ValueError:
            raise ValueError(f"{path}:{lineno}: {what} is not an integer: {tok!r}") from None
        if value <= 0:
            raise ValueError(f"{path}:{lineno}: {what} must be positive, got {value}")
        dims.append((value, lineno))
    width, height, maxval = dims[0][0], dims[1][0], dims[2][0]

    pixels = np.empty(width * height, dtype=np.int64)
    for k in range(width * height):
        tok, lineno = take(f"pixel {k} of {width * height}")
        try:
            value = int(tok)
        except ValueError:
            raise ValueError(f"{path}:{lineno}: pixel value is not an integer: {tok!r}") from None
        if not 0 <= value <= maxval:
            raise ValueError(f"{path}:{lineno}: pixel value {value} outside 0..{maxval}")
        pixels[k] = value
    if tokens:
        tok, lineno = tokens[0]
        raise ValueError(f"{path}:{lineno}: trailing data after {width * height} pixels: {tok!r}")

    blocked = (pixels == 0).reshape(height, width)
    return BarrierMap(width=width, height=height, blocked=blocked)


def _parse_csv_map(text: str, path: str) -> BarrierMap:
    rows: list[list[int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        row = []
        for col, tok in enumerate(line.split(","), start=1):
            tok = tok.strip()
            if tok not in ("0", "1"):
                raise ValueError(f"{path}:{lineno}: column {col}: expected 0 or 1, got {tok!r}")
            row.append(int(tok))
        if rows and len(row) != len(rows[0]):
            raise ValueError(
                f"{path}:{lineno}: row has {len(row)} columns, expected {len(rows[0])}"
            )
        rows.append(row)
    if not rows:
        raise ValueError(f"{path}: empty map file")
    blocked = np.asarray(rows, dtype=bool)
    return BarrierMap(width=blocked.shape[1], height=blocked.shape[0], blocked=blocked)


def load_barrier_map(path: str) -> BarrierMap:
    """Read an occupancy grid: PGM P2 (blocked ⇔ pixel 0) or CSV (blocked ⇔ 1)."""
    lower = str(path).lower()
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    if lower.endswith(".pgm"):
        return _parse_pgm(text, str(path))
    if lower.endswith(".csv"):
        return _parse_csv_map(text, str(path))
    raise ValueError(f"{path}: unknown map extension (expected .pgm or .csv)")


def save_barrier_map(bmap: BarrierMap, path: str) -> None:
    """Write a map in the format implied by the extension (.pgm or .csv)."""
    lower = str(path).lower()
    if lower.endswith(".pgm"):
        lines = ["P2", f"{bmap.width} {bmap.height}", str(_FREE_VALUE)]
        for j in range(bmap.height):
            lines.append(" ".join("0" if bmap.blocked[j, i] else str(_FREE_VALUE) for i in range(bmap.width)))
        payload = "\n".join(lines) + "\n"
    elif lower.endswith(".csv"):
        payload = "\n".join(
            ",".join("1" if bmap.blocked[j, i] else "0" for i in range(bmap.width))
            for j in range(bmap.height)
        ) + "\n"
    else:
        raise ValueError(f"{path}: unknown map extension (expected .pgm or .csv)")
    with open(path, "w", encoding="ascii") as fh:
        fh.write(payload)


def barrier_speed(bmap: BarrierMap) -> np.ndarray:
    """Speed field for an occupancy grid: 0 inside barriers, 1 elsewhere."""
    return np.where(bmap.blocked, 0.0, 1.0)


def synthetic_barrier_map(n: int) -> BarrierMap:
    """Deterministic n×n two-wall fixture used by the bundled examples.

    Two full-width walls with staggered gaps: the straight segment between
    the endpoints from :func:`synthetic_endpoints` clears both gaps with a
    comfortable margin, while the wall shadows force characteristics that
    alternate direction (which is what makes single-pass sweeping insufficient).
    """
    if n < 16:
        raise ValueError(f"synthetic map needs n >= 16, got {n}")
    blocked = np.zeros((n, n), dtype=bool)
    wall_a = round(n / 3)
    gap_a = (round(7 * n / 16), round(3 * n / 4))
    wall_b = round(2 * n / 3)
    gap_b = (round(n / 8), round(7 * n / 16))
    blocked[wall_a, :] = True
    blocked[wall_a, gap_a[0]:gap_a[1]] = False
    blocked[wall_b, :] = True
    blocked[wall_b, gap_b[0]:gap_b[1]] = False
    return BarrierMap(width=n, height=n, blocked=blocked)


def synthetic_endpoints(n: int) -> tuple[CellIndex, CellIndex]:
    """(start, goal) cell indices matching :func:`synthetic_barrier_map`."""
    start = CellIndex(round(5 * n / 8), round(n / 6))
    goal = CellIndex(round(n / 4), round(5 * n / 6))
    return start, goal


@dataclass
class PathPolyline:
    """Steepest-descent path: query point first, source cell last."""

    points: list[tuple[float, float]]
    phi: list[float] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.points)

    def to_csv(self, path: str) -> None:
        with open(path, "w", encoding="ascii") as fh:
            for (x, y), value in zip(self.points, self.phi):
                fh.write(f"{x!r},{y!r},{value!r}\n")


def _node_gradients(work: np.ndarray, bad: np.ndarray, dx: float, dy: float):
    """Per-node field gradients that never read across walls.

    Central differences where both axis neighbors are usable, one-sided
    toward the usable side when the other neighbor is blocked/unreached or
    out of bounds, zero when the node is isolated on that axis (the other
    axis then drives the walk). Bad nodes get zero gradients; they carry no
    field information.
    """
    pad_w = np.pad(work, 1, mode="edge")
    pad_b = np.pad(bad, 1, constant_values=True)

    def one_axis(w_lo, w_hi, b_lo, b_hi, h):
        central = (w_hi - w_lo) / (2.0 * h)
        from_hi = (w_hi - work) / h
        from_lo = (work - w_lo) / h
        g = np.where(b_lo, np.where(b_hi, 0.0, from_hi), np.where(b_hi, from_lo, central))
        g[bad] = 0.0
        return g

    gx = one_axis(pad_w[1:-1, :-2], pad_w[1:-1, 2:], pad_b[1:-1, :-2], pad_b[1:-1, 2:], dx)
    gy = one_axis(pad_w[:-2, 1:-1], pad_w[2:, 1:-1], pad_b[:-2, 1:-1], pad_b[2:, 1:-1], dy)
    return gx, gy


def _masked_bilinear(arr: np.ndarray, usable: np.ndarray, u: float, v: float) -> float | None:
    """Bilinear sample over the usable corner nodes, weights renormalized.

    Returns None when no usable corner has weight, i.e. the sample point is
    surrounded by walls/unreached cells.
    """
    ny, nx = arr.shape
    i0 = min(max(int(math.floor(u)), 0), nx - 2)
    j0 = min(max(int(math.floor(v)), 0), ny - 2)
    fu = min(max(u - i0, 0.0), 1.0)
    fv = min(max(v - j0, 0.0), 1.0)
    total = 0.0
    acc = 0.0
    for jj, ii, w in (
        (j0, i0, (1 - fu) * (1 - fv)),
        (j0, i0 + 1, fu * (1 - fv)),
        (j0 + 1, i0, (1 - fu) * fv),
        (j0 + 1, i0 + 1, fu * fv),
    ):
        if usable[jj, ii]:
            total += w
            acc += w * arr[jj, ii]
    if total <= 0.0:
        return None
    return float(acc / total)


def gradient_descent_path(grid: Grid, start: tuple[float, float], step: float) -> PathPolyline:
    """Walk fixed-length steps down the interpolated travel-time surface.

    Each step moves along the negative normalized gradient; when the full
    step would enter a wall or fail to decrease the value, the axis
    projections of the step are tried instead, which lets the walk slide
    along walls through narrow corridors. Values and gradients are sampled
    only from reachable free cells (one-sided differences next to walls), so
    wall sentinels never distort the surface. Terminates when the walk
    enters a source cell; raises if the start cell is blocked or was never
    reached, if the step budget of 4*(nx+ny)/step is exhausted, or if no
    candidate step decreases the value (a stalled descent).
    """
    nx, ny = grid.nx, grid.ny
    if nx < 2 or ny < 2:
        raise ValueError("path extraction needs at least a 2x2 grid")
    if not 0 < step <= min(grid.dx, grid.dy):
        raise ValueError(f"step must be in (0, min(dx, dy)] = (0, {min(grid.dx, grid.dy)}], got {step}")
    if not (grid.state == CellState.SOURCE).any():
        raise ValueError("grid has no source cells to descend toward")

    x0, y0 = grid.origin
    bad = (grid.state == CellState.BLOCKED) | ~np.isfinite(grid.phi)
    if bad.all():
        raise ValueError("field has no finite values; solve the grid first")
    usable = ~bad
    work = np.where(bad, 0.0, grid.phi)  # bad-node entries are never sampled
    gx, gy = _node_gradients(work, bad, grid.dx, grid.dy)

    def containing_cell(x: float, y: float) -> tuple[int, int]:
        i = min(max(int(round((x - x0) / grid.dx)), 0), nx - 1)
        j = min(max(int(round((y - y0) / grid.dy)), 0), ny - 1)
        return i, j

    def sample(arr: np.ndarray, x: float, y: float) -> float | None:
        return _masked_bilinear(arr, usable, (x - x0) / grid.dx, (y - y0) / grid.dy)

    x, y = float(start[0]), float(start[1])
    i, j = containing_cell(x, y)
    if abs(x - (x0 + i * grid.dx)) > grid.dx or abs(y - (y0 + j * grid.dy)) > grid.dy:
        raise ValueError(f"start point {start} lies outside the grid domain")
    if grid.state[j, i] == CellState.BLOCKED:
        raise ValueError(f"start point {start} lies in a blocked cell ({i}, {j})")
    if not np.isfinite(grid.phi[j, i]):
        raise ValueError(f"start point {start} lies in an unreached cell ({i}, {j})")

    xmax = x0 + (nx - 1) * grid.dx
    ymax = y0 + (ny - 1) * grid.dy
    value = sample(work, x, y)
    assert value is not None  # the start cell is usable
    path = PathPolyline(points=[(x, y)], phi=[value])
    budget = int(math.ceil(4 * (nx + ny) / step))
    for _ in range(budget):
        i, j = containing_cell(x, y)
        if grid.state[j, i] == CellState.SOURCE:
            return path
        dvx = sample(gx, x, y)
        dvy = sample(gy, x, y)
        norm = math.hypot(dvx, dvy) if dvx is not None and dvy is not None else 0.0
        if not math.isfinite(norm) or norm == 0.0:
            raise RuntimeError(f"descent stalled at ({x}, {y}): vanishing gradient")
        mx = step * dvx / norm
        my = step * dvy / norm
        best = None
        for cand_x, cand_y in ((x - mx, y - my), (x - mx, y), (x, y - my)):
            cand_x = min(max(cand_x, x0), xmax)
            cand_y = min(max(cand_y, y0), ymax)
            ci, cj = containing_cell(cand_x, cand_y)
            if bad[cj, ci]:
                continue
            cand_value = sample(work, cand_x, cand_y)
            if cand_value is None or not cand_value < value:
                continue
            if best is None or cand_value < best[0]:
                best = (cand_value, cand_x, cand_y)
        if best is None:
            raise RuntimeError(
                f"descent stalled at ({x}, {y}): no step of length {step} decreases the value"
            )
        value, x, y = best
        path.points.append((x, y))
        path.phi.append(value)
    raise RuntimeError(f"descent exceeded step budget of {budget} steps without reaching a source")
