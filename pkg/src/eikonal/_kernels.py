"""Vectorized counterparts of the scalar upwind updates.

The iterative solvers recompute many cells per phase; these helpers gather
neighbor minima through an inf-padded copy of phi and evaluate the same
branch logic as local_solver element-wise. Operation order matches the scalar
code exactly so a batched result is bit-identical to a scalar loop, which is
what makes worker-count determinism cheap to guarantee.
"""
from __future__ import annotations

import math

import numpy as np

from .local_solver import _DISC_CLAMP

INF = float("inf")
_SQRT2 = math.sqrt(2.0)


def padded_phi(phi: np.ndarray) -> np.ndarray:
    """Copy of phi with a one-cell +inf border (snapshot for one phase)."""
    ny, nx = phi.shape
    p = np.full((ny + 2, nx + 2), INF)
    p[1:-1, 1:-1] = phi
    return p


def neighbor_mins(padded: np.ndarray, cells: np.ndarray, nx: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-axis neighbor minima for linear cell indices.

    Out-of-bounds reads hit the +inf border; blocked cells are +inf in phi
    itself, so no extra masking is needed.
    """
    j, i = np.divmod(cells, nx)
    xmin = np.minimum(padded[j + 1, i], padded[j + 1, i + 2])
    ymin = np.minimum(padded[j, i + 1], padded[j + 2, i + 1])
    return xmin, ymin


def update_batch(xmin: np.ndarray, ymin: np.ndarray, f: np.ndarray, dx: float, dy: float) -> np.ndarray:
    if dx == dy:
        return _update_uniform_batch(xmin, ymin, f, dx)
    return _update_aniso_batch(xmin, ymin, f, dx, dy)


def _update_uniform_batch(a: np.ndarray, b: np.ndarray, f: np.ndarray, delta: float) -> np.ndarray:
    d = delta / f
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    one = lo + d
    with np.errstate(invalid="ignore"):
        diff = hi - lo  # nan when both neighbors are +inf
        take_two = diff <= _SQRT2 * d
        disc = 2.0 * d * d - diff * diff
        root = 0.5 * (a + b + np.sqrt(np.maximum(disc, 0.0)))
        valid = take_two & (disc >= -_DISC_CLAMP * (2.0 * d * d)) & (root >= hi)
    return np.where(valid, root, one)


def _update_aniso_batch(
    a: np.ndarray, b: np.ndarray, f: np.ndarray, dx: float, dy: float
) -> np.ndarray:
    one_x = a + dx / f  # only the x neighbor is upwind
    one_y = b + dy / f
    dx2 = dx * dx
    dy2 = dy * dy
    s2 = (dx2 + dy2) / (f * f)
    with np.errstate(invalid="ignore"):
        s = np.sqrt(s2)
        diff = a - b
        disc = s2 - diff * diff
        root = (a * dy2 + b * dx2 + (dx * dy) * np.sqrt(np.maximum(disc, 0.0))) / (dx2 + dy2)
        drop_larger = np.where(a > b, one_y, one_x)
        valid = (
            np.isfinite(a)
            & np.isfinite(b)
            & ~(diff > s)
            & ~(-diff > s)
            & (disc >= -_DISC_CLAMP * s2)
            & (root >= a)
            & (root >= b)
        )
        out = np.where(valid, root, drop_larger)
        out = np.where(np.isinf(a) & np.isfinite(b), one_y, out)
        out = np.where(np.isfinite(a) & np.isinf(b), one_x, out)
        out = np.where(np.isinf(a) & np.isinf(b), INF, out)
    return out
