"""Godunov upwind updates for ||grad phi|| = 1/F on uniform grids.

Each update solves the discretized equation at one cell given the smaller of
its two neighbors per axis (phi_minx, phi_miny[, phi_minz]), the local front
speed f, and the grid spacing:

    sum_axes [ (phi - phi_min_axis)^+ / h_axis ]^2  =  1 / f^2

The closed-form branch per dimensionality (how many axes contribute) is picked
by a spread guard and then verified: a quadratic root must sit at or above
every neighbor value it used (all positive parts active) and below the next
sorted neighbor (excluded parts inactive). A root failing the check moves to
the adjacent branch, so the returned value always satisfies the positive-part
equation exactly, up to rounding, for any speed. Tiny negative discriminants
from rounding near a branch boundary (>= -1e-12 of the discriminant scale)
clamp to zero; larger ones demote.

+inf neighbor values force the lower-dimensional branches naturally; the
update is +inf only when every neighbor value is +inf.
"""
from __future__ import annotations

import math

INF = float("inf")

_SQRT2 = math.sqrt(2.0)
_DISC_CLAMP = 1e-12


def _check_positive(f: float, *spacings: float) -> None:
    if not f > 0.0:
        raise ValueError(f"front speed must be positive, got {f}")
    for h in spacings:
        if not h > 0.0:
            raise ValueError(f"grid spacing must be positive, got {h}")


def update_2d_uniform(phi_minx: float, phi_miny: float, f: float, delta: float) -> float:
    """Updated phi on a square grid (dx = dy = delta)."""
    _check_positive(f, delta)
    a, b = phi_minx, phi_miny
    lo = a if a <= b else b
    if lo == INF:
        return INF
    d = delta / f
    hi = b if a <= b else a
    if hi == INF:
        return lo + d
    diff = hi - lo
    if diff > _SQRT2 * d:
        return lo + d
    disc = 2.0 * d * d - diff * diff
    if disc < -_DISC_CLAMP * (2.0 * d * d):
        return lo + d
    root = 0.5 * (a + b + math.sqrt(disc if disc > 0.0 else 0.0))
    if root >= hi:
        return root
    return lo + d


def update_2d_aniso(phi_minx: float, phi_miny: float, f: float, dx: float, dy: float) -> float:
    """Updated phi on a rectangular grid (dx and dy may differ)."""
    _check_positive(f, dx, dy)
    a, b = phi_minx, phi_miny
    if a == INF and b == INF:
        return INF
    if b == INF:
        return a + dx / f
    if a == INF:
        return b + dy / f
    dx2 = dx * dx
    dy2 = dy * dy
    s2 = (dx2 + dy2) / (f * f)
    s = math.sqrt(s2)
    diff = a - b
    if diff > s:
        return b + dy / f
    if -diff > s:
        return a + dx / f
    disc = s2 - diff * diff
    if disc < -_DISC_CLAMP * s2:
        return b + dy / f if a > b else a + dx / f
    root = (a * dy2 + b * dx2 + (dx * dy) * math.sqrt(disc if disc > 0.0 else 0.0)) / (dx2 + dy2)
    if root >= a and root >= b:
        return root
    # Root fell below the larger neighbor: only the smaller one is upwind.
    return b + dy / f if a > b else a + dx / f


def update_3d_uniform(
    phi_minx: float, phi_miny: float, phi_minz: float, f: float, delta: float
) -> float:
    """Updated phi on a cubic grid (dx = dy = dz = delta).

    Neighbors are sorted a1 <= a2 <= a3; the guard picks the entry branch by
    spread against delta, then the verified walk settles on the unique branch
    whose root satisfies the positive-part equation: an invalid quadratic root
    demotes (fewer axes), a root overshooting the next neighbor promotes.
    """
    _check_positive(f, delta)
    a1, a2, a3 = sorted((phi_minx, phi_miny, phi_minz))
    if a1 == INF:
        return INF
    d = delta / f

    if a3 - a1 < delta:
        k = 3
    elif a2 - a1 < delta:
        k = 2
    else:
        k = 1

    # At a branch boundary the adjacent roots agree to rounding, so revisiting
    # a branch means we sit exactly on one; accept the current root then.
    visited = set()
    while True:
        visited.add(k)
        if k == 3:
            # Solve for root - a1: shifting by the smallest neighbor keeps
            # every discriminant term at the d^2 scale (a kept root has all
            # neighbors within d of a1), where the unshifted sum-of-squares
            # form cancels catastrophically for large nearly-equal neighbors.
            b2 = a2 - a1
            b3 = a3 - a1
            s = b2 + b3
            disc = s * s - 3.0 * (b2 * b2 + b3 * b3 - d * d)
            if disc < -_DISC_CLAMP * (3.0 * d * d):
                k = 2
                continue
            root = a1 + (s + math.sqrt(disc if disc > 0.0 else 0.0)) / 3.0
            if root >= a3 or 2 in visited:
                return root
            k = 2
        elif k == 2:
            if a2 == INF:
                k = 1
                continue
            diff = a2 - a1
            disc = 2.0 * d * d - diff * diff
            if disc < -_DISC_CLAMP * (2.0 * d * d):
                k = 1
                continue
            root = 0.5 * (a1 + a2 + math.sqrt(disc if disc > 0.0 else 0.0))
            if root < a2 and 1 not in visited:
                k = 1
                continue
            if root > a3 and 3 not in visited:
                k = 3
                continue
            return root
        else:
            root = a1 + d
            if root > a2 and 2 not in visited:
                k = 2
                continue
            return root


def residual_2d(phi: float, phi_minx: float, phi_miny: float, f: float, dx: float, dy: float) -> float:
    """Positive-part equation residual; 0 at the exact upwind solution."""
    px = max(phi - phi_minx, 0.0) / dx
    py = max(phi - phi_miny, 0.0) / dy
    return px * px + py * py - 1.0 / (f * f)


def residual_3d(
    phi: float, phi_minx: float, phi_miny: float, phi_minz: float, f: float, delta: float
) -> float:
    px = max(phi - phi_minx, 0.0) / delta
    py = max(phi - phi_miny, 0.0) / delta
    pz = max(phi - phi_minz, 0.0) / delta
    return px * px + py * py + pz * pz - 1.0 / (f * f)
