"""Shared solver output container."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class RunStats:
    iterations: int = 0
    solver_calls: int = 0
    peak_active: int = 0
    peak_remedy: int = 0
    wall_time: float = 0.0
    # Per-iteration active-list sizes where the solver tracks one; the sum
    # equals solver_calls for methods whose only calls target active cells.
    active_history: list[int] | None = None


@dataclass
class SolverResult:
    phi: np.ndarray
    stats: RunStats
    # Order in which a marching solver accepted cells (linear indices);
    # None for iterative methods.
    accepted_order: np.ndarray | None = field(default=None, repr=False)
