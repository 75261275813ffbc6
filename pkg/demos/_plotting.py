"""Shared optional-plotting helper for the demo scripts.

The demos print their findings to stdout; when matplotlib is installed they
also save figures under ``demos/output/``. Without matplotlib every demo
still runs to completion and just notes that plots were skipped.
"""
from __future__ import annotations

import os

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:  # pragma: no cover - depends on the host environment
    plt = None

OUTPUT_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "output")


def save_field_plot(filename, grid, title, path_points=None, contour_levels=30):
    """Contour the travel-time field (and optionally a path) to a PNG.

    Returns the saved path, or None when matplotlib is unavailable.
    """
    if plt is None:
        return None
    os.makedirs(OUTPUT_DIR, exist_ok=True)
    import numpy as np

    x0, y0 = grid.origin
    xs = x0 + grid.dx * np.arange(grid.nx)
    ys = y0 + grid.dy * np.arange(grid.ny)
    masked = np.ma.masked_invalid(grid.phi)

    fig, ax = plt.subplots(figsize=(6, 5))
    mesh = ax.pcolormesh(xs, ys, masked, shading="nearest", cmap="viridis")
    ax.contour(xs, ys, masked, levels=contour_levels, colors="white", linewidths=0.4)
    if path_points:
        px = [p[0] for p in path_points]
        py = [p[1] for p in path_points]
        ax.plot(px, py, color="red", linewidth=1.8)
        ax.plot(px[0], py[0], "r^", markersize=8)
        ax.plot(px[-1], py[-1], "r*", markersize=11)
    fig.colorbar(mesh, ax=ax, label="travel time")
    ax.set_title(title)
    ax.set_aspect("equal")
    out = os.path.join(OUTPUT_DIR, filename)
    fig.savefig(out, dpi=130, bbox_inches="tight")
    plt.close(fig)
    return out


def note_plot(saved):
    if saved is None:
        print("  (matplotlib not installed; plot skipped)")
    else:
        print(f"  plot saved to {saved}")
