"""Static figure rendering for fields, masks, and benchmark reports.

Figures are written straight to files (Agg backend); 3D fields are
shown as maximum-intensity projections along the last axis.  Overlays
are drawn in grid index coordinates.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.collections import LineCollection

from .grid import GridSpec


def _field_image(grid: GridSpec, values: np.ndarray) -> np.ndarray:
    if grid.dimension == 2:
        n1, n2 = grid.extents
        return values.reshape(n2, n1)
    n1, n2, n3 = grid.extents
    return values.reshape(n3, n2, n1).max(axis=0)


def _overlay_segments(ax, grid: GridSpec, coords: np.ndarray, edge_pairs: np.ndarray, color: str) -> None:
    if len(edge_pairs) == 0:
        return
    spacing = np.asarray(grid.spacing)
    pts = coords / spacing  # back to index coordinates
    segs = [(pts[u][:2], pts[v][:2]) for u, v in edge_pairs]
    ax.add_collection(LineCollection(segs, colors=color, linewidths=1.2))


def save_field_figure(
    path: str,
    grid: GridSpec,
    values: np.ndarray,
    graph_coords: np.ndarray | None = None,
    graph_edges: np.ndarray | None = None,
    title: str | None = None,
) -> None:
    """Render the field as a heat map, optionally with a graph overlay.

    ``graph_coords`` holds one coordinate row per graph vertex and
    ``graph_edges`` indexes rows of that array.
    """
    fig, ax = plt.subplots(figsize=(6, 6))
    im = ax.imshow(_field_image(grid, values), origin="lower", cmap="magma")
    fig.colorbar(im, ax=ax, shrink=0.8)
    if graph_coords is not None and graph_edges is not None:
        _overlay_segments(ax, grid, graph_coords, graph_edges, "red")
    if title:
        ax.set_title(title)
    ax.set_xlabel("axis 0")
    ax.set_ylabel("axis 1")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_mask_figure(path: str, grid: GridSpec, mask_values: np.ndarray, title: str | None = None) -> None:
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.imshow(_field_image(grid, mask_values.astype(float)), origin="lower", cmap="gray")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_bench_figure(path: str, stage_seconds: dict[str, float], title: str | None = None) -> None:
    """Bar chart of the timed pipeline stages."""
    fig, ax = plt.subplots(figsize=(6, 4))
    names = list(stage_seconds)
    times = [stage_seconds[k] for k in names]
    ax.bar(names, times, color=["#777777", "#cc4444", "#4477cc"][: len(names)])
    ax.set_ylabel("seconds")
    if title:
        ax.set_title(title)
    plt.setp(ax.get_xticklabels(), rotation=20, ha="right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
