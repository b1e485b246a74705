"""Shared builders for test fixtures: small complexes and hidden graphs."""

from functools import lru_cache

import numpy as np

from morsetrace import GridSpec, HiddenGraph, ScalarField, SimplicialComplex, build_grid_complex


def path_complex():
    """Three vertices a-b-c joined by two edges."""
    return SimplicialComplex.from_simplices(
        [[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]], edges=[(0, 1), (1, 2)]
    )


def path_field():
    return ScalarField(np.array([0.0, 2.0, 1.0]))


def filled_triangle_complex():
    return SimplicialComplex.from_simplices(
        [[0.0, 0.0], [1.0, 0.0], [0.5, 1.0]],
        edges=[(0, 1), (0, 2), (1, 2)],
        triangles=[(0, 1, 2)],
    )


def cycle_complex(k=4):
    """A k-cycle with no triangles."""
    coords = [[np.cos(2 * np.pi * i / k), np.sin(2 * np.pi * i / k)] for i in range(k)]
    edges = [(i, (i + 1) % k) for i in range(k)]
    return SimplicialComplex.from_simplices(coords, edges=edges)


@lru_cache(maxsize=None)
def grid_complex(*extents):
    return build_grid_complex(GridSpec(extents))


def random_field(cx, rng, tied=False):
    if tied:
        return ScalarField(rng.integers(0, 4, cx.n_vertices).astype(float))
    return ScalarField(rng.random(cx.n_vertices))


def loop_chain_graph(n_loops, extents, shift=(0, 0)):
    """2D hidden graph: ``n_loops`` rectangles in a row joined by arcs."""
    n1, n2 = extents
    dx, dy = shift
    margin, gap = 6, 8
    width = ((n1 - 2 * margin) - (n_loops - 1) * gap) // n_loops
    y0, y1 = margin + dy, n2 - 1 - margin + dy
    ym = (y0 + y1) // 2
    nodes, arcs = [], []

    def add(p):
        nodes.append(p)
        return len(nodes) - 1

    prev_east = None
    for i in range(n_loops):
        x0 = margin + i * (width + gap) + dx
        x1 = x0 + width
        sw, se, ne, nw = add((x0, y0)), add((x1, y0)), add((x1, y1)), add((x0, y1))
        east, west = add((x1, ym)), add((x0, ym))
        ring = [sw, se, east, ne, nw, west]
        for a in range(6):
            arcs.append((ring[a], ring[(a + 1) % 6]))
        if prev_east is not None:
            arcs.append((prev_east, west))
        prev_east = east
    return HiddenGraph(np.array(nodes, float), tuple(arcs))


def loop_stack_graph_3d(n_loops, extents, shift=(0, 0, 0)):
    """3D hidden graph: rectangles stacked in z, joined by vertical arcs."""
    n1, n2, n3 = extents
    dx, dy, dz = shift
    margin = 6
    x0, x1 = margin + dx, n1 - 1 - margin + dx
    y0, y1 = margin + dy, n2 - 1 - margin + dy
    zs = [int(round(n3 / 2))] if n_loops == 1 else [
        int(round(margin + 1 + i * (n3 - 2 * margin - 3) / (n_loops - 1))) for i in range(n_loops)
    ]
    zs = [z + dz for z in zs]
    nodes, arcs = [], []

    def add(p):
        nodes.append(p)
        return len(nodes) - 1

    prev_corner = None
    for z in zs:
        sw, se, ne, nw = (
            add((x0, y0, z)), add((x1, y0, z)), add((x1, y1, z)), add((x0, y1, z))
        )
        ring = [sw, se, ne, nw]
        for a in range(4):
            arcs.append((ring[a], ring[(a + 1) % 4]))
        if prev_corner is not None:
            arcs.append((prev_corner, sw))
        prev_corner = sw
    return HiddenGraph(np.array(nodes, float), tuple(arcs))


def tiled_loop_graph(extents, pitch=32, margin=6, size=20):
    """Rows and columns of rectangle loops; loop count scales with area."""
    n1, n2 = extents
    nodes, arcs = [], []

    def add(p):
        nodes.append(p)
        return len(nodes) - 1

    cols = (n1 - 2 * margin + (pitch - size)) // pitch
    rows = (n2 - 2 * margin + (pitch - size)) // pitch
    mids = {}
    for r in range(rows):
        for c in range(cols):
            x0, y0 = margin + c * pitch, margin + r * pitch
            x1, y1 = x0 + size, y0 + size
            xm, ym = (x0 + x1) // 2, (y0 + y1) // 2
            sw, se, ne, nw = add((x0, y0)), add((x1, y0)), add((x1, y1)), add((x0, y1))
            east, west = add((x1, ym)), add((x0, ym))
            north, south = add((xm, y1)), add((xm, y0))
            ring = [sw, south, se, east, ne, north, nw, west]
            for a in range(8):
                arcs.append((ring[a], ring[(a + 1) % 8]))
            mids[(r, c)] = dict(e=east, w=west, n=north, s=south)
    for r in range(rows):
        for c in range(cols - 1):
            arcs.append((mids[(r, c)]["e"], mids[(r, c + 1)]["w"]))
    for r in range(rows - 1):
        arcs.append((mids[(r, 0)]["n"], mids[(r + 1, 0)]["s"]))
    return HiddenGraph(np.array(nodes, float), tuple(arcs)), rows * cols
