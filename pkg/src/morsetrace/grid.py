"""Triangulated grid complexes over 2D/3D density samples.

Every cubic cell of a regular vertex grid is split along its main
diagonal (the Kuhn/Freudenthal subdivision) and only vertices, edges and
triangles are kept; graph extraction never needs anything above
dimension 2.  All structures here are immutable after construction and
safe for concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from .errors import InvalidFieldError, InvalidGridError, SimplexNotFoundError


@dataclass(frozen=True)
class GridSpec:
    """Regular vertex grid: per-axis vertex counts plus spacing.

    Vertex index = i0 + n0*i1 (+ n0*n1*i2): the first axis varies
    fastest, matching the on-disk field layout.
    """

    extents: tuple[int, ...]
    spacing: tuple[float, ...] | float = 1.0

    def __post_init__(self) -> None:
        extents = tuple(int(n) for n in self.extents)
        if len(extents) not in (2, 3):
            raise InvalidGridError(f"grid must have 2 or 3 axes, got {len(extents)}")
        if any(n < 2 for n in extents):
            raise InvalidGridError(f"every axis needs >= 2 vertices, got {extents}")
        spacing = self.spacing
        if np.isscalar(spacing):
            spacing = (float(spacing),) * len(extents)
        else:
            spacing = tuple(float(s) for s in spacing)
        if len(spacing) != len(extents):
            raise InvalidGridError("spacing must be a scalar or one value per axis")
        if any(s <= 0.0 or not np.isfinite(s) for s in spacing):
            raise InvalidGridError(f"spacing must be positive and finite, got {spacing}")
        object.__setattr__(self, "extents", extents)
        object.__setattr__(self, "spacing", spacing)

    @property
    def dimension(self) -> int:
        return len(self.extents)

    @property
    def n_vertices(self) -> int:
        out = 1
        for n in self.extents:
            out *= n
        return out

    @property
    def strides(self) -> tuple[int, ...]:
        out, s = [], 1
        for n in self.extents:
            out.append(s)
            s *= n
        return tuple(out)

    def vertex_index(self, coords):
        """Map integer grid coordinates (d,) or (k, d) to vertex ids."""
        c = np.asarray(coords, dtype=np.int64)
        idx = (c * np.asarray(self.strides, dtype=np.int64)).sum(axis=-1)
        return idx if c.ndim > 1 else int(idx)

    def index_coords(self) -> np.ndarray:
        """Integer grid coordinates of every vertex, shape (n, d)."""
        ids = np.arange(self.n_vertices)
        return np.stack(np.unravel_index(ids, self.extents, order="F"), axis=1)

    def positions(self) -> np.ndarray:
        return self.index_coords() * np.asarray(self.spacing)


@dataclass(frozen=True)
class ScalarField:
    """Per-vertex density samples."""

    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise InvalidFieldError(f"field values must be 1-D, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise InvalidFieldError("field values must be finite")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    def negated(self) -> "ScalarField":
        return ScalarField(-self.values)

    def pruned(self, threshold: float) -> "ScalarField":
        """Zero out every sample below ``threshold``.

        Optional denoising pre-filter; the complex keeps its full size.
        """
        out = self.values.copy()
        out[out < threshold] = 0.0
        return ScalarField(out)


def _validate_simplices(edges: np.ndarray, triangles: np.ndarray, n_vertices: int) -> None:
    if edges.size:
        if edges.min() < 0 or edges.max() >= n_vertices:
            raise ValueError("edge endpoint out of range")
        if np.any(edges[:, 0] >= edges[:, 1]):
            raise ValueError("edges must list endpoints in ascending order")
        keys = edges[:, 0] * n_vertices + edges[:, 1]
        if len(np.unique(keys)) != len(keys):
            raise ValueError("duplicate edges")
    if triangles.size:
        if np.any(triangles[:, 0] >= triangles[:, 1]) or np.any(triangles[:, 1] >= triangles[:, 2]):
            raise ValueError("triangles must list vertices in ascending order")


@dataclass(frozen=True)
class SimplicialComplex:
    """2-complex: vertices with coordinates, edges, triangles, incidence.

    ``edges`` rows and ``triangles`` rows hold ascending vertex ids and
    are sorted lexicographically, which fixes the dense per-dimension
    simplex indexing.
    """

    vertex_coords: np.ndarray
    edges: np.ndarray
    triangles: np.ndarray
    grid: GridSpec | None = None

    def __post_init__(self) -> None:
        coords = np.ascontiguousarray(self.vertex_coords, dtype=np.float64)
        edges = np.ascontiguousarray(self.edges, dtype=np.int64).reshape(-1, 2)
        triangles = np.ascontiguousarray(self.triangles, dtype=np.int64).reshape(-1, 3)
        object.__setattr__(self, "vertex_coords", coords)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "triangles", triangles)

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_coords)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    @property
    def n_simplices(self) -> int:
        return self.n_vertices + self.n_edges + self.n_triangles

    @property
    def dimension(self) -> int:
        return self.vertex_coords.shape[1]

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_triangles

    @cached_property
    def _edge_keys(self) -> np.ndarray:
        # rows are lex-sorted, so the encoded keys are ascending
        return self.edges[:, 0] * self.n_vertices + self.edges[:, 1]

    def edge_ids(self, pairs) -> np.ndarray:
        """Vectorized lookup of edges given as (k, 2) ascending vertex pairs."""
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        keys = pairs[:, 0] * self.n_vertices + pairs[:, 1]
        pos = np.searchsorted(self._edge_keys, keys)
        ok = (pos < self.n_edges) & (self._edge_keys[np.minimum(pos, self.n_edges - 1)] == keys)
        if not np.all(ok):
            bad = pairs[~ok][0]
            raise SimplexNotFoundError(f"no edge {tuple(bad)} in complex")
        return pos

    def edge_id(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return int(self.edge_ids([(u, v)])[0])

    @cached_property
    def tri_edges(self) -> np.ndarray:
        """Edge ids of each triangle's three boundary edges (ab, ac, bc)."""
        if self.n_triangles == 0:
            return np.empty((0, 3), dtype=np.int64)
        a, b, c = self.triangles[:, 0], self.triangles[:, 1], self.triangles[:, 2]
        ab = self.edge_ids(np.stack([a, b], axis=1))
        ac = self.edge_ids(np.stack([a, c], axis=1))
        bc = self.edge_ids(np.stack([b, c], axis=1))
        return np.stack([ab, ac, bc], axis=1)

    @cached_property
    def _vertex_edge_csr(self) -> tuple[np.ndarray, np.ndarray]:
        ends = self.edges.ravel()
        eids = np.repeat(np.arange(self.n_edges), 2)
        order = np.argsort(ends, kind="stable")
        counts = np.bincount(ends, minlength=self.n_vertices)
        offsets = np.concatenate([[0], np.cumsum(counts)])
        return offsets, eids[order]

    def vertex_edges(self, v: int) -> np.ndarray:
        """Edges incident to vertex ``v``."""
        offsets, data = self._vertex_edge_csr
        return data[offsets[v]:offsets[v + 1]]

    @cached_property
    def _edge_triangle_csr(self) -> tuple[np.ndarray, np.ndarray]:
        incident = self.tri_edges.ravel()
        tids = np.repeat(np.arange(self.n_triangles), 3)
        order = np.argsort(incident, kind="stable")
        counts = np.bincount(incident, minlength=self.n_edges) if incident.size else np.zeros(self.n_edges, dtype=np.int64)
        offsets = np.concatenate([[0], np.cumsum(counts)])
        return offsets, tids[order]

    def edge_triangles(self, e: int) -> np.ndarray:
        """Triangles incident to edge ``e``."""
        offsets, data = self._edge_triangle_csr
        return data[offsets[e]:offsets[e + 1]]

    @classmethod
    def from_simplices(cls, vertex_coords, edges=(), triangles=()) -> "SimplicialComplex":
        """Build a free-form complex; validates incidence and connectivity."""
        coords = np.atleast_2d(np.asarray(vertex_coords, dtype=np.float64))
        edges = np.asarray(sorted(tuple(sorted(e)) for e in edges), dtype=np.int64).reshape(-1, 2)
        triangles = np.asarray(sorted(tuple(sorted(t)) for t in triangles), dtype=np.int64).reshape(-1, 3)
        _validate_simplices(edges, triangles, len(coords))
        cx = cls(vertex_coords=coords, edges=edges, triangles=triangles)
        cx.tri_edges  # raises if a triangle is missing a boundary edge
        if len(coords) > 1:
            parent = list(range(len(coords)))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for u, v in edges.tolist():
                parent[find(u)] = find(v)
            if len({find(i) for i in range(len(coords))}) != 1:
                raise ValueError("1-skeleton must be connected")
        return cx


def build_grid_complex(grid: GridSpec) -> SimplicialComplex:
    """Triangulate a grid along main diagonals and return the 2-skeleton.

    Edges join vertex pairs differing by a 0/1 step on every axis;
    triangles are the monotone three-chains of such steps.  Simplex
    indexing is lexicographic by ascending vertex tuple within each
    dimension, so identical grids always index identically.
    """
    dim = grid.dimension
    strides = np.asarray(grid.strides, dtype=np.int64)

    def start_ids(span: np.ndarray) -> np.ndarray:
        axes = [np.arange(n - s, dtype=np.int64) for n, s in zip(grid.extents, span)]
        mesh = np.meshgrid(*axes, indexing="ij")
        ids = sum(m * st for m, st in zip(mesh, strides))
        return ids.ravel()

    directions = [np.array(d, dtype=np.int64) for d in product((0, 1), repeat=dim) if any(d)]
    offset = {tuple(d): int((d * strides).sum()) for d in directions}

    edge_parts = []
    for d in directions:
        u = start_ids(d)
        edge_parts.append(np.stack([u, u + offset[tuple(d)]], axis=1))
    edges = np.concatenate(edge_parts)
    edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]

    tri_parts = []
    for d1 in directions:
        for d2 in directions:
            if (d1 * d2).any():  # the two steps must use disjoint axes
                continue
            u = start_ids(d1 + d2)
            o1, o2 = offset[tuple(d1)], offset[tuple(d2)]
            tri_parts.append(np.stack([u, u + o1, u + o1 + o2], axis=1))
    if tri_parts:
        triangles = np.concatenate(tri_parts)
        triangles = triangles[np.lexsort((triangles[:, 2], triangles[:, 1], triangles[:, 0]))]
    else:
        triangles = np.empty((0, 3), dtype=np.int64)

    return SimplicialComplex(
        vertex_coords=grid.positions(),
        edges=edges,
        triangles=triangles,
        grid=grid,
    )
