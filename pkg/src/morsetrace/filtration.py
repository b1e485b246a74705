"""Lower-star filtrations of vertex scalar fields on 2-complexes.

Vertices are sorted by ascending working-function value (ties broken by
vertex id); every other simplex joins the block of the vertex holding
its maximum value under the same total key.  Within a block simplices
are ordered by dimension, then by descending-sorted value tuple, then by
ascending vertex tuple, which puts every face strictly before its
cofaces.  Filtrations are immutable and safe for concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidFieldError, InvalidFiltrationError
from .grid import ScalarField, SimplicialComplex


@dataclass(frozen=True)
class Filtration:
    """Total simplex order plus per-simplex function values.

    ``order_dims``/``order_indices`` spell out the sequence; the
    per-dimension ``*_positions`` arrays give each simplex's rank in it.
    ``*_values`` hold the simplexwise extension (max over vertices) of
    the working function, and ``edge_owner``/``triangle_owner`` record
    the lower-star block each simplex belongs to.
    """

    complex: SimplicialComplex
    vertex_values: np.ndarray
    edge_values: np.ndarray
    triangle_values: np.ndarray
    vertex_positions: np.ndarray
    edge_positions: np.ndarray
    triangle_positions: np.ndarray
    order_dims: np.ndarray
    order_indices: np.ndarray
    edge_owner: np.ndarray
    triangle_owner: np.ndarray

    @property
    def size(self) -> int:
        return len(self.order_dims)

    @property
    def vertex_order(self) -> np.ndarray:
        """Vertex ids by ascending (value, id)."""
        return self.order_indices[self.order_dims == 0]

    def values_of(self, dim: int) -> np.ndarray:
        return (self.vertex_values, self.edge_values, self.triangle_values)[dim]

    def positions_of(self, dim: int) -> np.ndarray:
        return (self.vertex_positions, self.edge_positions, self.triangle_positions)[dim]

    def value(self, dim: int, index: int) -> float:
        return float(self.values_of(dim)[index])

    def position(self, dim: int, index: int) -> int:
        return int(self.positions_of(dim)[index])

    def simplex_at(self, position: int) -> tuple[int, int]:
        return int(self.order_dims[position]), int(self.order_indices[position])

    def lower_star_owner(self, dim: int, index: int) -> int:
        if dim == 0:
            return int(index)
        return int((self.edge_owner, self.triangle_owner)[dim - 1][index])

    def validate(self) -> None:
        """Raise unless every simplex comes strictly after all its faces."""
        cx = self.complex
        if cx.n_edges:
            end_pos = self.vertex_positions[cx.edges]
            if not np.all(self.edge_positions > end_pos.max(axis=1)):
                raise InvalidFiltrationError("an edge precedes one of its endpoints")
        if cx.n_triangles:
            side_pos = self.edge_positions[cx.tri_edges]
            if not np.all(self.triangle_positions > side_pos.max(axis=1)):
                raise InvalidFiltrationError("a triangle precedes one of its edges")


def lower_star_filtration(
    complex: SimplicialComplex, field: ScalarField, negate: bool = False
) -> Filtration:
    """Order all simplices into consecutive lower-star blocks.

    With ``negate`` the working function is the negated field, which is
    how the reconstruction pipeline runs (ridges of the density are
    valley lines of its negation).
    """
    values = np.asarray(field.values, dtype=np.float64)
    if len(values) != complex.n_vertices:
        raise InvalidFieldError(
            f"field has {len(values)} values for {complex.n_vertices} vertices"
        )
    f = -values if negate else values.copy()

    n, ne, nt = complex.n_vertices, complex.n_edges, complex.n_triangles
    total = n + ne + nt
    vrank = np.empty(n, dtype=np.int64)
    vrank[np.lexsort((np.arange(n), f))] = np.arange(n)

    if ne:
        eu, ev = complex.edges[:, 0], complex.edges[:, 1]
        edge_owner = np.where(vrank[eu] >= vrank[ev], eu, ev)
        edge_vals = np.sort(np.stack([f[eu], f[ev]], axis=1), axis=1)[:, ::-1]
    else:
        edge_owner = np.empty(0, dtype=np.int64)
        edge_vals = np.empty((0, 2))
    if nt:
        tri_ranks = vrank[complex.triangles]
        triangle_owner = complex.triangles[np.arange(nt), np.argmax(tri_ranks, axis=1)]
        tri_vals = np.sort(f[complex.triangles], axis=1)[:, ::-1]
    else:
        triangle_owner = np.empty(0, dtype=np.int64)
        tri_vals = np.empty((0, 3))

    blocks = np.concatenate([vrank, vrank[edge_owner], vrank[triangle_owner]])
    dims = np.concatenate(
        [np.zeros(n, dtype=np.int8), np.ones(ne, dtype=np.int8), np.full(nt, 2, dtype=np.int8)]
    )
    desc = np.full((total, 3), -np.inf)
    desc[:n, 0] = f
    desc[n:n + ne, :2] = edge_vals
    desc[n + ne:, :] = tri_vals
    vtup = np.full((total, 3), -1, dtype=np.int64)
    vtup[:n, 0] = np.arange(n)
    vtup[n:n + ne, :2] = complex.edges
    vtup[n + ne:, :] = complex.triangles

    perm = np.lexsort((
        vtup[:, 2], vtup[:, 1], vtup[:, 0],
        desc[:, 2], desc[:, 1], desc[:, 0],
        dims, blocks,
    ))
    local = np.concatenate([np.arange(n), np.arange(ne), np.arange(nt)])
    positions = np.empty(total, dtype=np.int64)
    positions[perm] = np.arange(total)

    return Filtration(
        complex=complex,
        vertex_values=f,
        edge_values=edge_vals[:, 0] if ne else np.empty(0),
        triangle_values=tri_vals[:, 0] if nt else np.empty(0),
        vertex_positions=positions[:n],
        edge_positions=positions[n:n + ne],
        triangle_positions=positions[n + ne:],
        order_dims=dims[perm],
        order_indices=local[perm],
        edge_owner=edge_owner,
        triangle_owner=triangle_owner,
    )
