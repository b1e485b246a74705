"""Persistence pairing of lower-star filtrations on 2-complexes.

Production path: dimension-0 pairs come from an elder-rule union-find
sweep over edges in filtration order, dimension-1 pairs from Z2 column
reduction of the triangle boundary.  Reducing the top dimension first
means paired edge columns never need reduction themselves (the
twist/clearing trick).  ``compute_pairs_reduction`` keeps a plain
left-to-right reduction of the full boundary matrix as a second,
independently coded route; the two must agree on every input and the
test suite enforces that.

Everything returned here is immutable and safe for concurrent reads;
the reductions themselves are order-dependent and run single-threaded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import SimplexNotFoundError
from .filtration import Filtration

INF = math.inf


class UnionFind:
    """Array union-find with path halving; root choice is the caller's."""

    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def link(self, root: int, child_root: int) -> None:
        self.parent[child_root] = root


def xor_sorted(a: list[int], b: list[int]) -> list[int]:
    """Symmetric difference of two ascending int lists (Z2 column add)."""
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        x, y = a[i], b[j]
        if x < y:
            out.append(x)
            i += 1
        elif x > y:
            out.append(y)
            j += 1
        else:
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


@dataclass(frozen=True, slots=True)
class PersistencePair:
    """One persistence pair: birth simplex, death simplex or None (infinite)."""

    birth: tuple[int, int]
    death: tuple[int, int] | None
    persistence: float

    @property
    def dim(self) -> int:
        return self.birth[0]

    @property
    def finite(self) -> bool:
        return self.death is not None


@dataclass(frozen=True)
class PairingSet:
    """All persistence pairs of a filtration, indexed both ways.

    Partner arrays use -1 for "no partner": a vertex or edge or triangle
    with no partner anywhere is paired with infinity.  Every simplex of
    the complex occurs in exactly one pair.
    """

    filtration: Filtration
    vertex_partner: np.ndarray        # (n,)  edge that kills the vertex
    edge_vertex_partner: np.ndarray   # (E,)  vertex the edge kills
    edge_triangle_partner: np.ndarray # (E,)  triangle that kills the edge
    triangle_partner: np.ndarray      # (T,)  edge the triangle kills
    vertex_pers: np.ndarray
    edge_pers: np.ndarray
    triangle_pers: np.ndarray

    @cached_property
    def pairs(self) -> tuple[PersistencePair, ...]:
        """Pairs sorted by birth filtration position."""
        filt = self.filtration
        items: list[tuple[int, PersistencePair]] = []
        for v in range(len(self.vertex_partner)):
            e = int(self.vertex_partner[v])
            death = (1, e) if e >= 0 else None
            items.append((
                int(filt.vertex_positions[v]),
                PersistencePair((0, v), death, float(self.vertex_pers[v])),
            ))
        for e in range(len(self.edge_triangle_partner)):
            if self.edge_vertex_partner[e] >= 0:
                continue  # the edge is a death, covered by its vertex pair
            t = int(self.edge_triangle_partner[e])
            death = (2, t) if t >= 0 else None
            items.append((
                int(filt.edge_positions[e]),
                PersistencePair((1, e), death, float(self.edge_pers[e])),
            ))
        for t in range(len(self.triangle_partner)):
            if self.triangle_partner[t] >= 0:
                continue
            items.append((
                int(filt.triangle_positions[t]),
                PersistencePair((2, t), None, INF),
            ))
        items.sort(key=lambda it: it[0])
        return tuple(p for _, p in items)

    @cached_property
    def by_simplex(self) -> dict[tuple[int, int], PersistencePair]:
        out: dict[tuple[int, int], PersistencePair] = {}
        for p in self.pairs:
            out[p.birth] = p
            if p.death is not None:
                out[p.death] = p
        return out

    def pair_of(self, simplex: tuple[int, int]) -> PersistencePair:
        dim, idx = simplex
        sizes = (
            len(self.vertex_partner),
            len(self.edge_vertex_partner),
            len(self.triangle_partner),
        )
        if dim not in (0, 1, 2) or not 0 <= idx < sizes[dim]:
            raise SimplexNotFoundError(f"no simplex (dim={dim}, index={idx})")
        return self.by_simplex[(dim, idx)]

    @property
    def n_vertex_edge_pairs(self) -> int:
        return int(np.count_nonzero(self.vertex_partner >= 0))

    @property
    def n_edge_triangle_pairs(self) -> int:
        return int(np.count_nonzero(self.edge_triangle_partner >= 0))

    def n_essential(self, dim: int) -> int:
        if dim == 0:
            return int(np.count_nonzero(self.vertex_partner < 0))
        if dim == 1:
            return int(np.count_nonzero(
                (self.edge_vertex_partner < 0) & (self.edge_triangle_partner < 0)
            ))
        return int(np.count_nonzero(self.triangle_partner < 0))

    def same_as(self, other: "PairingSet") -> bool:
        return (
            np.array_equal(self.vertex_partner, other.vertex_partner)
            and np.array_equal(self.edge_vertex_partner, other.edge_vertex_partner)
            and np.array_equal(self.edge_triangle_partner, other.edge_triangle_partner)
            and np.array_equal(self.triangle_partner, other.triangle_partner)
            and np.array_equal(self.vertex_pers, other.vertex_pers)
            and np.array_equal(self.edge_pers, other.edge_pers)
            and np.array_equal(self.triangle_pers, other.triangle_pers)
        )


def persistence_of(pairs: PairingSet, simplex: tuple[int, int]) -> float:
    """Persistence of the pair containing ``simplex`` (0 for local pairs)."""
    dim, idx = simplex
    arrays = (pairs.vertex_pers, pairs.edge_pers, pairs.triangle_pers)
    if dim not in (0, 1, 2) or not 0 <= idx < len(arrays[dim]):
        raise SimplexNotFoundError(f"no simplex (dim={dim}, index={idx})")
    return float(arrays[dim][idx])


def _assemble(
    filtration: Filtration,
    vertex_edge: list[tuple[int, int]],
    edge_triangle: list[tuple[int, int]],
) -> PairingSet:
    cx = filtration.complex
    n, ne, nt = cx.n_vertices, cx.n_edges, cx.n_triangles
    vertex_partner = np.full(n, -1, dtype=np.int64)
    edge_vertex = np.full(ne, -1, dtype=np.int64)
    edge_triangle_arr = np.full(ne, -1, dtype=np.int64)
    triangle_partner = np.full(nt, -1, dtype=np.int64)
    vertex_pers = np.full(n, INF)
    edge_pers = np.full(ne, INF)
    triangle_pers = np.full(nt, INF)

    for v, e in vertex_edge:
        vertex_partner[v] = e
        edge_vertex[e] = v
        p = filtration.edge_values[e] - filtration.vertex_values[v]
        vertex_pers[v] = p
        edge_pers[e] = p
    for e, t in edge_triangle:
        edge_triangle_arr[e] = t
        triangle_partner[t] = e
        p = filtration.triangle_values[t] - filtration.edge_values[e]
        edge_pers[e] = p
        triangle_pers[t] = p

    return PairingSet(
        filtration=filtration,
        vertex_partner=vertex_partner,
        edge_vertex_partner=edge_vertex,
        edge_triangle_partner=edge_triangle_arr,
        triangle_partner=triangle_partner,
        vertex_pers=vertex_pers,
        edge_pers=edge_pers,
        triangle_pers=triangle_pers,
    )


def _vertex_edge_sweep(filtration: Filtration) -> list[tuple[int, int]]:
    """Elder-rule union-find over edges in filtration order.

    A merging edge pairs with the younger component's birth vertex;
    younger means the larger filtration position.
    """
    cx = filtration.complex
    n = cx.n_vertices
    vpos = filtration.vertex_positions.tolist()
    eu = cx.edges[:, 0].tolist()
    ev = cx.edges[:, 1].tolist()
    order = np.argsort(filtration.edge_positions, kind="stable").tolist()

    parent = list(range(n))
    out: list[tuple[int, int]] = []
    for e in order:
        u, v = eu[e], ev[e]
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        if u == v:
            continue  # positive edge, creates a cycle
        if vpos[u] > vpos[v]:
            u, v = v, u
        # u is the older root and survives
        parent[v] = u
        out.append((v, e))
    return out


def _edge_triangle_reduction(
    filtration: Filtration, negative_edges: np.ndarray | None = None
) -> list[tuple[int, int]]:
    """Reduce triangle columns (rows = edge positions) in filtration order.

    When the set of negative edges is known (from the vertex-edge
    sweep), their rows are dropped from every column up front: a death
    in dimension 0 can never be a pivot here and removing its row leaves
    the pairing unchanged (the standard compress step).  No triangle
    loses its whole boundary this way since three forest edges cannot
    close a cycle.
    """
    cx = filtration.complex
    if cx.n_triangles == 0:
        return []
    epos = filtration.edge_positions
    rows = epos[cx.tri_edges].astype(np.float64)
    if negative_edges is not None and len(negative_edges):
        drop = np.zeros(cx.n_edges, dtype=bool)
        drop[negative_edges] = True
        rows[drop[cx.tri_edges]] = -np.inf  # sorts first, skipped below
    rows = np.sort(rows, axis=1)
    n_drop = np.isinf(rows).sum(axis=1).tolist()
    rows_int = np.where(np.isinf(rows), -1, rows).astype(np.int64).tolist()
    t_order = np.argsort(filtration.triangle_positions, kind="stable").tolist()
    edge_at = np.empty(filtration.size, dtype=np.int64)
    edge_at[epos] = np.arange(cx.n_edges)

    # columns as int sets, pivots indexed by row position
    pivot: list[set[int] | None] = [None] * filtration.size
    out: list[tuple[int, int]] = []
    for t in t_order:
        col = set(rows_int[t][n_drop[t]:])
        low = -1
        while col:
            low = max(col)
            other = pivot[low]
            if other is None:
                break
            col.symmetric_difference_update(other)
        if col:
            pivot[low] = col
            out.append((int(edge_at[low]), t))
    return out


def compute_pairs(filtration: Filtration) -> PairingSet:
    """Full persistence pairing of the filtration.

    Union-find sweep for vertex-edge pairs, twist-style triangle column
    reduction for edge-triangle pairs.  Exactly one vertex per connected
    component survives unpaired; on simply connected domains every edge
    is paired.
    """
    filtration.validate()
    vertex_edge = _vertex_edge_sweep(filtration)
    negative = np.array([e for _, e in vertex_edge], dtype=np.int64)
    return _assemble(
        filtration,
        vertex_edge,
        _edge_triangle_reduction(filtration, negative_edges=negative),
    )


def _boundary_rows(filtration: Filtration, dim: int, index: int) -> list[int]:
    cx = filtration.complex
    if dim == 0:
        return []
    if dim == 1:
        u, v = cx.edges[index]
        a, b = int(filtration.vertex_positions[u]), int(filtration.vertex_positions[v])
        return [a, b] if a < b else [b, a]
    return sorted(int(filtration.edge_positions[e]) for e in cx.tri_edges[index])


def compute_pairs_reduction(filtration: Filtration, twist: bool = False) -> PairingSet:
    """Boundary-matrix reduction over Z2; cross-check for compute_pairs.

    ``twist=False`` is the plain left-to-right algorithm over all
    columns.  ``twist=True`` reduces dimension 2 then dimension 1 and
    clears the column of every edge already paired with a triangle.
    Quadratic worst case; intended for validation, not production.
    """
    filtration.validate()
    reduced: dict[int, list[int]] = {}
    low_of: dict[int, int] = {}  # pivot row -> column position

    def reduce_column(pos: int, dim: int, index: int) -> None:
        col = _boundary_rows(filtration, dim, index)
        while col:
            low = col[-1]
            k = low_of.get(low)
            if k is None:
                low_of[low] = pos
                reduced[pos] = col
                return
            col = xor_sorted(col, reduced[k])
        reduced[pos] = col

    if twist:
        cleared: set[int] = set()
        for dim in (2, 1):
            positions = filtration.positions_of(dim)
            for index in np.argsort(positions, kind="stable").tolist():
                pos = int(positions[index])
                if pos in cleared:
                    continue
                reduce_column(pos, dim, index)
                if dim == 2 and reduced[pos]:
                    cleared.add(reduced[pos][-1])
    else:
        for pos in range(filtration.size):
            dim, index = filtration.simplex_at(pos)
            if dim == 0:
                continue  # vertex columns are empty
            reduce_column(pos, dim, index)

    vertex_edge: list[tuple[int, int]] = []
    edge_triangle: list[tuple[int, int]] = []
    for low, pos in low_of.items():
        bdim, bidx = filtration.simplex_at(low)
        ddim, didx = filtration.simplex_at(pos)
        if bdim == 0:
            vertex_edge.append((bidx, didx))
        else:
            edge_triangle.append((bidx, didx))
    return _assemble(filtration, vertex_edge, edge_triangle)


def sorted_pairs(pairs: PairingSet) -> list[PersistencePair]:
    """Pairs sorted by (dim, persistence, death index); infinite last."""
    def key(p: PersistencePair):
        death_idx = p.death[1] if p.death is not None else INF
        return (p.dim, p.persistence, death_idx, p.birth[1])

    return sorted(pairs.pairs, key=key)
