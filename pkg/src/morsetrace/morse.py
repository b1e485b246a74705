"""Explicit discrete-Morse cancellation baseline.

Maintains a vertex-edge gradient pairing, cancels each low-persistence
vertex-edge pair in increasing (persistence, death position) order by
inverting the unique gradient path between them, then reads unstable
manifolds straight off the final field.  Restricted to vertex-edge
vectors: only those contribute to 1-unstable manifolds and cancelling
them never creates other vector kinds.  Deliberately does not memoize
path traversal; it is the correctness and timing reference for the
forest shortcut, which must produce identical output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GradientInvariantError, InvalidParameterError
from .filtration import Filtration, lower_star_filtration
from .grid import ScalarField, SimplicialComplex
from .persistence import PairingSet, compute_pairs
from .reconstruct import ReconstructedGraph, generator_edges


@dataclass
class GradientField:
    """Partial injective vertex <-> edge pairing; unpaired simplices are critical.

    Mutated only while cancellations run; treat as read-only afterwards.
    """

    complex: SimplicialComplex
    vertex_to_edge: np.ndarray
    edge_to_vertex: np.ndarray

    @classmethod
    def trivial(cls, complex: SimplicialComplex) -> "GradientField":
        return cls(
            complex=complex,
            vertex_to_edge=np.full(complex.n_vertices, -1, dtype=np.int64),
            edge_to_vertex=np.full(complex.n_edges, -1, dtype=np.int64),
        )

    @property
    def critical_vertices(self) -> np.ndarray:
        return np.flatnonzero(self.vertex_to_edge < 0)

    @property
    def critical_edges(self) -> np.ndarray:
        return np.flatnonzero(self.edge_to_vertex < 0)

    @property
    def n_critical(self) -> int:
        return len(self.critical_vertices) + len(self.critical_edges)

    def is_critical_edge(self, e: int) -> bool:
        return self.edge_to_vertex[e] < 0


def _walk(v2e, eu, ev, start: int, limit: int) -> tuple[list[int], list[int]]:
    """Follow gradient vectors from a vertex until a critical vertex.

    Returns the visited vertices and traversed edges; raises if the walk
    exceeds ``limit`` steps, which would mean a cyclic V-path.
    """
    verts = [start]
    edges: list[int] = []
    cur = start
    steps = 0
    while True:
        e = v2e[cur]
        if e < 0:
            return verts, edges
        steps += 1
        if steps > limit:
            raise GradientInvariantError("cyclic V-path detected during walk")
        nxt = ev[e] if eu[e] == cur else eu[e]
        edges.append(e)
        verts.append(nxt)
        cur = nxt


def cancel_all(
    filtration: Filtration,
    pairs: PairingSet,
    delta: float,
    on_cancel=None,
) -> GradientField:
    """Cancel every vertex-edge pair with persistence <= delta.

    Pairs are processed by ascending (persistence, death position).  For
    each pair the gradient path from the edge to the vertex is located
    by walking from both endpoints; exactly one walk must end at the
    target, otherwise the pairing order is broken and we raise, since a
    missing or ambiguous path can never happen on valid input.

    ``on_cancel(vertex_to_edge, edge_to_vertex, pair)`` is an optional
    instrumentation hook invoked after each cancellation with the raw
    pairing lists; meant for invariant checks in tests.
    """
    if delta < 0:
        raise InvalidParameterError(f"delta must be >= 0, got {delta}")
    cx = filtration.complex
    selected = np.flatnonzero((pairs.edge_vertex_partner >= 0) & (pairs.edge_pers <= delta))
    order = selected[np.lexsort((
        filtration.edge_positions[selected],
        pairs.edge_pers[selected],
    ))]

    n = cx.n_vertices
    v2e = [-1] * n
    e2v = [-1] * cx.n_edges
    eu = cx.edges[:, 0].tolist()
    ev = cx.edges[:, 1].tolist()
    partner = pairs.edge_vertex_partner.tolist()

    for e in order.tolist():
        v = partner[e]
        if v2e[v] != -1 or e2v[e] != -1:
            raise GradientInvariantError(f"pair (vertex {v}, edge {e}) not critical at its turn")
        hits = []
        for endpoint in (eu[e], ev[e]):
            verts, edges_walked = _walk(v2e, eu, ev, endpoint, n)
            if verts[-1] == v:
                hits.append((verts, edges_walked))
        if len(hits) != 1:
            kind = "no" if not hits else "more than one"
            raise GradientInvariantError(
                f"{kind} gradient path from edge {e} to vertex {v}"
            )
        verts, edges_walked = hits[0]
        # invert the path: the edge pairs with the first vertex, every
        # traversed edge re-pairs with the vertex after it
        v2e[verts[0]] = e
        e2v[e] = verts[0]
        for i, pe in enumerate(edges_walked):
            v2e[verts[i + 1]] = pe
            e2v[pe] = verts[i + 1]
        if on_cancel is not None:
            on_cancel(v2e, e2v, (v, e))

    return GradientField(
        complex=cx,
        vertex_to_edge=np.array(v2e, dtype=np.int64),
        edge_to_vertex=np.array(e2v, dtype=np.int64),
    )


def unstable_manifold(field: GradientField, e: int) -> tuple[set[int], set[int]]:
    """Vertices and edges of the 1-unstable manifold of critical edge ``e``.

    The edge itself plus the two gradient walks from its endpoints, each
    followed until a critical vertex.
    """
    cx = field.complex
    if not 0 <= e < cx.n_edges:
        raise InvalidParameterError(f"edge {e} out of range")
    if not field.is_critical_edge(e):
        raise InvalidParameterError(f"edge {e} is not critical")
    v2e = field.vertex_to_edge.tolist()
    eu = cx.edges[:, 0].tolist()
    ev = cx.edges[:, 1].tolist()
    verts: set[int] = set()
    edges: set[int] = {int(e)}
    for endpoint in (eu[e], ev[e]):
        walk_verts, walk_edges = _walk(v2e, eu, ev, endpoint, cx.n_vertices)
        verts.update(walk_verts)
        edges.update(walk_edges)
    return verts, edges


def collect_manifolds(
    complex: SimplicialComplex, pairs: PairingSet, field: GradientField, delta: float
) -> ReconstructedGraph:
    """Union of 1-unstable manifolds of all pers > delta critical edges."""
    gens = generator_edges(pairs, delta)
    out_vertices: set[int] = set()
    out_edges: set[int] = set()
    for e in gens.tolist():
        verts, edges = unstable_manifold(field, e)
        out_vertices.update(verts)
        out_edges.update(edges)
    return ReconstructedGraph(
        complex=complex,
        vertices=np.array(sorted(out_vertices), dtype=np.int64),
        edges=np.array(sorted(out_edges), dtype=np.int64),
        generator_edges=gens,
    )


def oracle_extract_graph(
    complex: SimplicialComplex, pairs: PairingSet, delta: float
) -> ReconstructedGraph:
    """Cancellation plus manifold collection (persistence excluded)."""
    field = cancel_all(pairs.filtration, pairs, delta)
    return collect_manifolds(complex, pairs, field, delta)


def oracle_reconstruct(
    complex: SimplicialComplex, rho: ScalarField, delta: float
) -> ReconstructedGraph:
    """Full pipeline through explicit cancellation; must match reconstruct()."""
    if delta < 0:
        raise InvalidParameterError(f"delta must be >= 0, got {delta}")
    filtration = lower_star_filtration(complex, rho, negate=True)
    pairs = compute_pairs(filtration)
    return oracle_extract_graph(complex, pairs, delta)
