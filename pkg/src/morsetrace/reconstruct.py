"""Graph extraction from a low-persistence spanning forest.

The edges of all vertex-edge pairs with persistence at most delta,
together with every vertex, form a spanning forest.  Each surviving
high-persistence edge contributes itself plus the unique forest paths
from its endpoints to their tree sinks.  No gradient field is ever
materialized; tracing memoizes visited vertices so the collection step
stays linear in the complex plus the output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .filtration import lower_star_filtration
from .grid import ScalarField, SimplicialComplex
from .persistence import PairingSet, compute_pairs


@dataclass(frozen=True)
class Forest:
    """Rooted spanning forest with parents oriented toward per-tree sinks.

    Sinks have ``parent_vertex[v] == -1``.  Vertices touching no tree
    edge are singleton trees and their own sinks.
    """

    complex: SimplicialComplex
    parent_vertex: np.ndarray
    parent_edge: np.ndarray
    sink_of: np.ndarray
    tree_edges: np.ndarray

    @property
    def sinks(self) -> np.ndarray:
        return np.flatnonzero(self.parent_vertex < 0)

    @property
    def n_trees(self) -> int:
        return len(self.sinks)


@dataclass(frozen=True)
class ReconstructedGraph:
    """Output graph: a subset of the complex's vertices and edges."""

    complex: SimplicialComplex
    vertices: np.ndarray         # sorted vertex ids
    edges: np.ndarray            # sorted edge ids
    generator_edges: np.ndarray  # sorted ids of the seeding high-persistence edges

    @property
    def edge_pairs(self) -> np.ndarray:
        return self.complex.edges[self.edges]

    @property
    def vertex_positions(self) -> np.ndarray:
        return self.complex.vertex_coords[self.vertices]

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) == 0 and len(self.edges) == 0


def build_forest(complex: SimplicialComplex, pairs: PairingSet, delta: float) -> Forest:
    """Spanning forest of all vertices plus the pers <= delta negative edges."""
    if delta < 0:
        raise InvalidParameterError(f"delta must be >= 0, got {delta}")
    n = complex.n_vertices
    selected = np.flatnonzero((pairs.edge_vertex_partner >= 0) & (pairs.edge_pers <= delta))

    # CSR adjacency over the selected edges
    ends = complex.edges[selected].ravel()
    eids = np.repeat(selected, 2)
    order = np.argsort(ends, kind="stable")
    counts = np.bincount(ends, minlength=n) if len(ends) else np.zeros(n, dtype=np.int64)
    offsets = np.concatenate([[0], np.cumsum(counts)]).tolist()
    neighbor = ends.reshape(-1, 2)[:, ::-1].ravel()[order].tolist()
    via_edge = eids[order].tolist()

    values = pairs.filtration.vertex_values.tolist()
    parent_vertex = [-1] * n
    parent_edge = [-1] * n
    sink_of = [-1] * n
    seen = bytearray(n)
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = 1
        members = [start]
        stack = [start]
        while stack:
            cur = stack.pop()
            for k in range(offsets[cur], offsets[cur + 1]):
                nb = neighbor[k]
                if not seen[nb]:
                    seen[nb] = 1
                    members.append(nb)
                    stack.append(nb)
        sink = start
        best = values[start]
        for v in members:
            val = values[v]
            if val < best or (val == best and v < sink):
                sink, best = v, val
        for v in members:
            sink_of[v] = sink
        # orient parents toward the sink
        parent_vertex[sink] = -2
        stack = [sink]
        while stack:
            cur = stack.pop()
            for k in range(offsets[cur], offsets[cur + 1]):
                nb = neighbor[k]
                if parent_vertex[nb] == -1:
                    parent_vertex[nb] = cur
                    parent_edge[nb] = via_edge[k]
                    stack.append(nb)
        parent_vertex[sink] = -1

    return Forest(
        complex=complex,
        parent_vertex=np.array(parent_vertex, dtype=np.int64),
        parent_edge=np.array(parent_edge, dtype=np.int64),
        sink_of=np.array(sink_of, dtype=np.int64),
        tree_edges=np.sort(selected),
    )


def trace_path(forest: Forest, v: int) -> list[int]:
    """Alternating vertex/edge ids along the unique path from ``v`` to its sink.

    Even positions are vertices, odd positions edges; a sink traces to
    ``[v]`` alone.
    """
    if not 0 <= v < forest.complex.n_vertices:
        raise InvalidParameterError(f"vertex {v} out of range")
    out = [int(v)]
    cur = int(v)
    while forest.parent_vertex[cur] >= 0:
        out.append(int(forest.parent_edge[cur]))
        cur = int(forest.parent_vertex[cur])
        out.append(cur)
    return out


def generator_edges(pairs: PairingSet, delta: float) -> np.ndarray:
    """Edges with persistence strictly above delta (infinite included)."""
    return np.flatnonzero(pairs.edge_pers > delta)


def collect_from_forest(
    complex: SimplicialComplex, pairs: PairingSet, forest: Forest, delta: float
) -> ReconstructedGraph:
    gens = generator_edges(pairs, delta)
    parent_vertex = forest.parent_vertex.tolist()
    parent_edge = forest.parent_edge.tolist()
    visited = bytearray(complex.n_vertices)
    out_vertices: set[int] = set()
    out_edges: set[int] = set()
    for e in gens.tolist():
        out_edges.add(e)
        u, v = complex.edges[e]
        for x in (int(u), int(v)):
            out_vertices.add(x)
            cur = x
            while not visited[cur]:
                visited[cur] = 1
                nxt = parent_vertex[cur]
                if nxt < 0:
                    break
                out_edges.add(parent_edge[cur])
                out_vertices.add(nxt)
                cur = nxt
    return ReconstructedGraph(
        complex=complex,
        vertices=np.array(sorted(out_vertices), dtype=np.int64),
        edges=np.array(sorted(out_edges), dtype=np.int64),
        generator_edges=gens,
    )


def extract_graph(complex: SimplicialComplex, pairs: PairingSet, delta: float) -> ReconstructedGraph:
    """Forest construction plus path collection (persistence excluded)."""
    forest = build_forest(complex, pairs, delta)
    return collect_from_forest(complex, pairs, forest, delta)


def reconstruct(complex: SimplicialComplex, rho: ScalarField, delta: float) -> ReconstructedGraph:
    """Recover the graph hidden in density ``rho`` at simplification level delta.

    Works on the negated density, computes the persistence pairing, and
    emits the union of high-persistence edges with their forest paths.
    """
    if delta < 0:
        raise InvalidParameterError(f"delta must be >= 0, got {delta}")
    filtration = lower_star_filtration(complex, rho, negate=True)
    pairs = compute_pairs(filtration)
    return extract_graph(complex, pairs, delta)


def betti1(graph: ReconstructedGraph) -> int:
    """First Betti number |E| - |V| + #components of the output graph."""
    ids = graph.vertices.tolist()
    if not ids:
        return 0
    slot = {v: i for i, v in enumerate(ids)}
    parent = list(range(len(ids)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in graph.edges.tolist():
        u, v = graph.complex.edges[e]
        ru, rv = find(slot[int(u)]), find(slot[int(v)])
        if ru != rv:
            parent[rv] = ru
    components = sum(1 for i in range(len(ids)) if find(i) == i)
    return len(graph.edges) - len(ids) + components
