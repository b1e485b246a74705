"""Synthetic two-level density instances around a known embedded graph.

An instance puts density beta plus bounded noise on every vertex within
distance w of a hidden graph rasterized into the grid's 1-skeleton, and
bare noise elsewhere.  The admissibility condition beta > 2*nu keeps the
two levels separated, so reconstruction at any delta in [nu, beta-nu)
must recover the hidden graph's loop structure inside the thickened
neighborhood; the validators here check exactly that against ground
truth.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidGraphError, NoiseModelError
from .grid import GridSpec, ScalarField, SimplicialComplex
from .persistence import xor_sorted
from .reconstruct import ReconstructedGraph


@dataclass(frozen=True)
class NoiseParams:
    """Generator parameters: density offset, noise bound, tube radius, seed."""

    beta: float
    nu: float
    w: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.nu < 0:
            raise NoiseModelError(f"nu must be >= 0, got {self.nu}")
        if self.w <= 0:
            raise NoiseModelError(f"w must be > 0, got {self.w}")
        if not self.beta > 2 * self.nu:
            raise NoiseModelError(f"need beta > 2*nu, got beta={self.beta}, nu={self.nu}")

    @property
    def delta_range(self) -> tuple[float, float]:
        """Half-open interval of simplification levels the guarantees cover."""
        return (self.nu, self.beta - self.nu)


def check_delta(params: NoiseParams, delta: float) -> bool:
    """Warn (not fail) when delta leaves the guaranteed range."""
    lo, hi = params.delta_range
    ok = lo <= delta < hi
    if not ok:
        warnings.warn(
            f"delta={delta} outside guaranteed range [{lo}, {hi}); "
            "reconstruction guarantees no longer apply",
            stacklevel=2,
        )
    return ok


@dataclass(frozen=True)
class HiddenGraph:
    """Ground-truth graph: node positions (grid units), arcs, rasterization.

    ``polylines`` holds one array of grid vertex ids per arc once the
    graph has been rasterized onto a grid's 1-skeleton.
    """

    nodes: np.ndarray
    arcs: tuple[tuple[int, int], ...]
    polylines: tuple[np.ndarray, ...] | None = None

    def __post_init__(self) -> None:
        nodes = np.atleast_2d(np.asarray(self.nodes, dtype=np.float64))
        arcs = tuple((int(i), int(j)) for i, j in self.arcs)
        for i, j in arcs:
            if not (0 <= i < len(nodes) and 0 <= j < len(nodes)):
                raise InvalidGraphError(f"arc ({i}, {j}) references a missing node")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "arcs", arcs)


@dataclass(frozen=True)
class NeighborhoodMask:
    """Per-vertex flag: inside the thickened graph neighborhood or not."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.ascontiguousarray(self.values, dtype=bool)
        if len(values) != self.grid.n_vertices:
            raise InvalidGraphError("mask length does not match grid")
        object.__setattr__(self, "values", values)

    @property
    def n_inside(self) -> int:
        return int(np.count_nonzero(self.values))


def _walk_segment(a: np.ndarray, b: np.ndarray) -> list[tuple[int, ...]]:
    """Integer grid walk from a to b restricted to 1-skeleton steps.

    Sample the segment finely, round, then bridge each unit gap with the
    positive-step part before the negative one.  Legal steps move every
    changing axis in the same direction, matching the main-diagonal
    triangulation.
    """
    span = int(np.abs(b - a).max())
    if span == 0:
        return [tuple(int(x) for x in a)]
    ts = np.linspace(0.0, 1.0, 4 * span + 1)
    samples = np.rint(a + np.outer(ts, b - a)).astype(np.int64)
    path = [samples[0]]
    for p in samples[1:]:
        if np.array_equal(p, path[-1]):
            continue
        d = p - path[-1]
        if np.abs(d).max() > 1:
            raise InvalidGraphError("segment sampling too coarse")  # pragma: no cover
        pos = np.maximum(d, 0)
        neg = np.minimum(d, 0)
        if pos.any() and neg.any():
            path.append(path[-1] + pos)
        path.append(p)
    return [tuple(int(x) for x in q) for q in path]


def rasterize(graph: HiddenGraph, grid: GridSpec) -> HiddenGraph:
    """Embed every arc as a vertex walk in the grid's 1-skeleton."""
    nodes = np.rint(graph.nodes).astype(np.int64)
    if nodes.shape[1] != grid.dimension:
        raise InvalidGraphError(
            f"graph is {nodes.shape[1]}-D but grid is {grid.dimension}-D"
        )
    extents = np.asarray(grid.extents)
    if np.any(nodes < 0) or np.any(nodes >= extents):
        raise InvalidGraphError("graph node outside the grid domain")
    if not graph.arcs and len(nodes) > 1:
        raise InvalidGraphError("rasterized graph is disconnected")

    polylines = []
    for i, j in graph.arcs:
        pts = _walk_segment(nodes[i], nodes[j])
        ids = grid.vertex_index(np.asarray(pts, dtype=np.int64).reshape(-1, grid.dimension))
        polylines.append(np.atleast_1d(ids))

    # node-arc connectivity; each polyline is connected by construction
    parent = list(range(len(nodes)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in graph.arcs:
        parent[find(i)] = find(j)
    if len(nodes) and len({find(i) for i in range(len(nodes))}) != 1:
        raise InvalidGraphError("rasterized graph is disconnected")
    return replace(graph, polylines=tuple(polylines))


def truth_vertices(graph: HiddenGraph) -> np.ndarray:
    if graph.polylines is None:
        raise InvalidGraphError("graph has not been rasterized")
    return np.unique(np.concatenate([p for p in graph.polylines]))


def truth_edge_pairs(graph: HiddenGraph) -> np.ndarray:
    """Unique rasterized edges as sorted (u, v) vertex-id pairs."""
    if graph.polylines is None:
        raise InvalidGraphError("graph has not been rasterized")
    pairs = []
    for line in graph.polylines:
        if len(line) < 2:
            continue
        seg = np.stack([line[:-1], line[1:]], axis=1)
        pairs.append(np.sort(seg, axis=1))
    if not pairs:
        return np.empty((0, 2), dtype=np.int64)
    allp = np.concatenate(pairs)
    return np.unique(allp, axis=0)


def truth_betti1(graph: HiddenGraph) -> int:
    """Loop count of the rasterized graph: |E| - |V| + #components."""
    verts = truth_vertices(graph)
    edges = truth_edge_pairs(graph)
    slot = {int(v): i for i, v in enumerate(verts)}
    parent = list(range(len(verts)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges.tolist():
        ru, rv = find(slot[u]), find(slot[v])
        if ru != rv:
            parent[rv] = ru
    comps = sum(1 for i in range(len(verts)) if find(i) == i)
    return len(edges) - len(verts) + comps


def _mask_from_graph(grid: GridSpec, graph: HiddenGraph, w: float) -> np.ndarray:
    """Vertices within Euclidean distance w (grid units) of the rasterized graph.

    Squared distances are compared so integer geometry stays exact.
    """
    coords = grid.index_coords().astype(np.float64)
    extents = np.asarray(grid.extents)
    strides = np.asarray(grid.strides, dtype=np.int64)
    dist2 = np.full(grid.n_vertices, np.inf)
    ic = grid.index_coords()

    segments = []
    for line in graph.polylines:
        pts = coords[line]
        if len(line) == 1:
            segments.append((pts[0], pts[0]))
        for k in range(len(line) - 1):
            segments.append((pts[k], pts[k + 1]))

    pad = int(np.ceil(w)) + 1
    for a, b in segments:
        lo = np.maximum(np.floor(np.minimum(a, b)).astype(np.int64) - pad, 0)
        hi = np.minimum(np.ceil(np.maximum(a, b)).astype(np.int64) + pad, extents - 1)
        axes = [np.arange(l, h + 1, dtype=np.int64) for l, h in zip(lo, hi)]
        mesh = np.meshgrid(*axes, indexing="ij")
        ids = sum(m * st for m, st in zip(mesh, strides)).ravel()
        p = ic[ids].astype(np.float64)
        d = b - a
        dd = float(d @ d)
        if dd == 0.0:
            closest = a
            delta = p - closest
            seg_d2 = (delta * delta).sum(axis=1)
        else:
            t = np.clip(((p - a) @ d) / dd, 0.0, 1.0)
            delta = p - (a + t[:, None] * d)
            seg_d2 = (delta * delta).sum(axis=1)
        np.minimum.at(dist2, ids, seg_d2)
    return dist2 <= w * w


def generate_instance(
    grid: GridSpec, graph: HiddenGraph, params: NoiseParams
) -> tuple[ScalarField, NeighborhoodMask]:
    """Draw one synthetic density field around the hidden graph.

    The mask selects vertices within distance ``params.w`` of the
    rasterized graph.  Masked vertices get ``beta + u``, the rest ``u``,
    with ``u`` i.i.d. uniform on [0, nu] from the seeded generator, so a
    fixed seed reproduces the field bit for bit.
    """
    if graph.polylines is None:
        graph = rasterize(graph, grid)
    mask_values = _mask_from_graph(grid, graph, params.w)
    rng = np.random.default_rng(params.seed)
    u = rng.uniform(0.0, params.nu, grid.n_vertices) if params.nu > 0 else np.zeros(grid.n_vertices)
    values = u + params.beta * mask_values
    return ScalarField(values), NeighborhoodMask(grid=grid, values=mask_values)


def subcomplex_betti(complex: SimplicialComplex, vertex_mask: np.ndarray) -> tuple[int, int]:
    """(b0, b1) of the subcomplex induced by the masked vertices."""
    vertex_mask = np.asarray(vertex_mask, dtype=bool)
    ids = np.flatnonzero(vertex_mask)
    if len(ids) == 0:
        return 0, 0
    eu, ev = complex.edges[:, 0], complex.edges[:, 1]
    edges_in = np.flatnonzero(vertex_mask[eu] & vertex_mask[ev])
    tris_in = np.flatnonzero(vertex_mask[complex.triangles].all(axis=1)) if complex.n_triangles else np.empty(0, dtype=np.int64)

    slot = {int(v): i for i, v in enumerate(ids)}
    parent = list(range(len(ids)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges_in.tolist():
        ru, rv = find(slot[int(eu[e])]), find(slot[int(ev[e])])
        if ru != rv:
            parent[rv] = ru
    b0 = sum(1 for i in range(len(ids)) if find(i) == i)

    # rank of the induced triangle boundary over Z2
    rank = 0
    low_to: dict[int, list[int]] = {}
    for t in tris_in.tolist():
        col = sorted(int(e) for e in complex.tri_edges[t])
        while col:
            low = col[-1]
            other = low_to.get(low)
            if other is None:
                low_to[low] = col
                rank += 1
                break
            col = xor_sorted(col, other)
    b1 = len(edges_in) - len(ids) + b0 - rank
    return b0, b1


@dataclass(frozen=True)
class InstanceReport:
    """Validation outcome: listed violations rather than raised errors."""

    c2_violations: tuple[int, ...]
    mask_connected: bool
    mask_betti1: int
    graph_betti1: int

    @property
    def c2_ok(self) -> bool:
        return not self.c2_violations

    @property
    def c1_ok(self) -> bool:
        return self.mask_connected and self.mask_betti1 == self.graph_betti1

    @property
    def ok(self) -> bool:
        return self.c1_ok and self.c2_ok


def validate_instance(
    complex: SimplicialComplex,
    field: ScalarField,
    mask: NeighborhoodMask,
    params: NoiseParams,
    graph: HiddenGraph,
) -> InstanceReport:
    """Check the two-level density condition and the neighborhood topology.

    The density condition is checked at every vertex.  The topological
    condition is approximated by requiring the mask-induced subcomplex
    to be connected with the hidden graph's loop count, the only
    machine-checkable consequences the guarantees rely on.
    """
    vals = field.values
    inside = mask.values
    bad_in = inside & ((vals < params.beta) | (vals > params.beta + params.nu))
    bad_out = ~inside & ((vals < 0) | (vals > params.nu))
    violations = tuple(int(v) for v in np.flatnonzero(bad_in | bad_out))
    b0, b1 = subcomplex_betti(complex, inside)
    return InstanceReport(
        c2_violations=violations,
        mask_connected=(b0 == 1),
        mask_betti1=b1,
        graph_betti1=truth_betti1(graph),
    )


def check_containment(ghat: ReconstructedGraph, mask: NeighborhoodMask) -> bool:
    """True iff the reconstruction lies entirely in the masked subcomplex."""
    inside = mask.values
    if len(ghat.vertices) and not bool(np.all(inside[ghat.vertices])):
        return False
    if len(ghat.edges):
        pairs = ghat.edge_pairs
        if not bool(np.all(inside[pairs[:, 0]] & inside[pairs[:, 1]])):
            return False
    return True


@dataclass(frozen=True)
class ThresholdSummary:
    """Superlevel-set baseline output for comparison experiments."""

    mask: np.ndarray
    threshold: float
    n_selected: int
    n_components: int
    betti1: int


def threshold_baseline(complex: SimplicialComplex, field: ScalarField, t: float) -> ThresholdSummary:
    """Superlevel set {rho >= t} plus component count and loop count."""
    mask = field.values >= t
    b0, b1 = subcomplex_betti(complex, mask)
    return ThresholdSummary(
        mask=mask,
        threshold=float(t),
        n_selected=int(np.count_nonzero(mask)),
        n_components=b0,
        betti1=b1,
    )
