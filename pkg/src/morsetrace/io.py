"""Text and binary file formats for fields, masks, graphs, and pair dumps.

Field file: header line ``field <d> <n1> <n2> [<n3>]`` followed by one
real per line, row-major with the first axis varying fastest.  A binary
variant stores the same header in a ``<path>.hdr`` sidecar with the
payload as little-endian 64-bit floats.  Mask files mirror the field
layout with ``mask`` headers and 0/1 entries.  Graph files list
``v <id> <x> <y> [<z>]`` lines then ``e <id> <id>`` lines whose ids
reference the vertex lines.  Hidden-graph specs list ``n <x> <y> [<z>]``
node lines then ``a <i> <j>`` arc lines.
"""

from __future__ import annotations

import os
from typing import IO, Iterable

import numpy as np

from .errors import InvalidFieldError, InvalidGraphError
from .grid import GridSpec, ScalarField
from .noise import HiddenGraph, NeighborhoodMask
from .persistence import PairingSet, sorted_pairs
from .reconstruct import ReconstructedGraph


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _parse_header(tokens: list[str], keyword: str, path: str) -> GridSpec:
    if not tokens or tokens[0] != keyword:
        raise InvalidFieldError(f"{path}: expected '{keyword}' header")
    try:
        d = int(tokens[1])
        extents = tuple(int(t) for t in tokens[2:2 + d])
    except (IndexError, ValueError) as exc:
        raise InvalidFieldError(f"{path}: malformed {keyword} header") from exc
    if len(extents) != d:
        raise InvalidFieldError(f"{path}: header promises {d} axes")
    return GridSpec(extents=extents)


def read_field(path: str) -> tuple[GridSpec, ScalarField]:
    """Read a density field; picks the binary form when a sidecar exists."""
    header_path = path + ".hdr"
    if os.path.exists(header_path):
        with open(header_path) as fh:
            tokens = fh.read().split()
        grid = _parse_header(tokens, "field", path)
        values = np.fromfile(path, dtype="<f8")
    else:
        with open(path) as fh:
            tokens = fh.read().split()
        grid = _parse_header(tokens, "field", path)
        d = grid.dimension
        values = np.array(tokens[2 + d:], dtype=np.float64)
    if len(values) != grid.n_vertices:
        raise InvalidFieldError(
            f"{path}: {len(values)} values for {grid.n_vertices} grid vertices"
        )
    return grid, ScalarField(values)


def write_field(path: str, grid: GridSpec, field: ScalarField, binary: bool = False) -> None:
    header = f"field {grid.dimension} " + " ".join(str(n) for n in grid.extents)
    if binary:
        with open(path + ".hdr", "w") as fh:
            fh.write(header + "\n")
        field.values.astype("<f8").tofile(path)
        return
    lines = [header]
    lines.extend(_fmt(v) for v in field.values.tolist())
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_mask(path: str) -> NeighborhoodMask:
    with open(path) as fh:
        tokens = fh.read().split()
    grid = _parse_header(tokens, "mask", path)
    d = grid.dimension
    values = np.array(tokens[2 + d:], dtype=np.int64)
    return NeighborhoodMask(grid=grid, values=values.astype(bool))


def write_mask(path: str, mask: NeighborhoodMask) -> None:
    grid = mask.grid
    lines = [f"mask {grid.dimension} " + " ".join(str(n) for n in grid.extents)]
    lines.extend("1" if v else "0" for v in mask.values.tolist())
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_vertex_graph(
    stream: IO[str],
    vertex_ids: Iterable[int],
    coords: np.ndarray,
    edge_pairs: Iterable[tuple[int, int]],
) -> None:
    """Write v/e lines; coordinates indexed positionally by the id list."""
    for vid, pos in zip(vertex_ids, coords):
        stream.write(f"v {vid} " + " ".join(_fmt(c) for c in pos) + "\n")
    for u, v in edge_pairs:
        stream.write(f"e {u} {v}\n")


def write_graph(target, graph: ReconstructedGraph) -> None:
    """Write a reconstruction to a path or text stream, sorted deterministically."""
    ids = graph.vertices.tolist()
    coords = graph.vertex_positions
    pairs = sorted((int(u), int(v)) for u, v in graph.edge_pairs)
    if hasattr(target, "write"):
        write_vertex_graph(target, ids, coords, pairs)
    else:
        with open(target, "w") as fh:
            write_vertex_graph(fh, ids, coords, pairs)


def read_graph(path: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read a graph file: (vertex ids, coordinates, edge id pairs)."""
    ids: list[int] = []
    coords: list[list[float]] = []
    edges: list[tuple[int, int]] = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            tokens = line.split()
            if not tokens:
                continue
            if tokens[0] == "v":
                ids.append(int(tokens[1]))
                coords.append([float(t) for t in tokens[2:]])
            elif tokens[0] == "e":
                edges.append((int(tokens[1]), int(tokens[2])))
            else:
                raise InvalidGraphError(f"{path}:{lineno}: unknown record '{tokens[0]}'")
    known = set(ids)
    for u, v in edges:
        if u not in known or v not in known:
            raise InvalidGraphError(f"{path}: edge ({u}, {v}) references a missing vertex")
    return (
        np.array(ids, dtype=np.int64),
        np.array(coords, dtype=np.float64).reshape(len(ids), -1),
        np.array(edges, dtype=np.int64).reshape(-1, 2),
    )


def read_graph_spec(path: str) -> HiddenGraph:
    nodes: list[list[float]] = []
    arcs: list[tuple[int, int]] = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            tokens = line.split()
            if not tokens or tokens[0].startswith("#"):
                continue
            if tokens[0] == "n":
                nodes.append([float(t) for t in tokens[1:]])
            elif tokens[0] == "a":
                arcs.append((int(tokens[1]), int(tokens[2])))
            else:
                raise InvalidGraphError(f"{path}:{lineno}: unknown record '{tokens[0]}'")
    if not nodes:
        raise InvalidGraphError(f"{path}: no nodes")
    return HiddenGraph(nodes=np.array(nodes, dtype=np.float64), arcs=tuple(arcs))


def write_graph_spec(path: str, graph: HiddenGraph) -> None:
    lines = []
    for pos in graph.nodes:
        lines.append("n " + " ".join(_fmt(c) for c in pos))
    for i, j in graph.arcs:
        lines.append(f"a {i} {j}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def pair_lines(pairs: PairingSet) -> list[str]:
    """One text line per persistence pair, sorted by (dim, persistence, death)."""
    out = []
    for p in sorted_pairs(pairs):
        if p.death is None:
            death_dim, death_idx, pers = "inf", "-", "inf"
        else:
            death_dim, death_idx = str(p.death[0]), str(p.death[1])
            pers = _fmt(p.persistence)
        out.append(
            f"pair {p.dim} {p.birth[0]} {p.birth[1]} {death_dim} {death_idx} {pers}"
        )
    return out
