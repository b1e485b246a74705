"""Command-line pipeline around the library.

Subcommands: build, pairs, reconstruct, oracle, generate, verify,
threshold, bench.  All outputs are deterministic given inputs, flags and
seed.  Exit codes: 0 ok, 1 usage/IO/parameter errors, 2 noise-model or
guarantee violations.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import io as mio
from .errors import InvalidParameterError, NoiseModelError
from .filtration import lower_star_filtration
from .grid import build_grid_complex
from .morse import oracle_extract_graph, oracle_reconstruct
from .noise import (
    NeighborhoodMask,
    NoiseParams,
    generate_instance,
    rasterize,
    threshold_baseline,
    truth_edge_pairs,
    truth_vertices,
    validate_instance,
)
from .persistence import compute_pairs
from .reconstruct import extract_graph, reconstruct

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MODEL = 2


@dataclass
class RunConfig:
    """Validated options for one CLI invocation."""

    subcommand: str
    input: str | None = None
    output: str | None = None
    delta: float = 0.0
    threshold: float | None = None
    negate: bool = True
    prune_below: float | None = None
    repeat: int = 5
    plot: str | None = None

    def __post_init__(self) -> None:
        if self.delta < 0:
            raise InvalidParameterError(f"delta must be >= 0, got {self.delta}")
        if self.repeat < 1:
            raise InvalidParameterError(f"repeat must be >= 1, got {self.repeat}")


def _load(args) -> tuple:
    grid, field = mio.read_field(args.input)
    if getattr(args, "prune_below", None) is not None:
        field = field.pruned(args.prune_below)
    return grid, build_grid_complex(grid), field


def _write_graph_output(graph, output: str | None) -> None:
    if output:
        mio.write_graph(output, graph)
    else:
        mio.write_graph(sys.stdout, graph)


def _maybe_plot_graph(args, grid, field, graph) -> None:
    if getattr(args, "plot", None):
        from . import plotting

        plotting.save_field_figure(
            args.plot,
            grid,
            field.values,
            graph_coords=graph.complex.vertex_coords,
            graph_edges=graph.edge_pairs,
            title=f"delta={args.delta}",
        )


def cmd_build(args) -> int:
    grid, cx, _ = _load(args)
    print(
        f"complex {grid.dimension} vertices {cx.n_vertices} edges {cx.n_edges} "
        f"triangles {cx.n_triangles} euler {cx.euler_characteristic}"
    )
    return EXIT_OK


def cmd_pairs(args) -> int:
    _, cx, field = _load(args)
    filtration = lower_star_filtration(cx, field, negate=args.negate)
    lines = mio.pair_lines(compute_pairs(filtration))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    else:
        for line in lines:
            print(line)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    cfg = RunConfig("reconstruct", delta=args.delta)
    grid, cx, field = _load(args)
    graph = reconstruct(cx, field, cfg.delta)
    _write_graph_output(graph, args.output)
    _maybe_plot_graph(args, grid, field, graph)
    return EXIT_OK


def cmd_oracle(args) -> int:
    cfg = RunConfig("oracle", delta=args.delta)
    grid, cx, field = _load(args)
    graph = oracle_reconstruct(cx, field, cfg.delta)
    _write_graph_output(graph, args.output)
    _maybe_plot_graph(args, grid, field, graph)
    return EXIT_OK


def cmd_generate(args) -> int:
    from .grid import GridSpec

    grid = GridSpec(extents=tuple(args.dims))
    params = NoiseParams(beta=args.beta, nu=args.nu, w=args.w, seed=args.seed)
    graph = rasterize(mio.read_graph_spec(args.graph), grid)
    field, mask = generate_instance(grid, graph, params)
    mio.write_field(args.field_out, grid, field)
    if args.mask_out:
        mio.write_mask(args.mask_out, mask)
    if args.truth_out:
        ids = truth_vertices(graph)
        coords = grid.index_coords()[ids] * np.asarray(grid.spacing)
        pairs = sorted((int(u), int(v)) for u, v in truth_edge_pairs(graph))
        with open(args.truth_out, "w") as fh:
            mio.write_vertex_graph(fh, ids.tolist(), coords, pairs)
    if args.plot:
        from . import plotting

        coords = grid.index_coords().astype(float) * np.asarray(grid.spacing)
        plotting.save_field_figure(
            args.plot, grid, field.values,
            graph_coords=coords, graph_edges=truth_edge_pairs(graph),
            title=f"beta={params.beta} nu={params.nu} w={params.w}",
        )
    if not args.skip_validate:
        cx = build_grid_complex(grid)
        report = validate_instance(cx, field, mask, params, graph)
        print(f"check C-2 {'PASS' if report.c2_ok else 'FAIL'}")
        print(
            f"check C-1 {'PASS' if report.c1_ok else 'FAIL'} "
            f"(mask betti1 {report.mask_betti1}, graph betti1 {report.graph_betti1})"
        )
        if not report.ok:
            return EXIT_MODEL
    return EXIT_OK


def _file_graph_betti1(ids: np.ndarray, edges: np.ndarray) -> int:
    if len(ids) == 0:
        return 0
    slot = {int(v): i for i, v in enumerate(ids)}
    parent = list(range(len(ids)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges.tolist():
        ru, rv = find(slot[u]), find(slot[v])
        if ru != rv:
            parent[rv] = ru
    comps = sum(1 for i in range(len(ids)) if find(i) == i)
    return len(edges) - len(ids) + comps


def cmd_verify(args) -> int:
    ghat_ids, _, ghat_edges = mio.read_graph(args.graph)
    truth_ids, _, truth_edges = mio.read_graph(args.truth)
    mask = mio.read_mask(args.mask)

    inside = mask.values
    contained = bool(np.all(inside[ghat_ids])) if len(ghat_ids) else True
    if contained and len(ghat_edges):
        contained = bool(np.all(inside[ghat_edges[:, 0]] & inside[ghat_edges[:, 1]]))
    b_ghat = _file_graph_betti1(ghat_ids, ghat_edges)
    b_truth = _file_graph_betti1(truth_ids, truth_edges)

    ok = True
    print(f"{'PASS' if contained else 'FAIL'} containment")
    ok &= contained
    match = b_ghat == b_truth
    print(f"{'PASS' if match else 'FAIL'} betti1 {b_ghat} vs truth {b_truth}")
    ok &= match
    return EXIT_OK if ok else EXIT_MODEL


def cmd_threshold(args) -> int:
    grid, cx, field = _load(args)
    summary = threshold_baseline(cx, field, args.t)
    print(
        f"threshold t {mio._fmt(summary.threshold)} selected {summary.n_selected} "
        f"components {summary.n_components} betti1 {summary.betti1}"
    )
    if args.mask_out:
        mio.write_mask(args.mask_out, NeighborhoodMask(grid=grid, values=summary.mask))
    if args.plot:
        from . import plotting

        plotting.save_mask_figure(args.plot, grid, summary.mask, title=f"t={args.t}")
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = RunConfig("bench", delta=args.delta, repeat=args.repeat)
    grid, cx, field = _load(args)
    print(f"bench vertices {cx.n_vertices} edges {cx.n_edges} triangles {cx.n_triangles}")

    t0 = time.perf_counter()
    filtration = lower_star_filtration(cx, field, negate=args.negate)
    pairs = compute_pairs(filtration)
    t_pre = time.perf_counter() - t0

    oracle_times, simplified_times = [], []
    graph_a = graph_b = None
    for _ in range(cfg.repeat):
        t0 = time.perf_counter()
        graph_a = oracle_extract_graph(cx, pairs, cfg.delta)
        oracle_times.append(time.perf_counter() - t0)
        t0 = time.perf_counter()
        graph_b = extract_graph(cx, pairs, cfg.delta)
        simplified_times.append(time.perf_counter() - t0)

    t_oracle = statistics.median(oracle_times)
    t_simpl = statistics.median(simplified_times)
    identical = int(
        np.array_equal(graph_a.vertices, graph_b.vertices)
        and np.array_equal(graph_a.edges, graph_b.edges)
    )
    print(f"bench persistence_seconds {t_pre:.6f}")
    print(f"bench oracle_stage_seconds {t_oracle:.6f}")
    print(f"bench simplified_stage_seconds {t_simpl:.6f}")
    print(f"bench speedup {t_oracle / t_simpl:.3f}")
    print(f"bench outputs_identical {identical}")
    if args.plot:
        from . import plotting

        plotting.save_bench_figure(
            args.plot,
            {
                "persistence": t_pre,
                "cancellation path": t_oracle,
                "forest path": t_simpl,
            },
            title=f"delta={cfg.delta}, median of {cfg.repeat}",
        )
    return EXIT_OK if identical else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morsetrace",
        description="Reconstruct hidden graphs from density fields on triangulated grids.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_input(p, prune=True):
        p.add_argument("--input", required=True, help="density field file")
        if prune:
            p.add_argument("--prune-below", type=float, default=None,
                           help="zero out densities below this value first")

    p = sub.add_parser("build", help="build the grid complex and print its size")
    add_input(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("pairs", help="dump the persistence pairing")
    add_input(p)
    p.add_argument("--negate", action=argparse.BooleanOptionalAction, default=True,
                   help="work on the negated density (default)")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("reconstruct", help="forest-based graph reconstruction")
    add_input(p)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--output", default=None)
    p.add_argument("--plot", default=None, help="render field + graph overlay to this file")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("oracle", help="explicit-cancellation reconstruction")
    add_input(p)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--output", default=None)
    p.add_argument("--plot", default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("generate", help="generate a synthetic noise-model instance")
    p.add_argument("--dims", type=int, nargs="+", required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--w", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--graph", required=True, help="hidden-graph spec file")
    p.add_argument("--field-out", required=True)
    p.add_argument("--mask-out", default=None)
    p.add_argument("--truth-out", default=None)
    p.add_argument("--plot", default=None)
    p.add_argument("--skip-validate", action="store_true")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check a reconstruction against ground truth")
    p.add_argument("--graph", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--mask", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("threshold", help="superlevel-set baseline summary")
    add_input(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--mask-out", default=None)
    p.add_argument("--plot", default=None)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("bench", help="time both reconstruction paths")
    add_input(p)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--negate", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--plot", default=None)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoiseModelError as exc:
        print(f"morsetrace: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except (ValueError, KeyError, OSError) as exc:
        print(f"morsetrace: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
