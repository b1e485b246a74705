"""Property tests over randomized small instances."""

import numpy as np
from hypothesis import given, settings, strategies as st

from morsetrace import (
    ScalarField,
    betti1,
    compute_pairs,
    compute_pairs_reduction,
    lower_star_filtration,
    oracle_reconstruct,
    reconstruct,
)

from helpers import grid_complex
from oracles import graph_betti1

dims_2d = st.tuples(st.integers(2, 6), st.integers(2, 6))
dims_3d = st.tuples(st.integers(2, 4), st.integers(2, 4), st.integers(2, 3))
seeds = st.integers(0, 2**32 - 1)


def make_field(cx, seed, tied):
    rng = np.random.default_rng(seed)
    if tied:
        return ScalarField(rng.integers(0, 3, cx.n_vertices).astype(float))
    return ScalarField(rng.random(cx.n_vertices))


@settings(max_examples=40, deadline=None)
@given(dims=st.one_of(dims_2d, dims_3d), seed=seeds, tied=st.booleans())
def test_filtration_respects_faces_and_blocks(dims, seed, tied):
    cx = grid_complex(*dims)
    filt = lower_star_filtration(cx, make_field(cx, seed, tied), negate=True)
    filt.validate()
    values = [filt.value(*filt.simplex_at(p)) for p in range(filt.size)]
    assert all(a <= b for a, b in zip(values, values[1:]))


@settings(max_examples=30, deadline=None)
@given(dims=dims_2d, seed=seeds, tied=st.booleans())
def test_pairing_partition_property(dims, seed, tied):
    cx = grid_complex(*dims)
    pairing = compute_pairs(lower_star_filtration(cx, make_field(cx, seed, tied)))
    births = int(np.count_nonzero(pairing.vertex_partner >= 0))
    assert births + pairing.n_essential(0) == cx.n_vertices
    assert pairing.n_edge_triangle_pairs + pairing.n_essential(2) == cx.n_triangles
    assert (
        pairing.n_vertex_edge_pairs
        + pairing.n_edge_triangle_pairs
        + pairing.n_essential(1)
        == cx.n_edges
    )


@settings(max_examples=25, deadline=None)
@given(dims=st.one_of(dims_2d, dims_3d), seed=seeds, tied=st.booleans())
def test_twist_equals_naive_reduction(dims, seed, tied):
    cx = grid_complex(*dims)
    filt = lower_star_filtration(cx, make_field(cx, seed, tied), negate=True)
    assert compute_pairs_reduction(filt, twist=True).same_as(
        compute_pairs_reduction(filt, twist=False)
    )


@settings(max_examples=25, deadline=None)
@given(
    dims=st.one_of(dims_2d, dims_3d),
    seed=seeds,
    tied=st.booleans(),
    q=st.floats(0.0, 1.0),
)
def test_fast_path_equals_cancellation_path(dims, seed, tied, q):
    cx = grid_complex(*dims)
    rho = make_field(cx, seed, tied)
    pairing = compute_pairs(lower_star_filtration(cx, rho, negate=True))
    finite = pairing.edge_pers[np.isfinite(pairing.edge_pers)]
    delta = float(q * (finite.max() if len(finite) else 1.0))
    a = reconstruct(cx, rho, delta)
    b = oracle_reconstruct(cx, rho, delta)
    assert np.array_equal(a.vertices, b.vertices)
    assert np.array_equal(a.edges, b.edges)
    assert betti1(a) == graph_betti1(a.vertices.tolist(), a.edge_pairs.tolist())


@settings(max_examples=20, deadline=None)
@given(dims=dims_2d, seed=seeds, shift=st.floats(-5, 5), scale=st.floats(0.1, 8))
def test_pairing_shift_and_scale_covariance(dims, seed, shift, scale):
    cx = grid_complex(*dims)
    rng = np.random.default_rng(seed)
    base = rng.random(cx.n_vertices)
    p0 = compute_pairs(lower_star_filtration(cx, ScalarField(base)))
    p1 = compute_pairs(lower_star_filtration(cx, ScalarField(base + shift)))
    assert np.array_equal(p0.vertex_partner, p1.vertex_partner)
    assert np.allclose(p0.edge_pers, p1.edge_pers)
    p2 = compute_pairs(lower_star_filtration(cx, ScalarField(base * scale)))
    assert np.array_equal(p0.vertex_partner, p2.vertex_partner)
    finite = np.isfinite(p0.edge_pers)
    assert np.allclose(p2.edge_pers[finite], scale * p0.edge_pers[finite])
