import numpy as np
import pytest

from morsetrace import (
    InvalidFieldError,
    ScalarField,
    SimplicialComplex,
    lower_star_filtration,
)

from helpers import grid_complex, path_complex, path_field, random_field


def test_single_vertex_filtration():
    cx = SimplicialComplex.from_simplices([[0.0, 0.0]])
    filt = lower_star_filtration(cx, ScalarField(np.array([0.0])))
    assert filt.size == 1
    assert filt.simplex_at(0) == (0, 0)
    assert filt.value(0, 0) == 0.0


def test_path_block_order():
    # blocks: a | c | b with ab before bc inside b's lower star
    filt = lower_star_filtration(path_complex(), path_field())
    order = [filt.simplex_at(p) for p in range(filt.size)]
    assert order == [(0, 0), (0, 2), (0, 1), (1, 0), (1, 1)]
    assert filt.value(1, 0) == 2.0
    assert filt.value(1, 1) == 2.0
    assert filt.lower_star_owner(1, 0) == 1
    assert filt.lower_star_owner(1, 1) == 1


def test_faces_precede_cofaces_on_large_instance():
    # around 1e5 simplices in total
    cx = grid_complex(160, 110)
    assert cx.n_simplices > 100_000
    rng = np.random.default_rng(5)
    filt = lower_star_filtration(cx, random_field(cx, rng))
    filt.validate()
    end_pos = filt.vertex_positions[cx.edges]
    assert np.all(filt.edge_positions > end_pos.max(axis=1))
    side_pos = filt.edge_positions[cx.tri_edges]
    assert np.all(filt.triangle_positions > side_pos.max(axis=1))


@pytest.mark.parametrize("extents", [(5, 5), (3, 4, 3)])
def test_negate_flag_equals_prenegated_field(extents):
    cx = grid_complex(*extents)
    rng = np.random.default_rng(7)
    field = random_field(cx, rng)
    a = lower_star_filtration(cx, field, negate=True)
    b = lower_star_filtration(cx, field.negated(), negate=False)
    assert np.array_equal(a.order_dims, b.order_dims)
    assert np.array_equal(a.order_indices, b.order_indices)
    assert np.array_equal(a.vertex_values, b.vertex_values)
    assert np.array_equal(a.edge_values, b.edge_values)
    assert np.array_equal(a.triangle_values, b.triangle_values)


def test_distinct_values_put_simplices_in_max_vertex_block():
    cx = grid_complex(6, 5)
    rng = np.random.default_rng(11)
    field = random_field(cx, rng)
    filt = lower_star_filtration(cx, field)
    f = field.values
    for e in range(cx.n_edges):
        u, v = cx.edges[e]
        expected = u if f[u] > f[v] else v
        assert filt.edge_owner[e] == expected
    for t in range(cx.n_triangles):
        verts = cx.triangles[t]
        assert filt.triangle_owner[t] == verts[np.argmax(f[verts])]


def test_blocks_are_consecutive_and_ascending():
    cx = grid_complex(5, 4)
    rng = np.random.default_rng(3)
    filt = lower_star_filtration(cx, random_field(cx, rng, tied=True))
    owners = []
    for pos in range(filt.size):
        dim, idx = filt.simplex_at(pos)
        owners.append(filt.lower_star_owner(dim, idx))
    # the owner sequence changes exactly when a new block starts
    seen = []
    for o in owners:
        if not seen or seen[-1] != o:
            seen.append(o)
    assert len(seen) == cx.n_vertices
    key = [(filt.vertex_values[v], v) for v in seen]
    assert key == sorted(key)


def test_simplexwise_value_is_nondecreasing():
    cx = grid_complex(7, 6)
    rng = np.random.default_rng(13)
    filt = lower_star_filtration(cx, random_field(cx, rng, tied=True), negate=True)
    values = [filt.value(*filt.simplex_at(p)) for p in range(filt.size)]
    assert all(a <= b for a, b in zip(values, values[1:]))


def test_field_length_mismatch_rejected():
    cx = grid_complex(3, 3)
    with pytest.raises(InvalidFieldError):
        lower_star_filtration(cx, ScalarField(np.zeros(5)))
