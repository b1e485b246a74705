import numpy as np
import pytest

from morsetrace import (
    GridSpec,
    InvalidFieldError,
    InvalidGridError,
    ScalarField,
    SimplicialComplex,
    build_grid_complex,
)

from helpers import grid_complex
from oracles import cell_complex_2d, cell_complex_3d


def test_single_cell_counts():
    cx = grid_complex(2, 2)
    assert (cx.n_vertices, cx.n_edges, cx.n_triangles) == (4, 5, 2)


def test_3x3_counts_match_cell_enumeration():
    cx = grid_complex(3, 3)
    edges, triangles = cell_complex_2d(3, 3)
    assert (cx.n_vertices, cx.n_edges, cx.n_triangles) == (9, 16, 8)
    assert set(map(tuple, cx.edges.tolist())) == edges
    assert set(map(tuple, cx.triangles.tolist())) == triangles


def test_cube_counts_match_tetrahedra_enumeration():
    cx = grid_complex(2, 2, 2)
    edges, triangles = cell_complex_3d(2, 2, 2)
    assert (cx.n_vertices, cx.n_edges, cx.n_triangles) == (8, 19, 18)
    assert set(map(tuple, cx.edges.tolist())) == edges
    assert set(map(tuple, cx.triangles.tolist())) == triangles


@pytest.mark.parametrize("extents", [(4, 3), (5, 5), (2, 6)])
def test_2d_grids_match_cell_enumeration(extents):
    cx = grid_complex(*extents)
    edges, triangles = cell_complex_2d(*extents)
    assert set(map(tuple, cx.edges.tolist())) == edges
    assert set(map(tuple, cx.triangles.tolist())) == triangles


@pytest.mark.parametrize("extents", [(3, 2, 2), (3, 3, 2), (3, 3, 4)])
def test_3d_grids_match_tetrahedra_enumeration(extents):
    cx = grid_complex(*extents)
    edges, triangles = cell_complex_3d(*extents)
    assert set(map(tuple, cx.edges.tolist())) == edges
    assert set(map(tuple, cx.triangles.tolist())) == triangles
    assert cx.euler_characteristic == len(cx.vertex_coords) - len(edges) + len(triangles)


@pytest.mark.parametrize("extents", [(2, 2), (3, 3), (7, 4), (12, 12)])
def test_2d_euler_characteristic_is_one(extents):
    assert grid_complex(*extents).euler_characteristic == 1


def test_simplex_indexing_is_lexicographic():
    cx = grid_complex(4, 4)
    edges = cx.edges.tolist()
    assert edges == sorted(edges)
    triangles = cx.triangles.tolist()
    assert triangles == sorted(triangles)


def test_boundary_and_coboundary_are_consistent():
    cx = grid_complex(4, 3, 2)
    for t in range(cx.n_triangles):
        verts = set(cx.triangles[t].tolist())
        for e in cx.tri_edges[t]:
            assert set(cx.edges[e].tolist()) <= verts
            assert t in cx.edge_triangles(int(e)).tolist()
    for v in [0, 5, cx.n_vertices - 1]:
        for e in cx.vertex_edges(v).tolist():
            assert v in cx.edges[e].tolist()


def test_every_triangle_edge_exists():
    cx = grid_complex(5, 4)
    assert cx.tri_edges.shape == (cx.n_triangles, 3)
    assert cx.tri_edges.min() >= 0


def test_edge_lookup_roundtrip():
    cx = grid_complex(3, 3)
    for e in range(cx.n_edges):
        u, v = cx.edges[e]
        assert cx.edge_id(int(u), int(v)) == e
        assert cx.edge_id(int(v), int(u)) == e


def test_invalid_grids_rejected():
    with pytest.raises(InvalidGridError):
        GridSpec((1, 4))
    with pytest.raises(InvalidGridError):
        GridSpec((4,))
    with pytest.raises(InvalidGridError):
        GridSpec((2, 2, 2, 2))
    with pytest.raises(InvalidGridError):
        GridSpec((4, 4), spacing=0.0)


def test_vertex_indexing_first_axis_fastest():
    grid = GridSpec((3, 4))
    assert grid.vertex_index((1, 0)) == 1
    assert grid.vertex_index((0, 1)) == 3
    assert grid.vertex_index((2, 3)) == 11
    coords = grid.index_coords()
    assert coords[1].tolist() == [1, 0]
    assert coords[3].tolist() == [0, 1]


def test_spacing_scales_positions():
    grid = GridSpec((2, 3), spacing=(0.5, 2.0))
    pos = grid.positions()
    assert pos[1].tolist() == [0.5, 0.0]
    assert pos[2].tolist() == [0.0, 2.0]


def test_scalar_field_validation():
    with pytest.raises(InvalidFieldError):
        ScalarField(np.array([1.0, np.nan]))
    with pytest.raises(InvalidFieldError):
        ScalarField(np.ones((2, 2)))


def test_field_pruning_zeroes_low_values():
    field = ScalarField(np.array([0.2, 5.0, 0.0, 3.0]))
    pruned = field.pruned(1.0)
    assert pruned.values.tolist() == [0.0, 5.0, 0.0, 3.0]
    assert field.values.tolist() == [0.2, 5.0, 0.0, 3.0]


def test_from_simplices_rejects_disconnected():
    with pytest.raises(ValueError):
        SimplicialComplex.from_simplices([[0, 0], [1, 0], [5, 5], [6, 5]], edges=[(0, 1), (2, 3)])


def test_from_simplices_rejects_missing_triangle_edge():
    with pytest.raises(KeyError):
        SimplicialComplex.from_simplices(
            [[0, 0], [1, 0], [0, 1]], edges=[(0, 1), (0, 2)], triangles=[(0, 1, 2)]
        )
