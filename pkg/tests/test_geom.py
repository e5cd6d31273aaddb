import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hexmds.geom import (
    HEX_VERTS,
    HexGrid,
    MonotoneChain,
    boundary_segments,
    cell_center,
    cell_centers,
    cell_gap,
    cell_of,
    cell_vertices,
    cells_of,
    cover_matrix,
    covers,
    dist,
    hex_distance,
    region_separation,
    segment_distance,
)

from oracles import axial_center, hexagon_boundary

coord = st.floats(-50, 50, allow_nan=False, allow_infinity=False)
SQ3 = math.sqrt(3)


def test_dist_examples():
    assert dist((0, 0), (3, 4)) == 5
    assert dist((1, 1), (1, 1)) == 0
    assert dist((0, 0), (0.6, 0.8)) == pytest.approx(1.0)


def test_covers_is_closed_disk_without_slack():
    assert covers((0, 0), (1, 0))
    assert not covers((0, 0), (1.0000001, 0))
    assert covers((0, 0), (0, 0))


def test_cover_matrix_matches_scalar_predicate():
    rng = np.random.default_rng(3)
    a, b = rng.uniform(0, 3, (20, 2)), rng.uniform(0, 3, (15, 2))
    m = cover_matrix(a, b)
    assert m.shape == (20, 15)
    assert all(m[i, j] == covers(a[i], b[j]) for i in range(20) for j in range(15))


def test_cell_of_examples():
    assert cell_of((0, 0)) == (0, 0)
    assert cell_of((0.75, SQ3 / 4)) == (1, 0)
    assert cell_of((0.375, SQ3 / 8)) == (0, 0)


def test_cell_vertices_examples():
    v = cell_vertices((0, 0))
    assert np.allclose(v[0], (0.5, 0.0))
    d = np.sqrt(((v[:, None] - v[None]) ** 2).sum(-1))
    assert d.max() == pytest.approx(1.0)
    assert np.allclose(cell_vertices((1, 0)), v + (0.75, SQ3 / 4))


def test_region_separation_examples():
    assert region_separation([(0, 0)], [(1, 0)]) == 0.0
    assert region_separation([(0, 0), (1, 1)], [(0, 0), (1, 1)]) == 0.0
    # (4, -2) is the cell three units along the x-axis
    assert np.allclose(cell_center((4, -2)), (3.0, 0.0))
    assert region_separation([(0, 0)], [(4, -2)]) == pytest.approx(2.0, abs=1e-12)
    # (4, 0) sits at (3, sqrt 3); its gap is 3 sqrt(3) / 2, checked by boundary sampling
    assert region_separation([(0, 0)], [(4, 0)]) == pytest.approx(1.5 * SQ3, abs=1e-12)


@pytest.mark.parametrize("cell", [(4, 0), (4, -2), (2, 1), (3, -1), (0, 3), (5, -4)])
def test_cell_gap_matches_boundary_sampling(cell):
    a = np.array(hexagon_boundary(axial_center(0, 0), 300))
    b = np.array(hexagon_boundary(axial_center(*cell), 300))
    sampled = np.sqrt(((a[:, None] - b[None]) ** 2).sum(-1)).min()
    assert cell_gap(*cell) == pytest.approx(sampled, abs=2e-3)
    assert cell_gap(*cell) <= sampled + 1e-12


def test_region_separation_is_translation_invariant():
    a, b = [(0, 0), (1, 0)], [(5, 1), (6, -2)]
    base = region_separation(a, b)
    for dq, dr in [(3, 7), (-11, 4)]:
        shift = lambda cs: [(q + dq, r + dr) for q, r in cs]
        assert region_separation(shift(a), shift(b)) == pytest.approx(base)
    assert region_separation(a, b, HexGrid(0.3, 0.1)) == base


def test_region_separation_rejects_empty():
    with pytest.raises(ValueError):
        region_separation([], [(0, 0)])


def test_hex_distance():
    assert hex_distance((0, 0), (1, 0)) == 1
    assert hex_distance((0, 0), (2, -1)) == 2
    assert hex_distance((0, 0), (4, 0)) == 4


def test_grid_offset_is_reduced():
    assert HexGrid(0.75, SQ3 / 4) == HexGrid()
    with pytest.raises(ValueError):
        HexGrid(float("nan"), 0)


@settings(max_examples=200, deadline=None)
@given(coord, coord, st.floats(0, 3), st.floats(0, 3))
def test_cells_of_returns_a_nearest_center(x, y, dx, dy):
    grid = HexGrid(dx, dy)
    q, r = cell_of((x, y), grid)
    got = dist((x, y), cell_center((q, r), grid))
    # compare with every center in a generous neighborhood
    near = [(q + a, r + b) for a in range(-3, 4) for b in range(-3, 4)]
    best = min(dist((x, y), cell_center(c, grid)) for c in near)
    assert got <= best + 1e-9
    assert got <= 0.5 + 1e-9


def test_cells_of_tie_goes_to_smallest_cell():
    # the shared vertex of (0,0), (1,0) and (1,-1)
    p = cell_vertices((0, 0))[0]
    assert cell_of(p) == (0, 0)
    # midpoint of (0,0)-(0,1) edge
    mid = (cell_center((0, 0)) + cell_center((0, 1))) / 2
    assert cell_of(mid) == (0, 0)


def test_cells_of_rejects_non_finite():
    with pytest.raises(ValueError):
        cells_of(np.array([[0.0, np.inf]]))


def test_cell_diameter_by_sampling():
    rng = np.random.default_rng(11)
    c = cell_center((3, -2))
    # rejection sample the hexagon: a point belongs to the cell if (3,-2) is its nearest center
    pts = c + rng.uniform(-0.5, 0.5, (4000, 2))
    pts = pts[(cells_of(pts) == (3, -2)).all(axis=1)]
    d = np.sqrt(((pts[:1000, None] - pts[None, :1000]) ** 2).sum(-1))
    assert d.max() <= 1.0 + 1e-9


def test_cell_centers_vectorized():
    cells = np.array([[0, 0], [1, 0], [-2, 3]])
    assert np.allclose(cell_centers(cells), [cell_center(c) for c in cells])


def test_hex_verts_side():
    for k in range(6):
        assert np.hypot(*(HEX_VERTS[k] - HEX_VERTS[(k + 1) % 6])) == pytest.approx(0.5)


def test_segment_distance():
    assert segment_distance((0, 0), (1, 0), (0.5, -1), (0.5, 1)) == 0.0
    assert segment_distance((0, 0), (1, 0), (2, 1), (3, 1)) == pytest.approx(math.sqrt(2))


def test_monotone_chain_from_cell_boundary():
    left = [(5, j) for j in range(3)]
    right = [(6, j) for j in range(3)]
    chain = MonotoneChain.from_segments(boundary_segments(left, right), axis=(0.0, 1.0))
    assert len(chain.vertices) == 6
    assert np.all(np.diff(chain.vertices[:, 1]) > 0)
    with pytest.raises(ValueError):
        MonotoneChain(np.array([[0, 0], [0, 1], [0, 0.5]]), (0.0, 1.0))
