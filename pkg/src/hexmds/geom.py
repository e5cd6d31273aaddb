"""Planar primitives: distances, the side-1/2 hexagonal cell grid, chains.

Cells are flat-top regular hexagons of side 1/2 addressed by axial
coordinates ``(q, r)``; the center of ``(q, r)`` is
``(0.75 q + dx, sqrt(3)/2 (r + q/2) + dy)``.  A cell has diameter exactly 1,
so any point inside it covers the whole cell with a unit disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

SQRT3 = math.sqrt(3.0)
CELL_SIDE = 0.5
TIE_EPS = 1e-12
DIST_TOL = 1e-9

# axial neighbor steps in counter-clockwise order starting at the upper right
NEIGHBORS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))

_ANGLES = np.deg2rad(np.arange(6) * 60.0)
HEX_VERTS = np.stack([CELL_SIDE * np.cos(_ANGLES), CELL_SIDE * np.sin(_ANGLES)], axis=1)

Point = tuple[float, float]
CellId = tuple[int, int]


@dataclass(frozen=True)
class HexGrid:
    """Cell grid of side 1/2 translated by ``(dx, dy)``.

    The offset is reduced into one fundamental domain of the center lattice,
    so two grids that describe the same partition compare equal.
    """

    dx: float = 0.0
    dy: float = 0.0

    side = CELL_SIDE

    def __post_init__(self):
        if not (math.isfinite(self.dx) and math.isfinite(self.dy)):
            raise ValueError("grid offset must be finite")
        fq = self.dx / 0.75
        fr = self.dy / (SQRT3 / 2) - fq / 2
        fq -= math.floor(fq)
        fr -= math.floor(fr)
        object.__setattr__(self, "dx", 0.75 * fq)
        object.__setattr__(self, "dy", SQRT3 / 2 * (fr + fq / 2))


def dist(p: Sequence[float], q: Sequence[float]) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def sqdist(p: Sequence[float], q: Sequence[float]) -> float:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def covers(center: Sequence[float], target: Sequence[float]) -> bool:
    """Closed unit disk test on squared distances, no tolerance."""
    return sqdist(center, target) <= 1.0


def cover_matrix(centers: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Boolean ``(len(centers), len(targets))`` closed-unit-disk coverage."""
    centers = np.asarray(centers, dtype=float).reshape(-1, 2)
    targets = np.asarray(targets, dtype=float).reshape(-1, 2)
    dx = centers[:, None, 0] - targets[None, :, 0]
    dy = centers[:, None, 1] - targets[None, :, 1]
    return dx * dx + dy * dy <= 1.0


def cell_center(c: Sequence[int], grid: HexGrid = HexGrid()) -> np.ndarray:
    q, r = c
    return np.array([0.75 * q + grid.dx, SQRT3 / 2 * (r + q / 2) + grid.dy])


def cell_centers(cells: np.ndarray, grid: HexGrid = HexGrid()) -> np.ndarray:
    cells = np.asarray(cells, dtype=float).reshape(-1, 2)
    x = 0.75 * cells[:, 0] + grid.dx
    y = SQRT3 / 2 * (cells[:, 1] + cells[:, 0] / 2) + grid.dy
    return np.stack([x, y], axis=1)


def cells_of(points: np.ndarray, grid: HexGrid = HexGrid()) -> np.ndarray:
    """Nearest-center cell of every point, ties to the smallest ``(q, r)``.

    Returns an ``(n, 2)`` int64 array.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    x = pts[:, 0] - grid.dx
    y = pts[:, 1] - grid.dy
    fq = x / 0.75
    fr = y / (SQRT3 / 2) - fq / 2
    q0 = np.floor(fq).astype(np.int64)
    r0 = np.floor(fr).astype(np.int64)
    # the nearest center is a vertex of the lattice rhombus holding the point
    # or one of its lattice neighbors; scanning a 4x4 window is exhaustive
    dq, dr = np.meshgrid(np.arange(-1, 3), np.arange(-1, 3), indexing="ij")
    cq = q0[:, None] + dq.ravel()[None, :]
    cr = r0[:, None] + dr.ravel()[None, :]
    cx = 0.75 * cq
    cy = SQRT3 / 2 * (cr + cq / 2)
    d2 = (cx - x[:, None]) ** 2 + (cy - y[:, None]) ** 2
    dmin = d2.min(axis=1, keepdims=True)
    tied = d2 <= dmin + TIE_EPS
    big = np.iinfo(np.int64).max // 4
    key_q = np.where(tied, cq, big)
    qbest = key_q.min(axis=1, keepdims=True)
    key_r = np.where(tied & (cq == qbest), cr, big)
    rbest = key_r.min(axis=1)
    return np.stack([qbest[:, 0], rbest], axis=1)


def cell_of(p: Sequence[float], grid: HexGrid = HexGrid()) -> CellId:
    q, r = cells_of(np.asarray(p, dtype=float)[None, :], grid)[0]
    return int(q), int(r)


def cell_vertices(c: Sequence[int], grid: HexGrid = HexGrid()) -> np.ndarray:
    """The six vertices, counter-clockwise from angle 0."""
    return cell_center(c, grid)[None, :] + HEX_VERTS


def hex_distance(a: Sequence[int], b: Sequence[int]) -> int:
    dq = a[0] - b[0]
    dr = a[1] - b[1]
    return (abs(dq) + abs(dr) + abs(dq + dr)) // 2


def point_segment_distance(p, a, b) -> float:
    p = np.asarray(p, dtype=float)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ab = b - a
    den = float(ab @ ab)
    t = 0.0 if den == 0.0 else min(1.0, max(0.0, float((p - a) @ ab) / den))
    return float(np.hypot(*(p - (a + t * ab))))


def _orient(a, b, c) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def segments_intersect(a, b, c, d) -> bool:
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    if ((o1 > 0 and o2 < 0) or (o1 < 0 and o2 > 0)) and ((o3 > 0 and o4 < 0) or (o3 < 0 and o4 > 0)):
        return True
    for o, p, q, r in ((o1, a, b, c), (o2, a, b, d), (o3, c, d, a), (o4, c, d, b)):
        if o == 0 and min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1]):
            return True
    return False


def segment_distance(a, b, c, d) -> float:
    if segments_intersect(a, b, c, d):
        return 0.0
    return min(
        point_segment_distance(a, c, d),
        point_segment_distance(b, c, d),
        point_segment_distance(c, a, b),
        point_segment_distance(d, a, b),
    )


@lru_cache(maxsize=None)
def cell_gap(dq: int, dr: int) -> float:
    """Exact distance between the closed cells ``(0, 0)`` and ``(dq, dr)``."""
    if hex_distance((0, 0), (dq, dr)) <= 1:
        return 0.0
    a = HEX_VERTS
    b = HEX_VERTS + cell_center((dq, dr))
    best = math.inf
    for i in range(6):
        for j in range(6):
            best = min(best, segment_distance(a[i], a[(i + 1) % 6], b[j], b[(j + 1) % 6]))
    return best


def region_separation(cells_a: Iterable[Sequence[int]], cells_b: Iterable[Sequence[int]], grid: HexGrid = HexGrid()) -> float:
    """Minimum distance between the closed unions of two cell sets.

    Translation invariant, so the grid offset never changes the answer.
    """
    a = np.unique(np.asarray(list(cells_a), dtype=np.int64).reshape(-1, 2), axis=0)
    b = np.unique(np.asarray(list(cells_b), dtype=np.int64).reshape(-1, 2), axis=0)
    if len(a) == 0 or len(b) == 0:
        raise ValueError("region_separation needs two nonempty cell sets")
    diffs = np.unique((b[None, :, :] - a[:, None, :]).reshape(-1, 2), axis=0)
    # the nearest pair has the smallest center distance up to a cell diameter
    cd = np.hypot(0.75 * diffs[:, 0], SQRT3 / 2 * (diffs[:, 1] + diffs[:, 0] / 2))
    keep = diffs[cd <= cd.min() + 1.0 + DIST_TOL]
    return min(cell_gap(int(q), int(r)) for q, r in keep)


def shared_edge(c: Sequence[int], step: Sequence[int], grid: HexGrid = HexGrid()) -> np.ndarray:
    """Edge shared by cell ``c`` and its neighbor ``c + step`` as a (2, 2) array."""
    k = NEIGHBORS.index(tuple(step))
    # neighbor k sits across the edge between vertices k and k+1
    v = cell_vertices(c, grid)
    return np.stack([v[k], v[(k + 1) % 6]])


def boundary_segments(inner: Iterable[Sequence[int]], outer: Iterable[Sequence[int]], grid: HexGrid = HexGrid()) -> list[np.ndarray]:
    """All edges separating a cell of ``inner`` from a neighboring cell of ``outer``."""
    outer_set = {tuple(map(int, c)) for c in outer}
    segs = []
    for c in sorted({tuple(map(int, c)) for c in inner}):
        for step in NEIGHBORS:
            if (c[0] + step[0], c[1] + step[1]) in outer_set:
                segs.append(shared_edge(c, step, grid))
    return segs


@dataclass(frozen=True)
class MonotoneChain:
    """Polyline crossed at most once by every perpendicular of ``axis``."""

    vertices: np.ndarray
    axis: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float).reshape(-1, 2)
        object.__setattr__(self, "vertices", v)
        proj = v @ np.asarray(self.axis, dtype=float)
        if len(v) > 1 and np.any(np.diff(proj) < -DIST_TOL):
            raise ValueError("chain is not monotone with respect to its axis")

    @classmethod
    def from_segments(cls, segments: Sequence[np.ndarray], axis=(0.0, 1.0)) -> "MonotoneChain":
        """Join connected edges into one polyline ordered along ``axis``."""
        ax = np.asarray(axis, dtype=float)
        pts = []
        for s in segments:
            a, b = (s[0], s[1]) if s[0] @ ax <= s[1] @ ax else (s[1], s[0])
            pts.append((float(a @ ax), a, b))
        pts.sort(key=lambda t: t[0])
        verts = [pts[0][1]]
        for _, a, b in pts:
            if np.hypot(*(a - verts[-1])) > DIST_TOL:
                raise ValueError("segments do not form a connected chain")
            verts.append(b)
        return cls(np.array(verts), tuple(axis))

    def segments(self):
        v = self.vertices
        return [(v[i], v[i + 1]) for i in range(len(v) - 1)]

    def distance(self, other: "MonotoneChain") -> float:
        return min(segment_distance(a, b, c, d) for a, b in self.segments() for c, d in other.segments())

    def point_distance(self, p) -> float:
        return min(point_segment_distance(p, a, b) for a, b in self.segments())
