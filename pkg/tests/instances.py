"""Seeded local instances around one tile, small enough for enumeration."""

import numpy as np

from hexmds.geom import HexGrid, cell_centers, cells_of
from hexmds.tiling import tile_of

import oracles

MAX_CANDIDATES = 14


def local_instance(descriptor, seed, tile=(0, 0), max_candidates=MAX_CANDIDATES, grid=HexGrid()):
    """Points in and around ``tile``; returns (points, targets, candidates).

    Points are drawn in a random sub-window of the tile's bounding box grown
    by 1.5 units, then
    dropped from the end until at most ``max_candidates`` points lie within
    distance 1 of the tile's points.
    """
    rng = np.random.default_rng(seed)
    ctr = cell_centers(descriptor.cells(*tile), grid)
    lo, hi = ctr.min(axis=0) - 1.5, ctr.max(axis=0) + 1.5
    # a random sub-window keeps large tiles dense enough to be interesting
    span = np.minimum(hi - lo, rng.uniform(2.5, 5.0, 2))
    lo = rng.uniform(lo, hi - span)
    hi = lo + span
    n = int(rng.integers(4, 3 * max_candidates))
    pts = rng.uniform(lo, hi, (n, 2))
    while True:
        tiles, _ = tile_of(cells_of(pts, grid), descriptor)
        targets = [i for i, (a, b) in enumerate(tiles.tolist()) if (a, b) == tuple(tile)]
        cand = oracles.near(pts.tolist(), targets)
        if len(cand) <= max_candidates:
            return pts, targets, cand
        pts = pts[:-1]
