"""Static SVG pictures of an instance, its cell grid, tiles and a solution."""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from hexmds.geom import HEX_VERTS, HexGrid, cell_centers, cells_of
from hexmds.tiling import TilingDescriptor, tile_of

SCALE = 40.0
MARGIN = 1.0
PALETTE = ("#f4cccc", "#cfe2f3", "#d9ead3", "#fff2cc", "#ead1dc", "#d0e0e3", "#fce5cd")


def _f(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _cells_in(x0, y0, x1, y1, grid: HexGrid) -> np.ndarray:
    corners = np.array([[x0, y0], [x0, y1], [x1, y0], [x1, y1]])
    c = cells_of(corners, grid)
    qs = range(int(c[:, 0].min()) - 2, int(c[:, 0].max()) + 3)
    rmin, rmax = int(c[:, 1].min()) - 2 - len(qs), int(c[:, 1].max()) + 2 + len(qs)
    cand = np.array([(q, r) for q in qs for r in range(rmin, rmax + 1)], dtype=np.int64)
    ctr = cell_centers(cand, grid)
    keep = (ctr[:, 0] >= x0 - 0.5) & (ctr[:, 0] <= x1 + 0.5) & (ctr[:, 1] >= y0 - 0.5) & (ctr[:, 1] <= y1 + 0.5)
    return cand[keep]


def render_svg(points, chosen: Sequence[int] = (), tiling: TilingDescriptor | None = None,
               grid: HexGrid = HexGrid(), bbox=None, title: str = "") -> str:
    """SVG 1.1 text; a pure function of its arguments."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if bbox is None:
        bbox = (*pts.min(axis=0), *pts.max(axis=0)) if len(pts) else (0.0, 0.0, 1.0, 1.0)
    x0, y0, x1, y1 = (float(v) for v in bbox)
    x0, y0, x1, y1 = x0 - MARGIN, y0 - MARGIN, x1 + MARGIN, y1 + MARGIN
    w, h = (x1 - x0) * SCALE, (y1 - y0) * SCALE

    def X(x):
        return _f((x - x0) * SCALE)

    def Y(y):
        return _f((y1 - y) * SCALE)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_f(w)}" height="{_f(h)}" '
        f'viewBox="0 0 {_f(w)} {_f(h)}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    cells = _cells_in(x0, y0, x1, y1, grid)
    fills = ["none"] * len(cells)
    if tiling is not None and len(cells):
        tiles, _ = tile_of(cells, tiling)
        fills = [PALETTE[tiling.color(int(i), int(j)) % len(PALETTE)] for i, j in tiles]
    out.append('<g id="cells" stroke="#999999" stroke-width="0.5">')
    for (q, r), fill, c in zip(cells.tolist(), fills, cell_centers(cells, grid)):
        poly = " ".join(f"{X(c[0] + vx)},{Y(c[1] + vy)}" for vx, vy in HEX_VERTS)
        out.append(f'<polygon data-cell="{q},{r}" points="{poly}" fill="{fill}"/>')
    out.append("</g>")
    chosen = sorted(set(int(c) for c in chosen))
    out.append('<g id="disks" fill="none" stroke="#cc0000" stroke-width="1">')
    for c in chosen:
        out.append(f'<circle cx="{X(pts[c, 0])}" cy="{Y(pts[c, 1])}" r="{_f(SCALE)}"/>')
    out.append("</g>")
    out.append('<g id="points">')
    picked = set(chosen)
    for i, (x, y) in enumerate(pts):
        color = "#cc0000" if i in picked else "#000000"
        out.append(f'<circle data-index="{i}" cx="{X(x)}" cy="{Y(y)}" r="2.5" fill="{color}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
