"""Approximation drivers and the exact per-tile solvers behind them.

Every solver takes an ``(n, 2)`` point array and returns a
:class:`~hexmds.cover.Solution` whose ``chosen`` indices point into it.
Tiles are solved against ``chi(S ∩ tile, S)``: any point of the instance may
serve as a center, not just the points inside the tile.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from hexmds import kernels
from hexmds import tiling as tl
from hexmds.cover import (
    CoverInstance,
    CoverTables,
    InstanceTooLarge,
    PointIndex,
    Solution,
    is_dominating,
    min_cover_bounded,
)
from hexmds.geom import HexGrid, MonotoneChain, boundary_segments, cells_of, cover_matrix

DEFAULT_WINDOW_LIMIT = 64
CROSSING_CAP = 9
CROSSING_MODES = ("joint", "per_side")


class WindowTooDense(InstanceTooLarge):
    """A shifting window holds more points than the exact window solver accepts."""

    def __init__(self, window: str, count: int, limit: int):
        super().__init__(f"window too dense: {window} holds {count} points > limit {limit}")
        self.window = window
        self.count = count
        self.limit = limit


def _pmap(fn, items, threads: int):
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


class _Instance:
    """Point array with its cells and a KD-tree, shared by one solver run."""

    def __init__(self, points, grid: HexGrid):
        self.points = np.asarray(points, dtype=float).reshape(-1, 2)
        self.grid = grid
        self.cells = cells_of(self.points, grid) if len(self.points) else np.zeros((0, 2), dtype=np.int64)
        self.index = PointIndex(self.points)

    def __len__(self):
        return len(self.points)

    def nonempty_cells(self, targets) -> int:
        if len(targets) == 0:
            return 0
        return len(np.unique(self.cells[np.asarray(targets)], axis=0))


def _empty(algorithm: str, params: dict, guarantee=None) -> Solution:
    return Solution((), algorithm, params, certified=True, guarantee=guarantee)


def _bits(positions) -> int:
    m = 0
    for p in positions:
        m |= 1 << int(p)
    return m


# -- cell baseline -------------------------------------------------------------


def cell_baseline(points, grid: HexGrid = HexGrid()) -> Solution:
    """Smallest-index point of every non-empty cell; always dominating."""
    inst = _Instance(points, grid)
    params = {"grid_offset": [grid.dx, grid.dy]}
    if len(inst) == 0:
        return _empty("cell-baseline", params)
    _, first = np.unique(inst.cells, axis=0, return_index=True)
    chosen = tuple(sorted(int(i) for i in first))
    return Solution(chosen, "cell-baseline", params, certified=is_dominating(inst.points, chosen))


# -- septa tiles -----------------------------------------------------------------


def faithful_septa_cover(points, targets: Sequence[int], candidates: Sequence[int], initial: Sequence[int]) -> tuple[int, ...]:
    """Descending size loop over candidate subsets, the literal per-tile search.

    ``initial`` is the one-point-per-cell cover. Sizes run from ``len(initial)
    - 1`` down to 1; at size 6 the loop takes 5-subsets and asks for one more
    candidate whose disk holds everything they leave uncovered. Each size that
    admits a cover replaces the current answer.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    cand = list(candidates)
    targets = list(targets)
    cov = cover_matrix(pts[cand], pts[targets])
    masks = [_bits(np.flatnonzero(row)) for row in cov]
    full = (1 << len(targets)) - 1
    best = tuple(sorted(initial))
    for i in range(len(initial) - 1, 0, -1):
        if i == 6:
            for xs in itertools.combinations(range(len(cand)), 5):
                u = 0
                for c in xs:
                    u |= masks[c]
                left = full & ~u
                hit = next((p for p in range(len(cand)) if p not in xs and masks[p] & left == left), None)
                if hit is not None:
                    best = tuple(sorted(cand[c] for c in xs + (hit,)))
                    break
        else:
            for xs in itertools.combinations(range(len(cand)), i):
                u = 0
                for c in xs:
                    u |= masks[c]
                if u == full:
                    best = tuple(sorted(cand[c] for c in xs))
                    break
    return best


def _septa_tile(inst: _Instance, targets: np.ndarray, faithful: bool = False) -> tuple[int, ...]:
    cand = inst.index.chi(targets)
    if faithful:
        _, first = np.unique(inst.cells[targets], axis=0, return_index=True)
        initial = [int(targets[i]) for i in first]
        return faithful_septa_cover(inst.points, targets, cand, initial)
    ub = inst.nonempty_cells(targets)
    sol = min_cover_bounded(CoverInstance(inst.points, targets, cand), ub)
    assert sol is not None, "one point per cell always covers a tile"
    return sol.chosen


# -- super-cell tiles ---------------------------------------------------------------


def _three_region_cover(points, targets: np.ndarray, cand: np.ndarray, labels: np.ndarray, ub: int,
                        size_only: bool = False):
    """Optimal cover when no disk reaches both the G1 and G3 targets.

    Enumerates middle sets covering every G2 target, then covers what is left
    of G1 and G3 independently. Returns None if nothing fits in ``ub``, the
    optimal size if ``size_only``.
    """
    if len(targets) == 0:
        return 0 if size_only else ()
    tab = CoverTables(cover_matrix(points[cand], points[targets]))
    g1, g2, g3 = (tab.mask_of(np.flatnonzero(labels == g)) for g in ("G1", "G2", "G3"))
    best, xs = kernels.supercell_search(tab.masks, g1, g2, g3, int(ub), tab.conflict, tab.ptr, tab.idx, tab.tcount)
    if best < 0:
        return None
    if size_only:
        return int(best)
    x = [int(c) for c in xs if c >= 0]
    covx = np.zeros_like(g1)
    for c in x:
        covx |= tab.masks[c]
    picked = list(x)
    for g in (g1, g3):
        rest = g & ~covx
        size = tab.min_size(best, rest)
        picked += tab.first_cover(size, rest)
    assert len(picked) == best
    return tuple(sorted(int(cand[c]) for c in picked))


def _supercell_tile(inst: _Instance, targets: np.ndarray, labels: np.ndarray) -> tuple[int, ...]:
    cand = inst.index.chi(targets)
    chosen = _three_region_cover(inst.points, targets, cand, labels, inst.nonempty_cells(targets))
    assert chosen is not None, "one point per cell always covers a tile"
    return chosen


# -- duper-cell windows ----------------------------------------------------------------


class _Divider:
    """The chain between the two halves of a duper-cell, extended by vertical rays."""

    def __init__(self, q0: int, r0: int, half: int, rows: int, grid: HexGrid):
        left = [(q0 + half - 1, r0 + j) for j in range(rows)]
        right = [(q0 + half, r0 + j) for j in range(rows)]
        self.chain = MonotoneChain.from_segments(boundary_segments(left, right, grid), axis=(0.0, 1.0))
        v = self.chain.vertices
        self.vx, self.vy = v[:, 0], v[:, 1]

    def distance(self, p) -> float:
        x, y = float(p[0]), float(p[1])
        d = self.chain.point_distance(p)
        if y <= self.vy[0]:
            d = min(d, abs(x - self.vx[0]))
        if y >= self.vy[-1]:
            d = min(d, abs(x - self.vx[-1]))
        return d

    def is_left(self, p) -> bool:
        return float(p[0]) < float(np.interp(p[1], self.vy, self.vx))


def _greedy_lb(resid: int, conflict: list[int]) -> int:
    n = 0
    while resid:
        t = (resid & -resid).bit_length() - 1
        resid &= ~conflict[t]
        n += 1
    return n


class _Half:
    """One half of a duper-cell window: targets, side-local candidates, cached solves."""

    def __init__(self, points, targets, labels, cand):
        self.points = points
        self.targets = targets
        self.labels = labels
        self.cand = cand
        self.cache: dict[int, int] = {}

    def size(self, resid: int) -> int:
        """Optimal cover size of the residual target subset, or -1 if uncoverable."""
        if resid == 0:
            return 0
        if resid not in self.cache:
            sel = [i for i in range(len(self.targets)) if resid >> i & 1]
            tg = self.targets[sel]
            cov = cover_matrix(self.points[self.cand], self.points[tg]) if len(self.cand) else np.zeros((0, len(sel)), bool)
            if len(self.cand) == 0 or not cov.any(axis=0).all():
                self.cache[resid] = -1
            else:
                self.cache[resid] = _three_region_cover(self.points, tg, self.cand, self.labels[sel], len(sel), True)
        return self.cache[resid]

    def cover(self, resid: int) -> tuple[int, ...]:
        if resid == 0:
            return ()
        sel = [i for i in range(len(self.targets)) if resid >> i & 1]
        return _three_region_cover(self.points, self.targets[sel], self.cand, self.labels[sel], len(sel))


def _dupercell_window(
    inst: _Instance,
    targets: np.ndarray,
    origin: tuple[int, int],
    cap: int = CROSSING_CAP,
    crossing_mode: str = "joint",
) -> tuple[tuple[int, ...], dict]:
    if crossing_mode not in CROSSING_MODES:
        raise ValueError(f"crossing_mode must be one of {CROSSING_MODES}")
    targets = np.asarray(targets, dtype=np.int64)
    if len(targets) == 0:
        return (), {"crossing": 0}
    t = tl.default_dupercell()
    half = tl.mu_column(t)
    cols, rows = t.basis[0][0], t.basis[1][1]
    q0, r0 = origin
    pts = inst.points
    local = inst.cells[targets] - np.array([q0, r0])
    if np.any((local[:, 0] < 0) | (local[:, 0] >= cols) | (local[:, 1] < 0) | (local[:, 1] >= rows)):
        raise ValueError("targets outside the duper-cell window")
    side = np.where(local[:, 0] < half, 0, 1)
    col = local[:, 0] - side * half
    labels = np.where(col == 0, "G1", np.where(col == half - 1, "G3", "G2"))

    cand = inst.index.chi(targets)
    cov = cover_matrix(pts[cand], pts[targets])
    divider = _Divider(q0, r0, half, rows, inst.grid)
    crossing = np.array([divider.distance(pts[c]) <= 1.0 + 1e-9 for c in cand], dtype=bool)
    # a disk reaching targets on both sides crosses the divider; keep it in the crossing set
    crossing |= cov[:, side == 0].any(axis=1) & cov[:, side == 1].any(axis=1)

    T = len(targets)
    masks = [_bits(np.flatnonzero(row)) for row in cov]
    conflict = [0] * T
    for m in masks:
        for i in range(T):
            if m >> i & 1:
                conflict[i] |= m
    pos = [np.flatnonzero(side == s) for s in (0, 1)]
    halves = []
    for s in (0, 1):
        own = cand[~crossing & cov[:, pos[s]].any(axis=1)] if len(pos[s]) else cand[:0]
        halves.append(_Half(pts, targets[pos[s]], labels[pos[s]], own))

    def split(resid: int) -> tuple[int, int]:
        return (_bits(k for k, i in enumerate(pos[0]) if resid >> int(i) & 1),
                _bits(k for k, i in enumerate(pos[1]) if resid >> int(i) & 1))

    # a crossing disk whose coverage another crossing disk contains is never
    # needed; per-side caps only allow the swap within one side
    q = [int(c) for c in np.flatnonzero(crossing)]
    sides = {a: 0 if divider.is_left(pts[cand[a]]) else 1 for a in q}
    kept = []
    for a in q:
        dominated = any(
            (masks[a] & ~masks[b]) == 0 and (masks[a] != masks[b] or b < a)
            and (crossing_mode == "joint" or sides[a] == sides[b])
            for b in q if b != a
        )
        if not dominated:
            kept.append(a)
    q_side = [sides[a] for a in kept]

    full = (1 << T) - 1
    best = [T + 1, None]
    chosen: list[int] = []
    counts = [0, 0]

    def visit(start: int, covered: int):
        resid = full & ~covered
        if len(chosen) + _greedy_lb(resid, conflict) >= best[0]:
            return
        lr = split(resid)
        a, b = halves[0].size(lr[0]), halves[1].size(lr[1])
        if a >= 0 and b >= 0 and len(chosen) + a + b < best[0]:
            best[0] = len(chosen) + a + b
            best[1] = (tuple(chosen), lr)
        for j in range(start, len(kept)):
            c = kept[j]
            if masks[c] & resid == 0:
                continue
            s = q_side[j]
            if crossing_mode == "joint" and len(chosen) >= cap:
                break
            if crossing_mode == "per_side" and counts[s] >= cap:
                continue
            chosen.append(c)
            counts[s] += 1
            visit(j + 1, covered | masks[c])
            counts[s] -= 1
            chosen.pop()

    visit(0, 0)
    if best[1] is None:
        raise RuntimeError("crossing cap too small to cover the window")
    cross, lr = best[1]
    picked = {int(cand[c]) for c in cross}
    picked.update(halves[0].cover(lr[0]))
    picked.update(halves[1].cover(lr[1]))
    out = tuple(sorted(picked))
    assert len(out) == best[0]
    return out, {"crossing": len(cross), "crossing_candidates": len(kept)}


# -- public per-tile solvers ----------------------------------------------------------------


def _tile_members(inst: _Instance, t: tl.TilingDescriptor, tile) -> tuple[np.ndarray, np.ndarray]:
    if len(inst) == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    tiles, k = tl.tile_of(inst.cells, t)
    sel = np.flatnonzero((tiles[:, 0] == tile[0]) & (tiles[:, 1] == tile[1]))
    return sel, k[sel]


def solve_septa(points, tile=(0, 0), grid: HexGrid = HexGrid(), descriptor: tl.TilingDescriptor | None = None,
                faithful: bool = False) -> Solution:
    """Minimum cover of the points of one septa tile, centers drawn from the instance."""
    t = descriptor or tl.default_septa()
    inst = _Instance(points, grid)
    targets, _ = _tile_members(inst, t, tile)
    params = {"tile": list(tile), "faithful": faithful}
    if len(targets) == 0:
        return _empty("septa", params, 1.0)
    chosen = _septa_tile(inst, targets, faithful)
    return Solution(chosen, "septa", params, certified=is_dominating(inst.points, chosen, targets), guarantee=1.0,
                    details={"targets": len(targets), "nonempty_cells": inst.nonempty_cells(targets)})


def solve_supercell(points, tile=(0, 0), grid: HexGrid = HexGrid(), descriptor: tl.TilingDescriptor | None = None) -> Solution:
    """Minimum cover of the points of one super-cell via its three-region split."""
    t = descriptor or tl.default_supercell()
    inst = _Instance(points, grid)
    targets, k = _tile_members(inst, t, tile)
    params = {"tile": list(tile)}
    if len(targets) == 0:
        return _empty("supercell", params, 1.0)
    labels = np.asarray(t.labels)[k]
    chosen = _supercell_tile(inst, targets, labels)
    return Solution(chosen, "supercell", params, certified=is_dominating(inst.points, chosen, targets), guarantee=1.0,
                    details={"targets": len(targets), "nonempty_cells": inst.nonempty_cells(targets)})


def solve_dupercell(points, tile=(0, 0), grid: HexGrid = HexGrid(), cap: int = CROSSING_CAP,
                    crossing_mode: str = "joint", origin: tuple[int, int] | None = None) -> Solution:
    """Minimum cover of the points of one duper-cell window.

    The window is the default duper-cell ``tile`` or, when ``origin`` is
    given, the same block of cells translated so its first cell is ``origin``.
    """
    t = tl.default_dupercell()
    inst = _Instance(points, grid)
    if origin is None:
        origin = tuple(int(x) for x in t.cells(*tile)[0])
    cols, rows = t.basis[0][0], t.basis[1][1]
    if len(inst):
        loc = inst.cells - np.asarray(origin)
        targets = np.flatnonzero((loc[:, 0] >= 0) & (loc[:, 0] < cols) & (loc[:, 1] >= 0) & (loc[:, 1] < rows))
    else:
        targets = np.zeros(0, dtype=np.int64)
    params = {"origin": list(origin), "cap": cap, "crossing_mode": crossing_mode}
    if len(targets) == 0:
        return _empty("dupercell", params, 1.0)
    chosen, info = _dupercell_window(inst, targets, origin, cap, crossing_mode)
    return Solution(chosen, "dupercell", params, certified=is_dominating(inst.points, chosen, targets), guarantee=1.0,
                    details={"targets": len(targets), **info})


# -- colour-class drivers ----------------------------------------------------------------------


def _colored(inst: _Instance, t: tl.TilingDescriptor, algorithm: str, params: dict, solve_tile, threads: int,
             guarantee: float | None) -> Solution:
    if len(inst) == 0:
        return _empty(algorithm, params, guarantee)
    tiles, k = tl.tile_of(inst.cells, t)
    groups: dict[tuple[int, int], list[int]] = {}
    for i, (a, b) in enumerate(tiles.tolist()):
        groups.setdefault((a, b), []).append(i)
    order = sorted(groups, key=lambda ij: (t.color(*ij), ij))
    jobs = [(ij, np.asarray(groups[ij], dtype=np.int64)) for ij in order]
    results = _pmap(lambda job: solve_tile(job[1], k[job[1]]), jobs, threads)
    chosen = tuple(sorted(set().union(*results)))
    per_tile = [{"tile": list(ij), "color": t.color(*ij), "points": len(idx), "size": len(r)}
                for (ij, idx), r in zip(jobs, results)]
    per_color = {}
    for row in per_tile:
        per_color[row["color"]] = per_color.get(row["color"], 0) + row["size"]
    return Solution(chosen, algorithm, params, certified=is_dominating(inst.points, chosen), guarantee=guarantee,
                    details={"per_tile": per_tile, "per_color": per_color})


def _tiling_guarantee(t: tl.TilingDescriptor, factor: float) -> tuple[float | None, list[str]]:
    report = tl.certified(t)
    return (factor if report.passed else None), report.violations


def four_factor(points, grid: HexGrid = HexGrid(), descriptor: tl.TilingDescriptor | None = None,
                faithful: bool = False, threads: int = 1) -> Solution:
    """Union of optimal septa-tile covers over every colour class."""
    t = descriptor or tl.default_septa()
    guarantee, violations = _tiling_guarantee(t, float(t.color_count))
    inst = _Instance(points, grid)
    params = {"grid_offset": [grid.dx, grid.dy], "faithful": faithful}
    sol = _colored(inst, t, "four", params, lambda tg, _k: _septa_tile(inst, tg, faithful), threads, guarantee)
    if violations:
        sol.details["tiling_violations"] = violations
    return sol


def three_factor(points, grid: HexGrid = HexGrid(), descriptor: tl.TilingDescriptor | None = None,
                 threads: int = 1) -> Solution:
    """Union of optimal super-cell covers over the colour classes.

    The guarantee equals the number of colour classes, so a four-class
    fallback colouring reports 4 instead of 3.
    """
    t = descriptor or tl.default_supercell()
    guarantee, violations = _tiling_guarantee(t, float(t.color_count))
    inst = _Instance(points, grid)
    labels = np.asarray(t.labels)
    params = {"grid_offset": [grid.dx, grid.dy]}
    sol = _colored(inst, t, "three", params, lambda tg, k: _supercell_tile(inst, tg, labels[k]), threads, guarantee)
    if violations:
        sol.details["tiling_violations"] = violations
    return sol


# -- shifting ------------------------------------------------------------------------------------


@dataclass(frozen=True)
class ShiftConfig:
    """Strips of ``strip_width`` cell columns (or rows) grouped ``ell`` at a time."""

    axis: str
    ell: int
    strip_width: int = tl.STRIP_COLUMNS
    strip_distance: float = tl.DISK_DIAMETER

    def __post_init__(self):
        if self.axis not in ("horizontal", "vertical"):
            raise ValueError("axis must be 'horizontal' or 'vertical'")
        if self.ell < 1:
            raise ValueError("ell must be at least 1")

    def strips(self, cells: np.ndarray) -> np.ndarray:
        col = cells[:, 0] if self.axis == "horizontal" else cells[:, 1]
        return np.floor_divide(col, self.strip_width)


WindowSolver = Callable[[np.ndarray, int], Sequence[int]]


def shifted_solve(points, targets, strip_ids, ell: int, window_solver: WindowSolver, threads: int = 1) -> Solution:
    """Best union over the ``ell`` ways of grouping consecutive strips into windows.

    ``strip_ids[i]`` is the strip of ``targets[i]``. For shift ``t`` window
    ``w`` holds strips ``t + w*ell ... t + w*ell + ell - 1`` and is solved by
    ``window_solver(window_targets, first_strip)``. Ties go to the smallest
    shift. ``details`` keeps every shift's size and union.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    targets = np.asarray(targets, dtype=np.int64)
    strip_ids = np.asarray(strip_ids, dtype=np.int64)
    if ell < 1:
        raise ValueError("ell must be at least 1")
    unions = []
    for t in range(ell):
        win = np.floor_divide(strip_ids - t, ell)
        jobs = [(int(w), targets[win == w]) for w in np.unique(win)]
        parts = _pmap(lambda job: window_solver(job[1], t + job[0] * ell), jobs, threads)
        unions.append(tuple(sorted(set().union(*parts))) if parts else ())
    sizes = [len(u) for u in unions]
    best = int(np.argmin(sizes)) if sizes else 0
    chosen = unions[best] if unions else ()
    return Solution(chosen, "shifted", {"ell": ell}, certified=is_dominating(pts, chosen, targets),
                    details={"shift_sizes": sizes, "shift_unions": unions, "best_shift": best})


def five_half(points, grid: HexGrid = HexGrid(), threads: int = 1, cap: int = CROSSING_CAP,
              crossing_mode: str = "joint") -> Solution:
    """Bands of three rows, each solved by shifting four-strip duper-cell windows."""
    inst = _Instance(points, grid)
    t = tl.default_dupercell()
    rows = tl.shifting_report(tl.BAND_ROWS)
    ok = tl.certified(t).passed and rows.passed
    guarantee = 2.5 if ok else None
    params = {"grid_offset": [grid.dx, grid.dy], "cap": cap, "crossing_mode": crossing_mode}
    if len(inst) == 0:
        return _empty("five-half", params, guarantee)
    vertical = ShiftConfig("vertical", 1, tl.BAND_ROWS)
    horizontal = ShiftConfig("horizontal", tl.WINDOW_STRIPS)

    def band(tg, b):
        def window(wt, s0):
            return _dupercell_window(inst, wt, (s0 * horizontal.strip_width, b * vertical.strip_width), cap, crossing_mode)[0]
        sol = shifted_solve(inst.points, tg, horizontal.strips(inst.cells[tg]), horizontal.ell, window, threads)
        shifts.append((b, sol.details["shift_sizes"]))
        return sol.chosen

    shifts: list = []
    everything = np.arange(len(inst))
    sol = shifted_solve(inst.points, everything, vertical.strips(inst.cells), vertical.ell, band, threads)
    details = {"bands": {int(b): s for b, s in sorted(shifts)}}
    if not ok:
        details["tiling_violations"] = tl.certified(t).violations + rows.violations
    return Solution(sol.chosen, "five-half", params, certified=sol.certified, guarantee=guarantee, details=details)


def ptas(points, k: int, grid: HexGrid = HexGrid(), limit: int | None = DEFAULT_WINDOW_LIMIT, threads: int = 1) -> Solution:
    """Nested shifting over ``k``-strip bands and ``k x k``-strip windows solved exactly."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    inst = _Instance(points, grid)
    ok = tl.shifting_report(tl.BAND_ROWS).passed
    guarantee = (1 + 1 / k) ** 2 if ok else None
    params = {"k": k, "grid_offset": [grid.dx, grid.dy], "window_limit": limit}
    if len(inst) == 0:
        return _empty("ptas", params, guarantee)
    vertical = ShiftConfig("vertical", k, tl.BAND_ROWS)
    horizontal = ShiftConfig("horizontal", k)

    def band(tg, b0):
        def window(wt, s0):
            if limit is not None and len(wt) > limit:
                q, r = s0 * horizontal.strip_width, b0 * vertical.strip_width
                name = f"q in [{q}, {q + k * horizontal.strip_width}), r in [{r}, {r + k * vertical.strip_width})"
                raise WindowTooDense(name, len(wt), limit)
            sol = min_cover_bounded(CoverInstance(inst.points, wt, inst.index.chi(wt)), inst.nonempty_cells(wt))
            return sol.chosen
        return shifted_solve(inst.points, tg, horizontal.strips(inst.cells[tg]), k, window, threads).chosen

    everything = np.arange(len(inst))
    sol = shifted_solve(inst.points, everything, vertical.strips(inst.cells), k, band, threads)
    return Solution(sol.chosen, "ptas", params, certified=sol.certified, guarantee=guarantee,
                    details={"shift_sizes": sol.details["shift_sizes"]})
