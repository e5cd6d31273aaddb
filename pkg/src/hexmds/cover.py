"""Covering kernels shared by every solver.

Points are rows of an ``(n, 2)`` float array and everything else is an index
into it. Coverage is always the closed unit disk tested on squared distances.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from hexmds import kernels
from hexmds.geom import HexGrid, cells_of, cover_matrix

DEFAULT_EXACT_LIMIT = 24


class InstanceTooLarge(ValueError):
    """Exact search refused: the instance exceeds the configured point limit."""


@dataclass(frozen=True)
class Solution:
    chosen: tuple[int, ...]
    algorithm: str
    params: dict = field(default_factory=dict)
    certified: bool = False
    guarantee: float | None = None
    details: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.chosen)


@dataclass(frozen=True)
class CoverInstance:
    """Cover ``targets`` using centers drawn from ``candidates`` (both index lists)."""

    points: np.ndarray
    targets: tuple[int, ...]
    candidates: tuple[int, ...]

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "targets", tuple(sorted(int(i) for i in self.targets)))
        object.__setattr__(self, "candidates", tuple(sorted(int(i) for i in self.candidates)))
        n = len(pts)
        for i in self.targets + self.candidates:
            if not 0 <= i < n:
                raise IndexError(f"index {i} outside the backing point list of size {n}")

    def coverage(self) -> np.ndarray:
        p = self.points
        return cover_matrix(p[list(self.candidates)], p[list(self.targets)])


# -- point-set operators ------------------------------------------------------


def chi(u1, u2) -> np.ndarray:
    """Points of ``u2`` whose unit disk covers at least one point of ``u1``."""
    u1 = np.asarray(u1, dtype=float).reshape(-1, 2)
    u2 = np.asarray(u2, dtype=float).reshape(-1, 2)
    if len(u1) == 0 or len(u2) == 0:
        return u2[:0]
    return u2[cover_matrix(u2, u1).any(axis=1)]


def uncovered(centers, targets) -> np.ndarray:
    """Targets farther than 1 from every center."""
    centers = np.asarray(centers, dtype=float).reshape(-1, 2)
    targets = np.asarray(targets, dtype=float).reshape(-1, 2)
    if len(centers) == 0 or len(targets) == 0:
        return targets
    return targets[~cover_matrix(centers, targets).any(axis=0)]


def one_disk_completion(candidates, targets) -> int | None:
    """Index of the first candidate whose farthest target is within 1, else None.

    Linear scan; a farthest-point Voronoi diagram with point location answers
    the same query in logarithmic time per candidate.
    """
    candidates = np.asarray(candidates, dtype=float).reshape(-1, 2)
    targets = np.asarray(targets, dtype=float).reshape(-1, 2)
    if len(targets) == 0:
        raise ValueError("one_disk_completion needs at least one target")
    ok = cover_matrix(candidates, targets).all(axis=1)
    hits = np.flatnonzero(ok)
    return int(hits[0]) if len(hits) else None


class PointIndex:
    """KD-tree over an instance for repeated chi queries."""

    def __init__(self, points):
        self.points = np.asarray(points, dtype=float).reshape(-1, 2)
        self.tree = cKDTree(self.points) if len(self.points) else None

    def chi(self, targets: Sequence[int]) -> np.ndarray:
        """Sorted indices of all points within distance 1 of some target."""
        targets = np.asarray(targets, dtype=np.int64)
        if len(targets) == 0 or self.tree is None:
            return np.zeros(0, dtype=np.int64)
        near = self.tree.query_ball_point(self.points[targets], r=1.0 + 1e-9)
        pool = np.unique(np.concatenate([np.asarray(x, dtype=np.int64) for x in near]))
        keep = cover_matrix(self.points[pool], self.points[targets]).any(axis=1)
        return pool[keep]


def verify(points, chosen: Sequence[int], targets: Sequence[int] | None = None) -> int | None:
    """First target index not covered by ``chosen``; None when all are covered."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    tgt = np.arange(len(pts)) if targets is None else np.asarray(targets, dtype=np.int64)
    if len(tgt) == 0:
        return None
    ch = np.asarray(chosen, dtype=np.int64)
    if len(ch) == 0:
        return int(tgt[0])
    if ch.min() < 0 or ch.max() >= len(pts):
        raise IndexError("chosen index outside the point list")
    hit = PointIndex(pts[ch]).tree.query_ball_point(pts[tgt], r=1.0 + 1e-9)
    for t, near in zip(tgt, hit):
        if not near or not cover_matrix(pts[ch[near]], pts[t]).any():
            return int(t)
    return None


def is_dominating(points, chosen: Sequence[int], targets: Sequence[int] | None = None) -> bool:
    return verify(points, chosen, targets) is None


# -- bitset tables ------------------------------------------------------------


def pack_rows(b: np.ndarray) -> np.ndarray:
    """Pack a boolean ``(m, T)`` matrix into ``(m, ceil(T/64))`` uint64 words."""
    b = np.asarray(b, dtype=bool)
    m, t = b.shape
    w = max(1, -(-t // 64))
    padded = np.zeros((m, w * 64), dtype=bool)
    padded[:, :t] = b
    return np.packbits(padded, axis=1, bitorder="little").view("<u8").astype(np.uint64).reshape(m, w)


class CoverTables:
    """Packed coverage of ``T`` targets by ``C`` candidates plus search aids."""

    def __init__(self, cov: np.ndarray):
        cov = np.asarray(cov, dtype=bool)
        self.cov = cov
        C, T = cov.shape
        self.n_candidates, self.n_targets = C, T
        self.masks = pack_rows(cov)
        self.full = pack_rows(np.ones((1, T), dtype=bool))[0]
        ci = cov.astype(np.int32)
        self.conflict = pack_rows((ci.T @ ci) > 0)
        self.tcount = cov.sum(axis=0).astype(np.int64)
        strength = cov.sum(axis=1)
        ptr = [0]
        idx: list[int] = []
        for t in range(T):
            cs = np.flatnonzero(cov[:, t])
            cs = cs[np.lexsort((cs, -strength[cs]))]
            idx.extend(int(c) for c in cs)
            ptr.append(len(idx))
        self.ptr = np.asarray(ptr, dtype=np.int64)
        self.idx = np.asarray(idx, dtype=np.int64)
        maxcov = np.where(cov.any(axis=0), C - 1 - np.argmax(cov[::-1], axis=0), -1)
        levels = np.arange(-1, C)[:, None]
        self.lowmask = pack_rows(maxcov[None, :] <= levels)
        self._suffix = None

    def mask_of(self, target_positions) -> np.ndarray:
        sel = np.zeros((1, self.n_targets), dtype=bool)
        sel[0, list(target_positions)] = True
        return pack_rows(sel)[0]

    def suffix_counts(self, lo: int) -> np.ndarray:
        """Per-target number of covering candidates with index ``>= lo``."""
        if self._suffix is None:
            c = np.zeros((self.n_candidates + 1, self.n_targets), dtype=np.int64)
            c[:-1] = np.cumsum(self.cov[::-1], axis=0)[::-1]
            self._suffix = c
        return self._suffix[lo]

    def min_size(self, ub: int, full: np.ndarray | None = None, lo: int = 0) -> int:
        """Optimal cover size using candidates ``>= lo``; -1 above ``ub``."""
        full = self.full if full is None else full
        tcount = self.tcount if lo == 0 else self.suffix_counts(lo)
        return int(kernels.bb_min_size(self.masks, full, int(ub), self.conflict, self.ptr, self.idx, tcount, int(lo)))

    def first_cover(self, size: int, full: np.ndarray | None = None) -> list[int] | None:
        """Lexicographically smallest sorted cover with ``size`` candidates.

        Fixes one position at a time: the smallest index after the previous
        one such that the rest can still be covered by the remaining count of
        larger indices. This is the set the ascending scan of (size-1)-prefixes
        with first-completion returns, found without enumerating prefixes.
        """
        full = self.full if full is None else full
        chosen: list[int] = []
        cov = np.zeros_like(full)
        lo = 0
        for i in range(size):
            rest = size - i - 1
            for c in range(lo, self.n_candidates - rest):
                resid = full & ~(cov | self.masks[c])
                if rest == 0:
                    ok = not resid.any()
                else:
                    ok = self.min_size(rest, resid, lo=c + 1) >= 0
                if ok:
                    chosen.append(c)
                    cov = cov | self.masks[c]
                    lo = c + 1
                    break
            else:
                return None
        if full.any() and (full & ~cov).any():
            return None
        return chosen

    def scan_first_cover(self, size: int, full: np.ndarray | None = None) -> list[int] | None:
        """Same answer as :meth:`first_cover` by the literal prefix scan."""
        full = self.full if full is None else full
        out = kernels.lex_first_cover(self.masks, full, int(size), self.conflict, self.lowmask)
        if size and out[0] < 0:
            return None
        return sorted(int(c) for c in out)


def min_cover_size(ci: CoverInstance, ub: int) -> int | None:
    """Optimal cover size if it is at most ``ub``, else None."""
    if not ci.targets:
        return 0 if ub >= 0 else None
    cov = ci.coverage()
    if not cov.any(axis=0).all():
        return None
    size = CoverTables(cov).min_size(ub)
    return None if size < 0 else size


def min_cover_bounded(ci: CoverInstance, ub: int, algorithm: str = "min_cover") -> Solution | None:
    """Minimum-cardinality cover of ``ci.targets`` from ``ci.candidates``, if it fits in ``ub``.

    The returned set is the first cover met when sizes ascend and, for each
    size ``j``, the ``(j-1)``-subsets of candidates are scanned in
    lexicographic index order and completed by the first remaining candidate
    that covers what is left. Exceeding ``ub`` returns None.
    """
    if ub < 0:
        return None
    if not ci.targets:
        return Solution((), algorithm, {"ub": ub}, certified=True)
    cov = ci.coverage()
    if not cov.any(axis=0).all():
        return None
    tables = CoverTables(cov)
    size = tables.min_size(ub)
    if size < 0:
        return None
    picked = tables.first_cover(size)
    chosen = tuple(sorted(ci.candidates[c] for c in picked))
    ok = is_dominating(ci.points, chosen, ci.targets)
    return Solution(chosen, algorithm, {"ub": ub}, certified=ok)


def nonempty_cells(points, grid: HexGrid = HexGrid()) -> int:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        return 0
    return len(np.unique(cells_of(pts, grid), axis=0))


def exact_mds(points, limit: int | None = DEFAULT_EXACT_LIMIT, grid: HexGrid = HexGrid()) -> Solution:
    """A true minimum dominating set by branch and bound.

    The search starts from the one-point-per-cell bound, which always
    dominates. Raises :class:`InstanceTooLarge` above ``limit`` points
    (``None`` disables the guard).
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    n = len(pts)
    if limit is not None and n > limit:
        raise InstanceTooLarge(f"exact search refused: {n} points > limit {limit}")
    everything = tuple(range(n))
    ub = nonempty_cells(pts, grid)
    sol = min_cover_bounded(CoverInstance(pts, everything, everything), ub, algorithm="exact")
    assert sol is not None, "one point per cell always dominates"
    return Solution(sol.chosen, "exact", {"limit": limit}, certified=sol.certified, guarantee=1.0)
