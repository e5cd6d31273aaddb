"""Bitset covering kernels.

Targets are packed into rows of ``uint64`` words: ``masks[c]`` is the set of
targets candidate ``c`` covers. Every search below is an explicit-stack DFS so
the same source compiles under numba and runs unchanged as plain Python.

Shared inputs, prepared by :func:`hexmds.cover.CoverTables`:

``conflict[t]``
    union of the masks of every candidate covering target ``t``; two targets
    are independent (no candidate covers both) iff neither is in the other's
    conflict row.
``ptr``/``idx``
    CSR lists of the candidates covering each target, most-covering first.
``tcount``
    number of candidates covering each target.
``lowmask[l + 1]``
    targets whose largest covering candidate index is ``<= l``.
"""

import numpy as np

from hexmds._jit import jit

ZERO = np.uint64(0)
ONE = np.uint64(1)


@jit
def _is_zero(a):
    for w in range(a.shape[0]):
        if a[w] != ZERO:
            return False
    return True


@jit
def _is_subset(a, b):
    for w in range(a.shape[0]):
        if (a[w] & ~b[w]) != ZERO:
            return False
    return True


@jit
def _first_bit(a):
    for w in range(a.shape[0]):
        x = a[w]
        if x != ZERO:
            b = 0
            while (x & ONE) == ZERO:
                x = x >> ONE
                b += 1
            return w * 64 + b
    return -1


@jit
def _greedy_lb(resid, conflict, scratch):
    """Size of a greedy family of pairwise independent residual targets."""
    for w in range(resid.shape[0]):
        scratch[w] = resid[w]
    n = 0
    while True:
        t = _first_bit(scratch)
        if t < 0:
            return n
        n += 1
        for w in range(scratch.shape[0]):
            scratch[w] = scratch[w] & ~conflict[t, w]


@jit
def _pick_target(resid, tcount):
    best_t = -1
    best_c = 1 << 62
    for w in range(resid.shape[0]):
        x = resid[w]
        b = 0
        while x != ZERO:
            if (x & ONE) != ZERO:
                t = w * 64 + b
                if tcount[t] < best_c:
                    best_c = tcount[t]
                    best_t = t
            x = x >> ONE
            b += 1
    return best_t


@jit
def bb_min_size(masks, full, ub, conflict, ptr, idx, tcount, lo=0):
    """Minimum number of candidates covering ``full``; -1 if it exceeds ``ub``.

    Only candidates with index ``>= lo`` are used; ``tcount`` must count those.
    Branches on the residual target with the fewest covering candidates and
    prunes with the greedy independent-target bound.
    """
    if ub < 0:
        return -1
    if _is_zero(full):
        return 0
    W = full.shape[0]
    cov = np.zeros((ub + 2, W), dtype=np.uint64)
    tsel = np.zeros(ub + 2, dtype=np.int64)
    pos = np.zeros(ub + 2, dtype=np.int64)
    lbs = np.zeros(ub + 2, dtype=np.int64)
    resid = np.empty(W, dtype=np.uint64)
    scratch = np.empty(W, dtype=np.uint64)
    best = ub + 1
    d = 0
    entering = True
    while d >= 0:
        if entering:
            for w in range(W):
                resid[w] = full[w] & ~cov[d, w]
            if _is_zero(resid):
                if d < best:
                    best = d
                d -= 1
                entering = False
                continue
            lb = _greedy_lb(resid, conflict, scratch)
            t = _pick_target(resid, tcount)
            if d + lb >= best or tcount[t] == 0:
                d -= 1
                entering = False
                continue
            lbs[d] = lb
            tsel[d] = t
            pos[d] = ptr[t]
        t = tsel[d]
        while pos[d] < ptr[t + 1] and idx[pos[d]] < lo:
            pos[d] += 1
        if pos[d] < ptr[t + 1] and d + lbs[d] < best:
            c = idx[pos[d]]
            pos[d] += 1
            for w in range(W):
                cov[d + 1, w] = cov[d, w] | masks[c, w]
            d += 1
            entering = True
        else:
            d -= 1
            entering = False
    if best <= ub:
        return best
    return -1


@jit
def lex_first_cover(masks, full, size, conflict, lowmask):
    """First cover of exactly ``size`` candidates in the canonical order, by scanning.

    Reference implementation of the search order; exponential in ``size`` on
    dense inputs, so production code uses :func:`hexmds.cover.CoverTables.first_cover`.

    Order: (size-1)-prefixes in lexicographic index order, each completed by
    the smallest-index remaining candidate that covers what the prefix leaves.
    Pruning only discards prefixes that cannot be completed, so the first hit
    equals the one an unpruned scan would return. Returns the prefix followed
    by the completion, or an array of -1 when no such cover exists.
    """
    C = masks.shape[0]
    W = full.shape[0]
    out = np.full(size, -1, dtype=np.int64)
    if size == 0:
        return out
    if C < size:
        return out
    m = size - 1
    pick = np.full(m + 1, -1, dtype=np.int64)
    nxt = np.zeros(m + 1, dtype=np.int64)
    cov = np.zeros((m + 1, W), dtype=np.uint64)
    resid = np.empty(W, dtype=np.uint64)
    low = np.empty(W, dtype=np.uint64)
    scratch = np.empty(W, dtype=np.uint64)
    d = 0
    entering = True
    while d >= 0:
        if entering:
            for w in range(W):
                resid[w] = full[w] & ~cov[d, w]
            last = pick[d - 1] if d > 0 else -1
            if d == m:
                for p in range(C):
                    used = False
                    for k in range(m):
                        if pick[k] == p:
                            used = True
                            break
                    if not used and _is_subset(resid, masks[p]):
                        for k in range(m):
                            out[k] = pick[k]
                        out[m] = p
                        return out
                d -= 1
                entering = False
                continue
            ok = True
            for w in range(W):
                low[w] = resid[w] & lowmask[last + 1, w]
            if not _is_zero(low):
                ok = False
                for p in range(C):
                    used = False
                    for k in range(d):
                        if pick[k] == p:
                            used = True
                            break
                    if not used and _is_subset(low, masks[p]):
                        ok = True
                        break
            if ok and _greedy_lb(resid, conflict, scratch) > m - d + 1:
                ok = False
            if not ok:
                d -= 1
                entering = False
                continue
            nxt[d] = last + 1
        c = nxt[d]
        if c <= C - (m - d):
            nxt[d] = c + 1
            pick[d] = c
            for w in range(W):
                cov[d + 1, w] = cov[d, w] | masks[c, w]
            d += 1
            entering = True
        else:
            pick[d] = -1
            d -= 1
            entering = False
    return out


@jit
def supercell_search(masks, g1, g2, g3, ub, conflict, ptr, idx, tcount):
    """Middle-region enumeration of the three-region exact solver.

    Enumerates middle sets ``X`` covering every ``g2`` target (branching on an
    uncovered middle target), then sizes the cheapest covers of what remains
    in ``g1`` and ``g3`` independently. Returns ``(best, x)`` where ``x`` holds
    the winning middle set padded with -1; ``best`` is -1 if nothing fits
    within ``ub``.
    """
    W = g2.shape[0]
    empty = np.full(ub + 2, -1, dtype=np.int64)
    if ub < 0:
        return -1, empty
    cov = np.zeros((ub + 2, W), dtype=np.uint64)
    tsel = np.zeros(ub + 2, dtype=np.int64)
    pos = np.zeros(ub + 2, dtype=np.int64)
    lbs = np.zeros(ub + 2, dtype=np.int64)
    xs = np.full(ub + 2, -1, dtype=np.int64)
    best_x = np.full(ub + 2, -1, dtype=np.int64)
    r2 = np.empty(W, dtype=np.uint64)
    u = np.empty(W, dtype=np.uint64)
    v = np.empty(W, dtype=np.uint64)
    scratch = np.empty(W, dtype=np.uint64)
    best = ub + 1
    d = 0
    entering = True
    while d >= 0:
        if entering:
            for w in range(W):
                r2[w] = g2[w] & ~cov[d, w]
            if _is_zero(r2):
                for w in range(W):
                    u[w] = g1[w] & ~cov[d, w]
                    v[w] = g3[w] & ~cov[d, w]
                y = bb_min_size(masks, u, best - 1 - d, conflict, ptr, idx, tcount, 0)
                if y >= 0:
                    z = bb_min_size(masks, v, best - 1 - d - y, conflict, ptr, idx, tcount, 0)
                    if z >= 0 and d + y + z < best:
                        best = d + y + z
                        for k in range(ub + 2):
                            best_x[k] = xs[k] if k < d else -1
                d -= 1
                entering = False
                continue
            lb = _greedy_lb(r2, conflict, scratch)
            t = _pick_target(r2, tcount)
            if d + lb >= best or tcount[t] == 0:
                d -= 1
                entering = False
                continue
            lbs[d] = lb
            tsel[d] = t
            pos[d] = ptr[t]
        t = tsel[d]
        if pos[d] < ptr[t + 1] and d + lbs[d] < best:
            c = idx[pos[d]]
            pos[d] += 1
            xs[d] = c
            for w in range(W):
                cov[d + 1, w] = cov[d, w] | masks[c, w]
            d += 1
            entering = True
        else:
            d -= 1
            entering = False
    if best <= ub:
        return best, best_x
    return -1, empty
