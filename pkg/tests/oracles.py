"""Reference answers computed without any package code.

Plain loops over ``math.hypot`` and ``itertools.combinations``; slow and
obviously correct, for instances with a few dozen candidates at most.
"""

import itertools
import math

ONE_PLUS = 1.0 + 1e-12


def dominated_by(points, centers, targets):
    return all(any(math.hypot(points[c][0] - points[t][0], points[c][1] - points[t][1]) <= 1.0 for c in centers)
               for t in targets)


def near(points, targets):
    """Indices within distance 1 of some target."""
    return [i for i, p in enumerate(points)
            if any(math.hypot(p[0] - points[t][0], p[1] - points[t][1]) <= 1.0 for t in targets)]


def min_cover(points, targets, candidates=None):
    """(size, first cover in size-then-lexicographic order) by enumeration."""
    targets = list(targets)
    cand = sorted(near(points, targets) if candidates is None else candidates)
    if not targets:
        return 0, ()
    for j in range(1, len(cand) + 1):
        for combo in itertools.combinations(cand, j):
            if dominated_by(points, combo, targets):
                return j, combo
    return None, None


def mds(points):
    return min_cover(points, range(len(points)), range(len(points)))


def splitmix64(seed, count):
    mask = (1 << 64) - 1
    state = seed & mask
    out = []
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & mask
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        out.append(z ^ (z >> 31))
    return out


def hexagon_boundary(center, samples=600):
    """Points along the boundary of a flat-top side-1/2 hexagon."""
    cx, cy = center
    verts = [(cx + 0.5 * math.cos(math.radians(60 * k)), cy + 0.5 * math.sin(math.radians(60 * k))) for k in range(6)]
    pts = []
    for k in range(6):
        (x0, y0), (x1, y1) = verts[k], verts[(k + 1) % 6]
        for s in range(samples):
            f = s / samples
            pts.append((x0 + f * (x1 - x0), y0 + f * (y1 - y0)))
    return pts


def axial_center(q, r):
    return 0.75 * q, math.sqrt(3) / 2 * (r + q / 2)
