"""Brute-force oracles, deliberately independent of the library internals.

Everything here enumerates from first principles (all subsets, all
subfamilies, grid scans) so the fast implementations have something honest
to be checked against.
"""

from fractions import Fraction
from itertools import combinations


def submasks(mask: int):
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def brute_delta_faces(words) -> set[int]:
    """Downward closure of a set of words."""
    out = set()
    for w in words:
        out.update(submasks(w))
    return out


def brute_violators(words) -> set[int]:
    return brute_delta_faces(words) - set(words)


def brute_link(words, sigma: int, n: int) -> set[int]:
    """Direct enumeration of {tau : tau | sigma in C, tau & sigma == 0}."""
    out = set()
    for tau in range(1 << n):
        if tau & sigma == 0 and (tau | sigma) in words:
            out.add(tau)
    return out


def brute_completion(words) -> set[int]:
    """Intersections of every non-empty subfamily."""
    ws = sorted(words)
    out = set()
    for r in range(1, len(ws) + 1):
        for combo in combinations(ws, r):
            inter = combo[0]
            for w in combo[1:]:
                inter &= w
            out.add(inter)
    return out


def brute_covering_sets(words, n: int) -> set[int]:
    out = set()
    for sigma in range(1, 1 << n):
        if all(w & sigma for w in words):
            out.add(sigma)
    return out


def grid_sign_vectors(planes, lo=-2, hi=2, steps=16) -> set[tuple]:
    """Sign vectors realized by a rational grid; confirms cell enumerations
    on fixtures whose cells are all fat enough to meet the grid."""
    out = set()
    for i in range(steps + 1):
        for j in range(steps + 1):
            x = Fraction(lo) + Fraction(i * (hi - lo), steps)
            y = Fraction(lo) + Fraction(j * (hi - lo), steps)
            sv = []
            for (a, b), c in planes:
                v = a * x + b * y - c
                sv.append((v > 0) - (v < 0))
            out.add(tuple(sv))
    return out


def interval_cover_code(intervals, closed=False) -> set[int]:
    """Code of a one-dimensional interval cover over the whole line,
    computed by scanning breakpoints and midpoints."""
    points = set()
    for lo, hi in intervals:
        points.update([Fraction(lo), Fraction(hi)])
    pts = sorted(points)
    samples = [pts[0] - 1, pts[-1] + 1] + pts
    for a, b in zip(pts, pts[1:]):
        samples.append((a + b) / 2)
    out = set()
    for x in samples:
        w = 0
        for i, (lo, hi) in enumerate(intervals):
            inside = lo <= x <= hi if closed else lo < x < hi
            if inside:
                w |= 1 << i
        out.add(w)
    return out
