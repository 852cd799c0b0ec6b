"""Arboral satisfaction predicates: the correctness referee for every algorithm.

A pair of points is arborally satisfied with respect to a set P when the two
points share a coordinate, or the closed rectangle they span contains at least
one other point of P.  A set is satisfied when every pair is.

Two checkers are provided: the definitional all-pairs scan (the oracle of
record) and a staircase sweep that is near-linear on the sets produced by the
algorithms here.  They are cross-validated against each other in the test
suite; the sweep exists only for scale.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Iterable, Sequence

import numpy as np

from .model import Point, PointSet, point_key

__all__ = [
    "is_satisfied_pair",
    "is_satisfied_set",
    "unsatisfied_pairs",
    "geometric_view_of_execution",
]

# Above this size the "auto" method switches from the definitional scan to the
# staircase sweep.
_AUTO_SWEEP_THRESHOLD = 64


def _as_points(points: PointSet | Iterable[tuple[int, int]]) -> list[Point]:
    if isinstance(points, PointSet):
        return points.sorted_points()
    return sorted({Point(x, y) for x, y in points}, key=point_key)


def is_satisfied_pair(a: Point, b: Point, points: PointSet | Iterable[tuple[int, int]]) -> bool:
    """Is the pair (a, b) arborally satisfied with respect to the point set?

    Degenerate queries with a == b are rejected: a point is trivially
    satisfied with itself and callers must not ask.
    """
    a = Point(*a)
    b = Point(*b)
    if a == b:
        raise ValueError(f"degenerate pair query: {a} twice")
    if a.x == b.x or a.y == b.y:
        return True
    lox, hix = min(a.x, b.x), max(a.x, b.x)
    loy, hiy = min(a.y, b.y), max(a.y, b.y)
    for p in _as_points(points):
        if p != a and p != b and lox <= p.x <= hix and loy <= p.y <= hiy:
            return True
    return False


def is_satisfied_set(
    points: PointSet | Iterable[tuple[int, int]], *, method: str = "auto"
) -> bool:
    """Is every pair of the set arborally satisfied?

    ``method`` selects the checker: "reference" is the definitional all-pairs
    scan, "sweep" the staircase checker, "auto" picks by size.  Sets with at
    most one point are vacuously satisfied.
    """
    pts = _as_points(points)
    if len(pts) <= 1:
        return True
    if method == "auto":
        method = "sweep" if len(pts) > _AUTO_SWEEP_THRESHOLD else "reference"
    if method == "reference":
        return _satisfied_reference(pts)
    if method == "sweep":
        return _satisfied_sweep(pts)
    raise ValueError(f"unknown method {method!r}")


def unsatisfied_pairs(
    points: PointSet | Iterable[tuple[int, int]]
) -> list[tuple[Point, Point]]:
    """All unordered unsatisfied pairs, in (row, column) lexicographic order.

    Empty exactly when the set is satisfied.
    """
    pts = _as_points(points)
    bad: list[tuple[Point, Point]] = []
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            a, b = pts[i], pts[j]
            if a.x == b.x or a.y == b.y:
                continue
            lox, hix = min(a.x, b.x), max(a.x, b.x)
            loy, hiy = a.y, b.y  # pts sorted by row
            if not any(
                p != a and p != b and lox <= p.x <= hix and loy <= p.y <= hiy
                for p in pts
            ):
                bad.append((a, b))
    return bad


def _satisfied_reference(pts: Sequence[Point]) -> bool:
    """Definitional checker: every off-axis pair needs a point in its rectangle.

    The containment scan is vectorised but still visits every point for every
    pair, exactly as the definition reads.
    """
    xs = np.fromiter((p.x for p in pts), dtype=np.int64)
    ys = np.fromiter((p.y for p in pts), dtype=np.int64)
    k = len(pts)
    for i in range(k):
        for j in range(i + 1, k):
            if xs[i] == xs[j] or ys[i] == ys[j]:
                continue
            lox, hix = (xs[i], xs[j]) if xs[i] < xs[j] else (xs[j], xs[i])
            inside = (
                (xs >= lox) & (xs <= hix) & (ys >= ys[i]) & (ys <= ys[j])
            ).sum()
            # The corners a and b are themselves inside; a witness makes 3.
            if inside < 3:
                return False
    return True


def _satisfied_sweep(pts: Sequence[Point]) -> bool:
    """Staircase checker.

    For each point, scan the rows above.  On each side keep the smallest
    column offset seen so far (the "barrier"); a strictly closer point in a
    later row spans an empty rectangle, while a point on the same column
    witnesses everything further up.  A pair is unsatisfied iff some scan
    finds a strictly closer, off-column point.
    """
    rows: dict[int, list[int]] = {}
    for p in pts:
        rows.setdefault(p.y, []).append(p.x)
    ys = sorted(rows)
    for y in ys:
        rows[y].sort()

    inf = max(p.x for p in pts) + 1
    for ri, y in enumerate(ys):
        cols = rows[y]
        for ci, x in enumerate(cols):
            barrier_r = cols[ci + 1] if ci + 1 < len(cols) else inf
            barrier_l = cols[ci - 1] if ci > 0 else 0
            for y2 in ys[ri + 1 :]:
                if barrier_r == x and barrier_l == x:
                    break
                cols2 = rows[y2]
                if barrier_r > x:
                    j = bisect_left(cols2, x)
                    if j < len(cols2) and cols2[j] < barrier_r:
                        if cols2[j] == x:
                            barrier_r = x
                        else:
                            return False
                if barrier_l < x:
                    j = bisect_right(cols2, x) - 1
                    if j >= 0 and cols2[j] > barrier_l:
                        if cols2[j] == x:
                            barrier_l = x
                        else:
                            return False
    return True


def geometric_view_of_execution(execution) -> PointSet:
    """One point per (accessed node, search index) of a validated execution."""
    points = {
        Point(x, i)
        for i, step in enumerate(execution.steps, start=1)
        for x in step.tau
    }
    return PointSet(execution.t0.n, len(execution.steps), frozenset(points))
