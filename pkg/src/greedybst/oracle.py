"""Brute-force ground truth at desk scale.

Minimum arborally satisfied supersets (the offline optimum) and minimal
per-row extensions, by exhaustive subset enumeration over a small grid.  The
grid is encoded as a bitmask with all pair rectangles precomputed, so the
only cleverness is in the precomputation; the search itself stays a dumb
size-ordered enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from . import greedyass as _greedyass
from .model import AccessSequence, Point, PointSet

__all__ = [
    "BudgetExceededError",
    "min_row_extension",
    "min_satisfied_superset",
    "ConjectureProbe",
    "conjecture_probe",
    "MAX_GRID_CELLS",
]

# Exhaustive enumeration is kept honest by refusing grids it cannot sweep.
MAX_GRID_CELLS = 25


class BudgetExceededError(ValueError):
    """No satisfied superset exists within the allowed number of additions."""


class _Grid:
    """Bitmask view of an n x m grid with per-pair satisfaction data."""

    def __init__(self, n: int, m: int) -> None:
        if n * m > MAX_GRID_CELLS:
            raise ValueError(
                f"grid {n}x{m} exceeds the exhaustive limit of {MAX_GRID_CELLS} cells"
            )
        self.n = n
        self.m = m
        cells = n * m
        self.cells = cells
        aligned = [[False] * cells for _ in range(cells)]
        witness = [[0] * cells for _ in range(cells)]
        for p in range(cells):
            px, py = p % n + 1, p // n + 1
            for q in range(p + 1, cells):
                qx, qy = q % n + 1, q // n + 1
                if px == qx or py == qy:
                    aligned[p][q] = True
                    continue
                lox, hix = min(px, qx), max(px, qx)
                mask = 0
                for y in range(py, qy + 1):
                    for x in range(lox, hix + 1):
                        mask |= 1 << ((y - 1) * n + (x - 1))
                mask &= ~(1 << p)
                mask &= ~(1 << q)
                witness[p][q] = mask
        self.aligned = aligned
        self.witness = witness

    def index(self, x: int, y: int) -> int:
        return (y - 1) * self.n + (x - 1)

    def to_mask(self, points) -> int:
        mask = 0
        for p in points:
            mask |= 1 << self.index(p[0], p[1])
        return mask

    def to_points(self, mask: int) -> set[Point]:
        out = set()
        for idx in range(self.cells):
            if mask >> idx & 1:
                out.add(Point(idx % self.n + 1, idx // self.n + 1))
        return out

    def satisfied(self, mask: int) -> bool:
        bits = [idx for idx in range(self.cells) if mask >> idx & 1]
        for i, p in enumerate(bits):
            row_a = self.aligned[p]
            row_w = self.witness[p]
            for q in bits[i + 1 :]:
                if not row_a[q] and not (row_w[q] & mask):
                    return False
        return True


@lru_cache(maxsize=64)
def _grid(n: int, m: int) -> _Grid:
    return _Grid(n, m)


def min_row_extension(history: PointSet, s: int, i: int) -> set[int]:
    """Minimum set of extra columns on row i making history + (s, i) satisfied.

    Exhaustive over column subsets in increasing size; the minimum is checked
    to be unique (it always is for satisfied histories, and a second minimum
    would mean the theory is broken, so it raises loudly).
    """
    n = history.n
    if not 1 <= s <= n:
        raise ValueError(f"element {s} outside universe 1..{n}")
    if any(p.y >= i for p in history.points):
        raise ValueError("history must be confined to rows below i")
    grid = _grid(n, i)
    base = grid.to_mask(history.points) | 1 << grid.index(s, i)
    others = [x for x in range(1, n + 1) if x != s]
    for k in range(len(others) + 1):
        found: list[tuple[int, ...]] = []
        for combo in combinations(others, k):
            mask = base
            for x in combo:
                mask |= 1 << grid.index(x, i)
            if grid.satisfied(mask):
                found.append(combo)
        if found:
            if len(found) > 1:
                raise AssertionError(
                    f"minimal row extension not unique at row {i}: {found}"
                )
            return set(found[0])
    raise AssertionError("unreachable: the full row always satisfies")


def min_satisfied_superset(
    points: PointSet, add_budget: int
) -> tuple[PointSet, int]:
    """A smallest satisfied superset using grid points, with its total size.

    Candidates are enumerated in increasing count and, within a count, in
    lexicographic (column, row) order, so ties resolve to the least such set.
    Raises BudgetExceededError when ``add_budget`` additions do not suffice.
    """
    grid = _grid(points.n, points.m)
    base = grid.to_mask(points.points)
    if grid.satisfied(base):
        return points, len(points)
    empty = [
        (x, y)
        for x in range(1, points.n + 1)
        for y in range(1, points.m + 1)
        if not base >> grid.index(x, y) & 1
    ]
    for k in range(1, min(add_budget, len(empty)) + 1):
        for combo in combinations(empty, k):
            mask = base
            for x, y in combo:
                mask |= 1 << grid.index(x, y)
            if grid.satisfied(mask):
                return (
                    PointSet(points.n, points.m, frozenset(grid.to_points(mask))),
                    len(points) + k,
                )
    raise BudgetExceededError(
        f"no satisfied superset within {add_budget} added points"
    )


@dataclass(frozen=True)
class ConjectureProbe:
    """Greedy total versus the offline optimum on one instance."""

    sequence: AccessSequence
    greedy_total: int
    opt_total: int

    @property
    def slack(self) -> int:
        return self.greedy_total - self.opt_total

    @property
    def holds(self) -> bool:
        """Greedy within an additive m of the optimum."""
        return self.slack <= self.sequence.m


def conjecture_probe(sequence: AccessSequence) -> ConjectureProbe:
    """Compare the greedy cost with the exhaustive optimum.

    Refuses instances beyond the exhaustive regime (n, m <= 4).
    """
    if sequence.n > 4 or sequence.m > 4:
        raise ValueError(
            f"exhaustive regime is n, m <= 4; got n={sequence.n}, m={sequence.m}"
        )
    _, ledger, _ = _greedyass.run(sequence)
    greedy_total = ledger.total
    view = PointSet(
        sequence.n,
        sequence.m,
        frozenset(Point(s, i) for i, s in enumerate(sequence.searches, start=1)),
    )
    budget = greedy_total - sequence.m  # greedy itself is a satisfied superset
    _, opt_total = min_satisfied_superset(view, budget)
    return ConjectureProbe(sequence=sequence, greedy_total=greedy_total, opt_total=opt_total)
