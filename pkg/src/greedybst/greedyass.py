"""The online geometric greedy algorithm.

For each arriving search point, emit the minimal set of same-row points that
restores arboral satisfaction.  The whole state is a per-element last-access
table: sweeping right (and symmetrically left) from the searched element, a
column is touched exactly when its last access time exceeds every last access
time seen so far on the sweep, producing a staircase per side.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import _kernels
from .model import AccessSequence, CostLedger, Point, PointSet

__all__ = ["LastAccessTable", "RowOutput", "step", "run", "staircase"]


@dataclass
class LastAccessTable:
    """rho(x) = last row at which column x holds a point; 0 = never.

    ``now`` is the last processed row.  Single writer; steps are strictly
    sequential within a run.
    """

    n: int
    rho: list[int] = field(default_factory=list)
    now: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("universe size must be >= 1")
        if not self.rho:
            self.rho = [0] * (self.n + 1)
        if len(self.rho) != self.n + 1:
            raise ValueError("rho must have one slot per element plus the 0 sentinel")

    @classmethod
    def fresh(cls, n: int) -> "LastAccessTable":
        return cls(n=n)

    def rho_of(self, x: int) -> int:
        self._check(x)
        return self.rho[x]

    def copy(self) -> "LastAccessTable":
        return LastAccessTable(self.n, list(self.rho), self.now)

    def _check(self, x: int) -> None:
        if not 1 <= x <= self.n:
            raise ValueError(f"element {x} outside universe 1..{self.n}")


@dataclass(frozen=True)
class RowOutput:
    """Columns added on one row, ascending; the searched element is separate."""

    time: int
    searched: int
    added: tuple[int, ...]

    @property
    def accessed(self) -> tuple[int, ...]:
        return tuple(sorted((self.searched, *self.added)))

    @property
    def cost(self) -> int:
        return len(self.added) + 1


def step(state: LastAccessTable, s: int) -> RowOutput:
    """Process one search, mutating the table, and return the row output."""
    state._check(s)
    rho = state.rho
    i = state.now + 1
    added: list[int] = []
    prev = rho[s]
    for j in range(s + 1, state.n + 1):
        if rho[j] > prev:
            prev = rho[j]
            added.append(j)
    prev = rho[s]
    for j in range(s - 1, 0, -1):
        if rho[j] > prev:
            prev = rho[j]
            added.append(j)
    # All writes happen after both sweeps so a step never sees its own marks.
    for j in added:
        rho[j] = i
    rho[s] = i
    state.now = i
    return RowOutput(time=i, searched=s, added=tuple(sorted(added)))


def staircase(
    state: LastAccessTable, s: int
) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """The (right, left) staircases a step from ``s`` would traverse.

    Each side lists (element, last access time) in sweep order, with times
    strictly increasing away from ``s``.  Does not mutate the table.
    """
    state._check(s)
    rho = state.rho
    right: list[tuple[int, int]] = []
    prev = rho[s]
    for j in range(s + 1, state.n + 1):
        if rho[j] > prev:
            prev = rho[j]
            right.append((j, rho[j]))
    left: list[tuple[int, int]] = []
    prev = rho[s]
    for j in range(s - 1, 0, -1):
        if rho[j] > prev:
            prev = rho[j]
            left.append((j, rho[j]))
    return right, left


def run(
    sequence: AccessSequence, *, engine: str | None = None
) -> tuple[PointSet, CostLedger, list[RowOutput]]:
    """Fold the sweep over a whole sequence from the all-zero table.

    Returns the cumulative output point set (input points plus added points),
    the cost ledger (m plus all additions), and the per-row outputs.
    """
    kernel = _kernels.get_engine(engine)
    added_rows, _rho = kernel.greedyass_run(sequence.n, sequence.searches)
    rows = [
        RowOutput(time=i, searched=s, added=tuple(added))
        for i, (s, added) in enumerate(zip(sequence.searches, added_rows), start=1)
    ]
    points = {Point(s, i) for i, s in enumerate(sequence.searches, start=1)}
    for row in rows:
        points.update(Point(x, row.time) for x in row.added)
    point_set = PointSet(sequence.n, sequence.m, frozenset(points))
    ledger = CostLedger.from_counts(sequence, (row.cost for row in rows))
    return point_set, ledger, rows
