"""Shared vocabulary: elements, times, points, access sequences, weights, costs.

Elements are the integers 1..n.  Search times are 1..m, with 0 reserved as the
"never accessed" sentinel.  Weights are exact rationals so that every rank and
potential computation downstream is bit-exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple


class Point(NamedTuple):
    """Grid point: column ``x`` is an element, row ``y`` is a search time."""

    x: int
    y: int


def point_key(p: Point) -> tuple[int, int]:
    """Canonical point order: by row (time), then by column."""
    return (p.y, p.x)


@dataclass(frozen=True)
class AccessSequence:
    """A search workload over the universe 1..n."""

    n: int
    searches: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"universe size must be >= 1, got {self.n}")
        object.__setattr__(self, "searches", tuple(self.searches))
        for s in self.searches:
            if not 1 <= s <= self.n:
                raise ValueError(f"search key {s} outside universe 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.searches)

    def __iter__(self) -> Iterator[int]:
        return iter(self.searches)

    def __len__(self) -> int:
        return len(self.searches)

    def prefix(self, length: int) -> "AccessSequence":
        return AccessSequence(self.n, self.searches[:length])


@dataclass(frozen=True)
class PointSet:
    """Deduplicated set of grid points within the n x m bounding box."""

    n: int
    m: int
    points: frozenset[Point]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "points", frozenset(Point(x, y) for x, y in self.points)
        )
        for p in self.points:
            if not (1 <= p.x <= self.n and 1 <= p.y <= self.m):
                raise ValueError(f"point {p} outside grid {self.n}x{self.m}")

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p: object) -> bool:
        return p in self.points

    def __iter__(self) -> Iterator[Point]:
        return iter(self.sorted_points())

    def sorted_points(self) -> list[Point]:
        return sorted(self.points, key=point_key)

    def with_points(self, extra: Iterable[tuple[int, int]]) -> "PointSet":
        return PointSet(self.n, self.m, self.points | {Point(x, y) for x, y in extra})


@dataclass(frozen=True)
class WeightAssignment:
    """Positive rational weight per element, with the total cached exactly.

    ``prefix[i]`` is the exact sum of the first i weights, so any interval of
    weights is one subtraction away.
    """

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        ws = tuple(Fraction(w) for w in self.weights)
        if not ws:
            raise ValueError("weight assignment must cover at least one element")
        for i, w in enumerate(ws, start=1):
            if w <= 0:
                raise ValueError(f"weight of element {i} must be positive, got {w}")
        prefix = [Fraction(0)]
        for w in ws:
            prefix.append(prefix[-1] + w)
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "_prefix", tuple(prefix))

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def total(self) -> Fraction:
        return self._prefix[-1]  # type: ignore[attr-defined]

    def w(self, x: int) -> Fraction:
        return self.weights[x - 1]

    def interval_sum(self, lo: int, hi: int) -> Fraction:
        """Sum of w(x) for lo <= x <= hi (0 when the interval is empty)."""
        if hi < lo:
            return Fraction(0)
        pref = self._prefix  # type: ignore[attr-defined]
        return pref[hi] - pref[lo - 1]

    def scaled(self, power_of_two: int) -> "WeightAssignment":
        factor = Fraction(2) ** power_of_two
        return WeightAssignment(tuple(w * factor for w in self.weights))

    @classmethod
    def uniform(cls, n: int) -> "WeightAssignment":
        return cls(tuple(Fraction(1) for _ in range(n)))

    @classmethod
    def from_values(cls, values: Iterable[Fraction | int]) -> "WeightAssignment":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def from_map(cls, n: int, mapping: Mapping[int, Fraction | int]) -> "WeightAssignment":
        missing = [x for x in range(1, n + 1) if x not in mapping]
        if missing:
            raise ValueError(f"weights missing for elements {missing}")
        return cls(tuple(Fraction(mapping[x]) for x in range(1, n + 1)))

    @classmethod
    def frequencies(cls, sequence: AccessSequence) -> "WeightAssignment":
        """w(x) = number of times x is searched; requires every element searched."""
        counts = [0] * (sequence.n + 1)
        for s in sequence:
            counts[s] += 1
        if any(c == 0 for c in counts[1:]):
            raise ValueError("frequency weights need every element searched at least once")
        return cls(tuple(Fraction(c) for c in counts[1:]))

    @classmethod
    def static_finger(cls, n: int, finger: int) -> "WeightAssignment":
        """w(x) = 1 / (|x - finger| + 1)^2."""
        if not 1 <= finger <= n:
            raise ValueError(f"finger {finger} outside universe 1..{n}")
        return cls(tuple(Fraction(1, (abs(x - finger) + 1) ** 2) for x in range(1, n + 1)))


@dataclass(frozen=True)
class CostLedger:
    """Per-search access counts: (time, searched element, elements accessed)."""

    per_search: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "per_search", tuple(self.per_search))
        for time, searched, count in self.per_search:
            if count < 1:
                raise ValueError(
                    f"search {time} of {searched} accessed {count} elements; "
                    "the searched element itself is always accessed"
                )

    @property
    def total(self) -> int:
        return sum(count for _, _, count in self.per_search)

    @classmethod
    def from_counts(cls, sequence: AccessSequence, counts: Iterable[int]) -> "CostLedger":
        rows = tuple(
            (i, s, c) for i, (s, c) in enumerate(zip(sequence.searches, counts), start=1)
        )
        if len(rows) != sequence.m:
            raise ValueError("one access count per search required")
        return cls(rows)


def total_cost(ledger: CostLedger) -> int:
    """Total accessed-element count across the run; 0 for an empty ledger."""
    return ledger.total


def geometric_view_of_sequence(sequence: AccessSequence) -> PointSet:
    """The point set {(s_1, 1), ..., (s_m, m)} of a search workload."""
    return PointSet(
        sequence.n,
        sequence.m,
        frozenset(Point(s, i) for i, s in enumerate(sequence.searches, start=1)),
    )
