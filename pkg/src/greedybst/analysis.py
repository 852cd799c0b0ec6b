"""Neighborhoods, sizes, ranks, potential, amortized costs, and the
mechanical checkers for the amortized analysis of the greedy sweep.

Everything here is exact: weights are rationals, sizes are rational sums over
neighborhoods, ranks are floors of base-2 logarithms computed by integer
bit-length comparison, and the potential is an integer.  Nothing is ever
rounded.

The central quantity is the inclusive neighborhood Gamma(x, i): the maximal
interval around x whose interior elements all have strictly smaller last
access time than x.  Those are exactly the keys whose search at time i+1
would access x.  With sigma(x, i) the neighborhood's total weight,
r(x, i) = floor(lg sigma(x, i)), and Phi(i) the sum of all ranks, the
amortized cost of a search (actual cost plus potential change) is bounded by

    5 + 6*floor(lg W) - 6*r(s_i, i-1)

which every audited search is checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import greedyass as _greedyass
from .model import AccessSequence, CostLedger, WeightAssignment

__all__ = [
    "floor_log2",
    "Snapshot",
    "make_snapshot",
    "inclusive_neighborhood",
    "left_neighborhood",
    "right_neighborhood",
    "size",
    "left_size",
    "rank",
    "left_rank",
    "potential",
    "SearchAudit",
    "AuditRun",
    "audit_run",
    "check_no_access_lemma",
    "check_rank_inequalities",
    "check_telescope",
    "check_stubborn_bound",
    "check_cost_sum_identity",
    "working_set_distance",
    "working_set_distances",
    "CorollaryReport",
    "corollary_bounds",
]


def floor_log2(value: Fraction | int) -> int:
    """Exact floor of lg(value) for a positive rational.

    Finds the unique k with 2^k <= value < 2^(k+1) by integer bit-length
    comparison; may be negative for values below 1.
    """
    frac = Fraction(value)
    p, q = frac.numerator, frac.denominator
    if p <= 0:
        raise ValueError(f"floor_log2 needs a positive value, got {frac}")
    k = p.bit_length() - q.bit_length()
    # value lies in (2^(k-1), 2^(k+1)); settle which half exactly.
    if k >= 0:
        at_least = (q << k) <= p
    else:
        at_least = q <= (p << (-k))
    return k if at_least else k - 1


def _neighborhood_bounds(rho: tuple[int, ...] | list[int]) -> tuple[list[int], list[int]]:
    """Per element: nearest position on each side with last access >= own.

    a[x] is the greatest position < x with rho >= rho[x] (0 if none) and b[x]
    the least position > x with rho >= rho[x] (n+1 if none); the inclusive
    neighborhood of x is the open interval (a[x], b[x]).  One monotone-stack
    pass per direction.
    """
    n = len(rho) - 1
    a = [0] * (n + 1)
    b = [0] * (n + 1)
    stack: list[int] = []
    for x in range(1, n + 1):
        while stack and rho[stack[-1]] < rho[x]:
            stack.pop()
        a[x] = stack[-1] if stack else 0
        stack.append(x)
    stack.clear()
    for x in range(n, 0, -1):
        while stack and rho[stack[-1]] < rho[x]:
            stack.pop()
        b[x] = stack[-1] if stack else n + 1
        stack.append(x)
    return a, b


@dataclass(frozen=True)
class Snapshot:
    """State of the sweep at one time: last-access table plus weights, with
    neighborhoods, sizes, ranks, and potential precomputed."""

    time: int
    rho: tuple[int, ...]
    weights: WeightAssignment
    a: tuple[int, ...]
    b: tuple[int, ...]
    sigma: tuple[Fraction, ...]
    ranks: tuple[int, ...]
    phi: int

    @property
    def n(self) -> int:
        return len(self.rho) - 1

    def _check(self, x: int) -> None:
        if not 1 <= x <= self.n:
            raise ValueError(f"element {x} outside universe 1..{self.n}")


def make_snapshot(
    time: int, rho: list[int] | tuple[int, ...], weights: WeightAssignment
) -> Snapshot:
    n = len(rho) - 1
    if weights.n != n:
        raise ValueError("weights cover a different universe than rho")
    a, b = _neighborhood_bounds(rho)
    sigma: list[Fraction] = [Fraction(0)]
    ranks: list[int] = [0]
    phi = 0
    for x in range(1, n + 1):
        s = weights.interval_sum(a[x] + 1, b[x] - 1)
        r = floor_log2(s)
        sigma.append(s)
        ranks.append(r)
        phi += r
    return Snapshot(
        time=time,
        rho=tuple(rho),
        weights=weights,
        a=tuple(a),
        b=tuple(b),
        sigma=tuple(sigma),
        ranks=tuple(ranks),
        phi=phi,
    )


def inclusive_neighborhood(snap: Snapshot, x: int) -> set[int]:
    snap._check(x)
    return set(range(snap.a[x] + 1, snap.b[x]))


def left_neighborhood(snap: Snapshot, x: int) -> set[int]:
    snap._check(x)
    return set(range(snap.a[x] + 1, x))


def right_neighborhood(snap: Snapshot, x: int) -> set[int]:
    snap._check(x)
    return set(range(x + 1, snap.b[x]))


def size(snap: Snapshot, x: int) -> Fraction:
    snap._check(x)
    return snap.sigma[x]


def left_size(snap: Snapshot, x: int) -> Fraction:
    snap._check(x)
    return snap.weights.interval_sum(snap.a[x] + 1, x - 1)


def rank(snap: Snapshot, x: int) -> int:
    snap._check(x)
    return snap.ranks[x]


def left_rank(snap: Snapshot, x: int) -> int | None:
    """Rank of the left neighborhood alone; None when it is empty."""
    s = left_size(snap, x)
    if s == 0:
        return None
    return floor_log2(s)


def potential(snap: Snapshot) -> int:
    return snap.phi


@dataclass(frozen=True)
class SearchAudit:
    """Everything the amortized analysis says about one search."""

    time: int
    searched: int
    accessed: tuple[int, ...]
    cost: int
    potential_before: int
    potential_after: int
    amortized: int
    bound: int
    lg_total_weight: int
    rank_searched_before: int
    stubborn_right: tuple[int, ...]
    stubborn_left: tuple[int, ...]
    e_rl: int | None
    e_rr: int | None
    e_ll: int | None
    e_lr: int | None


@dataclass(frozen=True)
class AuditRun:
    """A replayed run with one snapshot per time and one audit per search."""

    sequence: AccessSequence
    weights: WeightAssignment
    snapshots: tuple[Snapshot, ...]
    rows: tuple[_greedyass.RowOutput, ...]
    audits: tuple[SearchAudit, ...]

    def __iter__(self):
        return iter(self.audits)

    def __len__(self) -> int:
        return len(self.audits)

    def __getitem__(self, i: int) -> SearchAudit:
        return self.audits[i]

    @property
    def actual_total(self) -> int:
        return sum(a.cost for a in self.audits)

    @property
    def amortized_total(self) -> int:
        return sum(a.amortized for a in self.audits)


def audit_run(
    sequence: AccessSequence,
    weights: WeightAssignment | None = None,
    *,
    engine: str | None = None,
) -> AuditRun:
    """Replay the greedy sweep and audit every search.

    An accessed element beyond the searched one is stubborn when its rank
    after the search equals the prior rank of its accessed neighbor on the
    far side; stubborn elements are what keeps the telescoping sum from
    collapsing, and their count is bounded separately.
    """
    if weights is None:
        weights = WeightAssignment.uniform(sequence.n)
    if weights.n != sequence.n:
        raise ValueError("weights cover a different universe than the sequence")
    _, _, rows = _greedyass.run(sequence, engine=engine)
    n = sequence.n
    rho = [0] * (n + 1)
    snapshots = [make_snapshot(0, rho, weights)]
    for row in rows:
        for x in row.accessed:
            rho[x] = row.time
        snapshots.append(make_snapshot(row.time, rho, weights))

    lg_w = floor_log2(weights.total)
    audits = []
    for row in rows:
        i = row.time
        before = snapshots[i - 1]
        after = snapshots[i]
        accessed = row.accessed
        cost = row.cost
        amortized = cost + after.phi - before.phi
        r_s = before.ranks[row.searched]
        bound = 5 + 6 * lg_w - 6 * r_s

        rights = [x for x in accessed if x > row.searched]
        lefts = [x for x in accessed if x < row.searched]
        stubborn_right = tuple(
            x
            for k, x in enumerate(rights[:-1])
            if after.ranks[x] == before.ranks[rights[k + 1]]
        )
        stubborn_left = tuple(
            x
            for k, x in enumerate(lefts[1:], start=1)
            if after.ranks[x] == before.ranks[lefts[k - 1]]
        )
        audits.append(
            SearchAudit(
                time=i,
                searched=row.searched,
                accessed=accessed,
                cost=cost,
                potential_before=before.phi,
                potential_after=after.phi,
                amortized=amortized,
                bound=bound,
                lg_total_weight=lg_w,
                rank_searched_before=r_s,
                stubborn_right=stubborn_right,
                stubborn_left=stubborn_left,
                e_rl=rights[0] if rights else None,
                e_rr=rights[-1] if rights else None,
                e_ll=lefts[0] if lefts else None,
                e_lr=lefts[-1] if lefts else None,
            )
        )
    return AuditRun(
        sequence=sequence,
        weights=weights,
        snapshots=tuple(snapshots),
        rows=tuple(rows),
        audits=tuple(audits),
    )


def check_no_access_lemma(run: AuditRun, i: int) -> bool:
    """Elements not accessed by search i keep their neighborhoods unchanged."""
    before = run.snapshots[i - 1]
    after = run.snapshots[i]
    accessed = set(run.rows[i - 1].accessed)
    for x in range(1, run.sequence.n + 1):
        if x in accessed:
            continue
        if before.a[x] != after.a[x] or before.b[x] != after.b[x]:
            return False
    return True


def check_rank_inequalities(run: AuditRun, i: int) -> bool:
    """Each accessed element's new neighborhood nests strictly inside its
    accessed far-side neighbor's old one: sizes strictly smaller, ranks no
    larger.  Vacuous on sides with at most one accessed element."""
    before = run.snapshots[i - 1]
    after = run.snapshots[i]
    audit = run.audits[i - 1]
    rights = [x for x in audit.accessed if x > audit.searched]
    lefts = [x for x in audit.accessed if x < audit.searched]
    for k, x in enumerate(rights[:-1]):
        succ = rights[k + 1]
        if not (after.sigma[x] < before.sigma[succ]):
            return False
        if not (after.ranks[x] <= before.ranks[succ]):
            return False
    for k, x in enumerate(lefts[1:], start=1):
        succ = lefts[k - 1]
        if not (after.sigma[x] < before.sigma[succ]):
            return False
        if not (after.ranks[x] <= before.ranks[succ]):
            return False
    return True


def _telescope_side(
    run: AuditRun, i: int, side: list[int], stubborn: tuple[int, ...]
) -> bool:
    """Exact reconstruction of one side's telescoped amortized cost.

    ``side`` lists the accessed elements on one side of the searched element,
    ordered moving away from it; with alpha stubborn elements the sum of
    (1 + rank change) over the side equals

        1 + alpha + r(farthest, i) - r(nearest, i-1) - slack

    where the slack collects how far each non-stubborn element's new rank
    drops below its neighbor's old rank minus one.  Slack is never negative,
    so the closed form is also an upper bound.
    """
    if not side:
        return True
    before = run.snapshots[i - 1]
    after = run.snapshots[i]
    total = sum(1 + after.ranks[x] - before.ranks[x] for x in side)
    alpha = len(stubborn)
    rhs = 1 + alpha + after.ranks[side[-1]] - before.ranks[side[0]]
    slack = 0
    for k, x in enumerate(side[:-1]):
        succ = side[k + 1]
        gap = before.ranks[succ] - after.ranks[x]
        if gap < 0:
            return False
        if x not in stubborn:
            slack += gap - 1
    if slack < 0:
        return False
    return total == rhs - slack and total <= rhs


def check_telescope(run: AuditRun, i: int) -> bool:
    """Per-side telescoping identity and bound; vacuous on empty sides."""
    audit = run.audits[i - 1]
    rights = [x for x in audit.accessed if x > audit.searched]
    lefts = [x for x in audit.accessed if x < audit.searched]
    lefts_outward = lefts[::-1]  # moving away from the searched element
    return _telescope_side(run, i, rights, audit.stubborn_right) and _telescope_side(
        run, i, lefts_outward, audit.stubborn_left
    )


def check_stubborn_bound(audit: SearchAudit) -> bool:
    """Per side, at most 1 + 2*floor(lg W) - 2*r(s_i, i-1) stubborn elements."""
    cap = 1 + 2 * audit.lg_total_weight - 2 * audit.rank_searched_before
    return len(audit.stubborn_right) <= cap and len(audit.stubborn_left) <= cap


def check_cost_sum_identity(run: AuditRun, i: int) -> bool:
    """The amortized cost equals the sum of (1 + rank change) over the
    accessed elements; everything else cancels because unaccessed
    neighborhoods are untouched."""
    before = run.snapshots[i - 1]
    after = run.snapshots[i]
    audit = run.audits[i - 1]
    decomposed = sum(1 + after.ranks[x] - before.ranks[x] for x in audit.accessed)
    return decomposed == audit.amortized


def working_set_distance(sequence: AccessSequence, i: int) -> int:
    """Distinct elements searched since the previous search of s_i
    (exclusive); i-1 when there is no earlier instance."""
    if not 1 <= i <= sequence.m:
        raise ValueError(f"time {i} outside 1..{sequence.m}")
    s = sequence.searches
    target = s[i - 1]
    distinct: set[int] = set()
    for j in range(i - 2, -1, -1):
        if s[j] == target:
            return len(distinct)
        distinct.add(s[j])
    return i - 1


def working_set_distances(sequence: AccessSequence) -> list[int]:
    """All d(i) in one pass (a running last-seen table instead of rescans)."""
    last_seen: dict[int, int] = {}
    out: list[int] = []
    for i, sv in enumerate(sequence.searches, start=1):
        if sv in last_seen:
            j = last_seen[sv]
            out.append(len(set(sequence.searches[j : i - 1])))
        else:
            out.append(i - 1)
        last_seen[sv] = i
    return out


@dataclass(frozen=True)
class CorollaryReport:
    """Actual greedy cost against the classic distribution-sensitive bounds.

    The balance bound is a hard consequence of the access bound at unit
    weights (zero initial potential, nonnegative final potential), so it is
    flagged as a violation if exceeded.  The others depend on the chosen
    weight scheme's constants and are reported as ratios.
    """

    n: int
    m: int
    actual_total: int
    balance_bound: int
    balance_ok: bool
    static_optimality_bound: int | None
    static_finger: int
    static_finger_bound: int
    working_set_sum: float
    working_set_denominator: float

    @property
    def static_optimality_ratio(self) -> float | None:
        if self.static_optimality_bound in (None, 0):
            return None
        return self.actual_total / self.static_optimality_bound

    @property
    def static_finger_ratio(self) -> float:
        return self.actual_total / self.static_finger_bound if self.static_finger_bound else 0.0

    @property
    def working_set_ratio(self) -> float:
        return self.actual_total / self.working_set_denominator

    def lines(self) -> list[str]:
        out = [
            f"actual total: {self.actual_total}",
            f"balance bound m(5+6 lg n) = {self.balance_bound}: "
            + ("ok" if self.balance_ok else "VIOLATED"),
        ]
        if self.static_optimality_bound is None:
            out.append("static optimality: n/a (not every element searched)")
        else:
            out.append(
                f"static optimality bound = {self.static_optimality_bound}"
                f" ratio = {self.static_optimality_ratio:.4f}"
            )
        out.append(
            f"static finger (f={self.static_finger}) bound = {self.static_finger_bound}"
            f" ratio = {self.static_finger_ratio:.4f}"
        )
        out.append(
            f"working-set denominator m + sum lg(d+1) = {self.working_set_denominator:.2f}"
            f" ratio = {self.working_set_ratio:.4f}"
        )
        return out


def corollary_bounds(
    sequence: AccessSequence,
    ledger: CostLedger,
    *,
    finger: int | None = None,
) -> CorollaryReport:
    """Evaluate the four corollary bounds for a greedy run's ledger."""
    n, m = sequence.n, sequence.m
    actual = ledger.total
    lg_n = floor_log2(n)
    balance_bound = m * (5 + 6 * lg_n)

    counts = [0] * (n + 1)
    for s in sequence:
        counts[s] += 1
    static_opt: int | None = None
    if m > 0 and all(c > 0 for c in counts[1:]):
        lg_m = floor_log2(m)
        static_opt = sum(
            t * (5 + 6 * lg_m - 6 * floor_log2(t)) for t in counts[1:]
        )

    if finger is None:
        finger = (n + 1) // 2
    fw = WeightAssignment.static_finger(n, finger)
    lg_w = floor_log2(fw.total)
    r_min = min(floor_log2(fw.w(x)) for x in range(1, n + 1))
    per_search = sum(5 + 6 * lg_w - 6 * floor_log2(fw.w(s)) for s in sequence)
    finger_bound = per_search + n * (lg_w - r_min)

    ws = working_set_distances(sequence)
    ws_sum = sum(math.log2(d + 1) for d in ws)

    return CorollaryReport(
        n=n,
        m=m,
        actual_total=actual,
        balance_bound=balance_bound,
        balance_ok=actual <= balance_bound,
        static_optimality_bound=static_opt,
        static_finger=finger,
        static_finger_bound=finger_bound,
        working_set_sum=ws_sum,
        working_set_denominator=m + ws_sum,
    )
