import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greedybst import analysis, greedyass
from greedybst.analysis import (
    audit_run,
    check_cost_sum_identity,
    check_no_access_lemma,
    check_rank_inequalities,
    check_stubborn_bound,
    check_telescope,
    corollary_bounds,
    floor_log2,
    inclusive_neighborhood,
    left_neighborhood,
    left_rank,
    left_size,
    make_snapshot,
    potential,
    rank,
    right_neighborhood,
    size,
    working_set_distance,
    working_set_distances,
)
from greedybst.model import AccessSequence, WeightAssignment


def snap_after(searches, n, weights=None, time=None):
    weights = weights or WeightAssignment.uniform(n)
    rho = [0] * (n + 1)
    _, _, rows = greedyass.run(AccessSequence(n, tuple(searches)))
    for row in rows:
        for x in row.accessed:
            rho[x] = row.time
    return make_snapshot(time if time is not None else len(searches), rho, weights)


def test_floor_log2_values():
    assert floor_log2(2) == 1
    assert floor_log2(3) == 1
    assert floor_log2(1) == 0
    assert floor_log2(Fraction(5, 8)) == -1
    assert floor_log2(Fraction(1, 2)) == -1
    assert floor_log2(Fraction(1024)) == 10
    with pytest.raises(ValueError):
        floor_log2(0)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 10**9), st.integers(1, 10**9))
def test_floor_log2_defining_inequality(p, q):
    value = Fraction(p, q)
    k = floor_log2(value)
    assert Fraction(2) ** k <= value < Fraction(2) ** (k + 1)


def test_neighborhoods_fresh_state():
    snap = make_snapshot(0, [0, 0, 0, 0], WeightAssignment.uniform(3))
    for x in (1, 2, 3):
        assert inclusive_neighborhood(snap, x) == {x}
    assert potential(snap) == 0


def test_neighborhoods_after_two_searches():
    snap = snap_after([1, 3], 3)
    assert inclusive_neighborhood(snap, 1) == {1, 2}
    assert inclusive_neighborhood(snap, 3) == {2, 3}
    assert inclusive_neighborhood(snap, 2) == {2}
    assert left_neighborhood(snap, 3) == {2}
    assert right_neighborhood(snap, 1) == {2}


def test_neighborhoods_all_tied():
    snap = snap_after([1, 3, 2], 3)
    for x in (1, 2, 3):
        assert inclusive_neighborhood(snap, x) == {x}
    assert potential(snap) == 0


def test_sizes_and_ranks():
    snap = snap_after([1, 3], 3)
    assert size(snap, 3) == 2
    assert rank(snap, 3) == 1
    weighted = snap_after([1, 3], 3, WeightAssignment.from_values([4, 1, 2]))
    assert size(weighted, 1) == 5
    fresh = make_snapshot(0, [0, 0, 0, 0], WeightAssignment.uniform(3))
    assert all(size(fresh, x) == 1 for x in (1, 2, 3))


def test_left_rank_undefined_on_empty_side():
    snap = snap_after([1, 3], 3)
    assert left_rank(snap, 1) is None
    assert left_size(snap, 1) == 0
    assert left_rank(snap, 3) == 0  # left side {2}, unit weights


def test_potential_after_one_search():
    snap = snap_after([1], 3, time=1)
    assert [rank(snap, x) for x in (1, 2, 3)] == [1, 0, 0]
    assert potential(snap) == 1


def test_audit_example():
    run = audit_run(AccessSequence(3, (1, 3, 2)))
    assert [a.amortized for a in run.audits] == [2, 3, 1]
    assert [a.bound for a in run.audits] == [11, 11, 11]
    assert [s.phi for s in run.snapshots] == [0, 1, 2, 0]
    assert all(not a.stubborn_left and not a.stubborn_right for a in run.audits)


def test_audit_empty_row_amortized():
    run = audit_run(AccessSequence(4, (2, 2)))
    second = run.audits[1]
    assert second.cost == 1
    assert second.amortized == 1 + second.potential_after - second.potential_before


def test_audit_totals_reconcile():
    rng = random.Random(31)
    for _ in range(20):
        n, m = rng.randint(1, 24), rng.randint(0, 48)
        seq = AccessSequence(n, tuple(rng.randint(1, n) for _ in range(m)))
        w = WeightAssignment.from_values([rng.randint(1, 16) for _ in range(n)])
        run = audit_run(seq, w)
        assert run.amortized_total == run.actual_total + run.snapshots[-1].phi - run.snapshots[0].phi


def test_initial_potential_is_weight_ranks():
    w = WeightAssignment.from_values([Fraction(1, 3), 4, Fraction(5, 8)])
    run = audit_run(AccessSequence(3, ()), w)
    assert run.snapshots[0].phi == sum(floor_log2(w.w(x)) for x in (1, 2, 3))


def test_checks_on_fuzzed_corpus():
    rng = random.Random(8)
    for _ in range(30):
        n, m = rng.randint(1, 32), rng.randint(1, 64)
        seq = AccessSequence(n, tuple(rng.randint(1, n) for _ in range(m)))
        for w in (
            WeightAssignment.uniform(n),
            WeightAssignment.from_values([rng.randint(1, 16) for _ in range(n)]),
        ):
            run = audit_run(seq, w)
            for i in range(1, m + 1):
                audit = run.audits[i - 1]
                assert audit.amortized <= audit.bound
                assert check_no_access_lemma(run, i)
                assert check_rank_inequalities(run, i)
                assert check_telescope(run, i)
                assert check_stubborn_bound(audit)
                assert check_cost_sum_identity(run, i)


def test_telescope_single_element_side_is_exact():
    run = audit_run(AccessSequence(3, (1, 3, 2)))
    # Third search accesses one element on each side.
    audit = run.audits[2]
    before, after = run.snapshots[2], run.snapshots[3]
    assert audit.e_rl == audit.e_rr == 3
    assert 1 + after.ranks[3] - before.ranks[3] == 0
    assert check_telescope(run, 3)


def test_stubborn_requires_accessed_neighbor_on_far_side():
    # Extremes are never stubborn: no accessed element beyond them.
    rng = random.Random(41)
    for _ in range(20):
        n, m = rng.randint(2, 16), rng.randint(1, 32)
        seq = AccessSequence(n, tuple(rng.randint(1, n) for _ in range(m)))
        run = audit_run(seq)
        for audit in run.audits:
            assert audit.e_rr not in audit.stubborn_right
            assert audit.e_ll not in audit.stubborn_left


def test_neighborhood_semantics_exhaustive_small():
    # Gamma(x, i) is exactly the set of keys whose search next would access x.
    for n in (2, 3):
        for m in range(0, 4):
            for combo in itertools.product(range(1, n + 1), repeat=m):
                _check_neighborhood_semantics(AccessSequence(n, combo))


def test_neighborhood_semantics_seeded():
    rng = random.Random(12)
    for _ in range(15):
        n, m = rng.randint(1, 8), rng.randint(0, 8)
        _check_neighborhood_semantics(
            AccessSequence(n, tuple(rng.randint(1, n) for _ in range(m)))
        )


def _check_neighborhood_semantics(seq):
    n = seq.n
    weights = WeightAssignment.uniform(n)
    run = audit_run(seq, weights)
    snap = run.snapshots[-1]
    for x in range(1, n + 1):
        gamma = inclusive_neighborhood(snap, x)
        for k in range(1, n + 1):
            extended = AccessSequence(n, seq.searches + (k,))
            _, _, rows = greedyass.run(extended)
            accessed = set(rows[-1].accessed)
            assert (x in accessed) == (k in gamma), (seq.searches, x, k)


def test_rank_scale_covariance():
    rng = random.Random(6)
    seq = AccessSequence(10, tuple(rng.randint(1, 10) for _ in range(25)))
    base_w = WeightAssignment.from_values([rng.randint(1, 16) for _ in range(10)])
    base = audit_run(seq, base_w)
    for c in (-2, -1, 1, 2):
        scaled = audit_run(seq, base_w.scaled(c))
        for s_base, s_scaled in zip(base.snapshots, scaled.snapshots):
            assert all(
                rs == rb + c for rb, rs in zip(s_base.ranks[1:], s_scaled.ranks[1:])
            )
        for a_base, a_scaled in zip(base.audits, scaled.audits):
            assert a_base.bound - a_base.amortized == a_scaled.bound - a_scaled.amortized


def test_working_set_distance_examples():
    assert working_set_distances(AccessSequence(3, (1, 3, 2))) == [0, 1, 2]
    assert working_set_distances(AccessSequence(3, (1, 2, 1))) == [0, 1, 1]
    assert working_set_distance(AccessSequence(5, (5, 5)), 2) == 0
    assert working_set_distance(AccessSequence(5, (1, 2, 3)), 1) == 0


def test_working_set_distance_scan_matches_batch():
    rng = random.Random(2)
    seq = AccessSequence(6, tuple(rng.randint(1, 6) for _ in range(60)))
    batch = working_set_distances(seq)
    assert batch == [working_set_distance(seq, i) for i in range(1, seq.m + 1)]


def test_corollary_bounds_example():
    seq = AccessSequence(3, (1, 3, 2))
    _, ledger, _ = greedyass.run(seq)
    report = corollary_bounds(seq, ledger)
    assert report.actual_total == 6
    assert report.balance_bound == 3 * (5 + 6 * 1) == 33
    assert report.balance_ok
    assert report.static_optimality_bound is not None  # every element searched
    assert report.working_set_sum == pytest.approx(1 + 1.584962500721156)


def test_corollary_static_optimality_na_when_uncovered():
    seq = AccessSequence(4, (1, 2))
    _, ledger, _ = greedyass.run(seq)
    assert corollary_bounds(seq, ledger).static_optimality_bound is None


def test_balance_bound_hard_on_fuzz():
    rng = random.Random(19)
    for _ in range(25):
        n, m = rng.randint(1, 40), rng.randint(0, 80)
        seq = AccessSequence(n, tuple(rng.randint(1, n) for _ in range(m)))
        _, ledger, _ = greedyass.run(seq)
        assert ledger.total <= m * (5 + 6 * floor_log2(n))
