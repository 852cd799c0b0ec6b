import random

import pytest

from greedybst import greedyass
from greedybst.greedyass import LastAccessTable, step, staircase
from greedybst.model import AccessSequence, Point


def test_step_hand_example():
    state = LastAccessTable.fresh(3)
    r1 = step(state, 1)
    assert r1.added == () and r1.time == 1
    r2 = step(state, 3)
    assert r2.added == (1,)
    r3 = step(state, 2)
    assert r3.added == (1, 3)
    assert state.rho[1:] == [3, 3, 3]


def test_step_out_of_range():
    state = LastAccessTable.fresh(3)
    with pytest.raises(ValueError):
        step(state, 4)


def test_run_example():
    seq = AccessSequence(3, (1, 3, 2))
    points, ledger, rows = greedyass.run(seq)
    assert ledger.total == 6
    assert points.points == {
        Point(1, 1),
        Point(1, 2),
        Point(3, 2),
        Point(1, 3),
        Point(2, 3),
        Point(3, 3),
    }
    assert [r.cost for r in rows] == [1, 2, 3]


def test_run_single_search():
    points, ledger, _ = greedyass.run(AccessSequence(9, (4,)))
    assert ledger.total == 1 and len(points) == 1


def test_run_repeats_cost_m():
    seq = AccessSequence(5, (3,) * 7)
    _, ledger, rows = greedyass.run(seq)
    assert ledger.total == 7
    assert all(r.added == () for r in rows)


def test_run_matches_step_fold():
    rng = random.Random(17)
    for _ in range(40):
        n, m = rng.randint(1, 20), rng.randint(0, 40)
        seq = AccessSequence(n, tuple(rng.randint(1, n) for _ in range(m)))
        _, _, rows = greedyass.run(seq)
        state = LastAccessTable.fresh(n)
        for row, s in zip(rows, seq):
            assert step(state, s) == row


def test_ledger_additive_under_state_carry():
    rng = random.Random(23)
    for _ in range(20):
        n = rng.randint(2, 12)
        a = [rng.randint(1, n) for _ in range(rng.randint(1, 15))]
        b = [rng.randint(1, n) for _ in range(rng.randint(1, 15))]
        _, ledger_whole, _ = greedyass.run(AccessSequence(n, tuple(a + b)))
        state = LastAccessTable.fresh(n)
        split_total = sum(step(state, s).cost for s in a) + sum(
            step(state, s).cost for s in b
        )
        assert split_total == ledger_whole.total


def test_staircase_examples():
    state = LastAccessTable.fresh(3)
    assert staircase(state, 2) == ([], [])
    step(state, 1)
    step(state, 3)
    assert staircase(state, 2) == ([(3, 2)], [(1, 2)])
    assert staircase(state, 3) == ([], [])


def test_staircase_matches_step_and_is_monotone():
    rng = random.Random(5)
    for _ in range(30):
        n, m = rng.randint(1, 15), rng.randint(0, 30)
        state = LastAccessTable.fresh(n)
        for _ in range(m):
            s = rng.randint(1, n)
            right, left = staircase(state, s)
            for side in (right, left):
                times = [t for _, t in side]
                assert times == sorted(times) and len(set(times)) == len(times)
            row = step(state, s)
            assert set(row.added) == {e for e, _ in right} | {e for e, _ in left}


def test_run_deterministic():
    seq = AccessSequence(8, tuple(random.Random(1).randint(1, 8) for _ in range(30)))
    first = greedyass.run(seq)
    second = greedyass.run(seq)
    assert first[0].points == second[0].points
    assert [r.added for r in first[2]] == [r.added for r in second[2]]
