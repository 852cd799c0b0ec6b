import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greedybst import geometry
from greedybst.model import AccessSequence, Point, PointSet
from greedybst import greedyass


def P(*pairs):
    return {Point(x, y) for x, y in pairs}


def test_unsatisfied_pair_off_axis():
    pts = P((1, 1), (2, 2))
    assert not geometry.is_satisfied_pair(Point(1, 1), Point(2, 2), pts)


def test_aligned_pair_satisfied():
    pts = P((1, 2), (3, 2))
    assert geometry.is_satisfied_pair(Point(1, 2), Point(3, 2), pts)


def test_boundary_point_witnesses():
    # (1,2) sits on the closed rectangle spanned by (1,1) and (2,3).
    pts = P((1, 1), (2, 3), (1, 2))
    assert geometry.is_satisfied_pair(Point(1, 1), Point(2, 3), pts)


def test_degenerate_pair_rejected():
    with pytest.raises(ValueError):
        geometry.is_satisfied_pair(Point(1, 1), Point(1, 1), P((1, 1)))


def test_satisfied_set_examples():
    assert not geometry.is_satisfied_set(P((1, 1), (3, 2)))
    full = P((1, 1), (1, 2), (3, 2), (1, 3), (2, 3), (3, 3))
    assert geometry.is_satisfied_set(full)
    assert geometry.is_satisfied_set(set())
    assert geometry.is_satisfied_set(P((2, 2)))


def test_unsatisfied_pairs_listing():
    assert geometry.unsatisfied_pairs(P((1, 1), (3, 2))) == [(Point(1, 1), Point(3, 2))]
    assert geometry.unsatisfied_pairs(P((1, 1), (1, 2), (3, 2))) == []
    # Row-major order, both within and between pairs.
    got = geometry.unsatisfied_pairs(P((1, 1), (3, 2), (2, 3)))
    assert got == [
        (Point(1, 1), Point(3, 2)),
        (Point(1, 1), Point(2, 3)),
        (Point(3, 2), Point(2, 3)),
    ]


def test_unsatisfied_pairs_iff_satisfied():
    rng = random.Random(11)
    for _ in range(50):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        cells = [(x, y) for x in range(1, n + 1) for y in range(1, m + 1)]
        pts = set(rng.sample(cells, rng.randint(0, len(cells))))
        assert (geometry.unsatisfied_pairs(pts) == []) == geometry.is_satisfied_set(
            pts, method="reference"
        )


@settings(max_examples=200, deadline=None)
@given(
    st.sets(
        st.tuples(st.integers(1, 12), st.integers(1, 12)),
        max_size=40,
    )
)
def test_checkers_agree(pairs):
    ref = geometry.is_satisfied_set(pairs, method="reference")
    sweep = geometry.is_satisfied_set(pairs, method="sweep")
    assert ref == sweep


def test_checkers_agree_on_larger_fuzz():
    rng = random.Random(99)
    for _ in range(60):
        n, m = rng.randint(1, 30), rng.randint(1, 30)
        cells = [(x, y) for x in range(1, n + 1) for y in range(1, m + 1)]
        pts = set(rng.sample(cells, rng.randint(0, min(150, len(cells)))))
        assert geometry.is_satisfied_set(pts, method="reference") == geometry.is_satisfied_set(
            pts, method="sweep"
        )


def test_greedy_outputs_satisfied():
    rng = random.Random(3)
    for _ in range(25):
        n, m = rng.randint(1, 12), rng.randint(0, 20)
        seq = AccessSequence(n, tuple(rng.randint(1, n) for _ in range(m)))
        pts, _, _ = greedyass.run(seq)
        assert geometry.is_satisfied_set(pts, method="reference")
