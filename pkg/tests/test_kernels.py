"""Compiled and pure kernels must agree bit for bit."""

import random

import pytest

from greedybst import _kernels
from greedybst.arboral import BSTree
from greedybst.model import AccessSequence

ENGINES = sorted(_kernels.available_engines())


def test_compiled_extension_present():
    # The packaged build ships the extension; the pure path stays importable.
    assert "pure" in ENGINES
    assert _kernels.get_engine("pure").ENGINE == "pure"


@pytest.mark.skipif(len(ENGINES) < 2, reason="compiled extension not built")
def test_greedyass_engines_agree():
    rng = random.Random(101)
    for _ in range(80):
        n, m = rng.randint(1, 48), rng.randint(0, 120)
        searches = tuple(rng.randint(1, n) for _ in range(m))
        results = {
            name: _kernels.get_engine(name).greedyass_run(n, searches)
            for name in ENGINES
        }
        rows, rho = results[ENGINES[0]]
        for name in ENGINES[1:]:
            assert results[name] == (rows, rho), (n, searches, name)


@pytest.mark.skipif(len(ENGINES) < 2, reason="compiled extension not built")
def test_greedy_future_engines_agree():
    rng = random.Random(202)
    for t in range(60):
        n, m = rng.randint(1, 32), rng.randint(0, 64)
        searches = tuple(rng.randint(1, n) for _ in range(m))
        tree = BSTree.random_shape(n, t)
        outputs = {}
        for name in ENGINES:
            outputs[name] = _kernels.get_engine(name).greedy_future_run(
                n, tree.left, tree.right, tree.root, searches, True, False
            )
        reference = outputs[ENGINES[0]]
        for name in ENGINES[1:]:
            assert outputs[name] == reference, (n, searches, name)


@pytest.mark.skipif(len(ENGINES) < 2, reason="compiled extension not built")
def test_sequential_checks_agree():
    for n in (1, 2, 5, 17, 40):
        searches = tuple(range(1, n + 1))
        for shape in (BSTree.chain_left(n), BSTree.balanced(n), BSTree.random_shape(n, 3)):
            outs = [
                _kernels.get_engine(name).greedy_future_run(
                    n, shape.left, shape.right, shape.root, searches, False, True
                )
                for name in ENGINES
            ]
            assert outs[0] == outs[1]
            assert outs[0][5] == []  # no violations on sequential runs


def test_final_tree_is_valid_bst():
    rng = random.Random(303)
    for name in ENGINES:
        kernel = _kernels.get_engine(name)
        for t in range(20):
            n, m = rng.randint(1, 20), rng.randint(0, 30)
            searches = tuple(rng.randint(1, n) for _ in range(m))
            tree = BSTree.random_shape(n, t)
            _, _, left, right, root, _ = kernel.greedy_future_run(
                n, tree.left, tree.right, tree.root, searches, False, False
            )
            BSTree(n, root, left, right)  # validates symmetric order


def test_kernel_rejects_out_of_range_search():
    for name in ENGINES:
        kernel = _kernels.get_engine(name)
        with pytest.raises(ValueError):
            kernel.greedyass_run(3, (4,))


def test_empty_sequence():
    for name in ENGINES:
        kernel = _kernels.get_engine(name)
        rows, rho = kernel.greedyass_run(4, ())
        assert rows == [] and rho[1:] == [0, 0, 0, 0]
        tree = BSTree.balanced(4)
        costs, accessed, left, right, root, violations = kernel.greedy_future_run(
            4, tree.left, tree.right, tree.root, (), True, False
        )
        assert costs == [] and accessed == [] and violations == []
        assert (left, right, root) == (tree.left, tree.right, tree.root)
