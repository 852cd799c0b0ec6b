"""Acceptance battery: every release criterion at full size, one line each.

Criteria and sizes are pinned here; run with `pytest tests/test_acceptance.py -v -s`
or through the CLI (`greedybst verify --suite all`).
"""

import pytest

from greedybst import suites


def _report(result: suites.SuiteResult, label: str) -> None:
    for line in result.lines:
        print(line)
    status = "PASS" if result.passed else "FAIL"
    print(f"{status}: {label}")
    assert result.passed, "\n".join(result.lines)


def test_criterion_01_sequential_access_bound():
    """Sequential cost <= 4n-2 for n up to 1024 from chains, balanced, and 50
    random shapes, with the per-step structural assertions armed."""
    result = suites.sequential_suite(n_max=1024, random_shapes=50)
    assert result.stats["runs"] == 1024 * 53
    assert result.stats["max_ratio"] <= 1.0
    _report(result, "criterion 1 (sequential access bound, exact)")


@pytest.fixture(scope="module")
def battery():
    return suites._cached_battery(100, 64, 256, suites._CORPUS_SEED)


def test_criterion_02_access_lemma(battery):
    """Amortized <= 5 + 6 lg W - 6 r(s_i, i-1) on 100 traces under unit and
    random integer weights; amortized totals reconcile exactly."""
    result = suites.access_lemma_suite(traces=100, n_max=64, m_max=256)
    assert battery.access_bound_ok and battery.sum_identity_ok
    _report(result, "criterion 2 (access bound, exact inequality)")


def test_criterion_03_lemma_suite(battery):
    """Neighborhood stability, nesting inequalities, telescoping, and the
    stubborn-count bound on every search of the criterion-2 corpus."""
    result = suites.lemma_suite(traces=100, n_max=64, m_max=256)
    assert battery.lemma_checks_ok
    _report(result, "criterion 3 (per-search analysis checkers)")


def test_criterion_04_balance_bound(battery):
    """Unit-weight total <= m(5 + 6 lg n) on the criterion-2 corpus."""
    assert battery.balance_ok, "\n".join(battery.failures)
    print(f"balance: total <= m(5+6 lg n) over {battery.traces} traces")
    print("PASS: criterion 4 (balance bound, hard)")


def test_criterion_05_row_minimality():
    """Sweep rows equal the unique brute-force minimum extension: exhaustive
    n, m <= 4 plus 500 seeded n = m = 5 instances."""
    result = suites.row_minimality_suite(seeds=500)
    _report(result, "criterion 5 (row minimality and uniqueness)")


def test_criterion_06_satisfaction():
    """Cumulative sweep outputs and execution views stay satisfied; the two
    satisfaction checkers agree on 1000 fuzzed sets."""
    result = suites.satisfaction_suite(fuzz_sets=1000, max_points=200)
    assert result.stats["fuzz_sets"] == 1000
    _report(result, "criterion 6 (satisfaction referee)")


def test_criterion_07_cross_model_equivalence():
    """Tree-side accessed sets from the canonical initial tree equal the
    sweep's row outputs: exhaustive n, m <= 4 plus 200 seeded instances."""
    result = suites.equivalence_suite(seeded=200, n_max=16, m_max=64)
    mismatches = result.stats["first_search_mismatches"]
    print(f"first-search mismatches (tolerated, reported): {mismatches}")
    _report(result, "criterion 7 (cross-model equivalence)")


def test_criterion_08_additive_optimality_probe():
    """Greedy <= OPT + m on every exhaustive instance with n, m in {3, 4}."""
    result = suites.conjecture_suite()
    print(f"max slack {result.stats['max_slack']} at {result.stats['worst']}")
    _report(result, "criterion 8 (greedy within additive m of OPT)")


def test_criterion_09_bit_reversal_profile():
    """Steady-state cost per search within [lg((n+1)/2), lg(n+1)+1] for
    heights 2..6 at 8 rounds."""
    result = suites.bit_reversal_suite(heights=(2, 3, 4, 5, 6), rounds=8)
    _report(result, "criterion 9 (bit-reversal profile)")


def test_criterion_10_working_set_ratio():
    """Cost over m + sum lg(d(i)+1) must not grow more than 10% from m=10^3
    to m=10^4 at window widths 2, 8, 32."""
    result = suites.working_set_suite(n=256, widths=(2, 8, 32), m_values=(1000, 10000))
    _report(result, "criterion 10 (working-set ratio stability)")
