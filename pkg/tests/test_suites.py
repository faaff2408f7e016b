"""Invariant suites at reduced scale; the acceptance gate runs them in full."""

from rowsync.suites import (basis_dimension_suite, rank_monotonicity_suite, run_all,
                            sink_equation_suite, sum_conditions_suite)


def test_run_all_clean_and_ordered():
    results = run_all(samples=300, family_samples=60)
    assert [r.name for r in results] == [
        "rank-monotonicity", "sum-conditions", "basis-dimension", "sink-equation"]
    for r in results:
        assert r.ok and r.violations == [] and r.checks > 0


def test_suites_deterministic_for_fixed_seed():
    a = rank_monotonicity_suite(samples=200, seed=9)
    b = rank_monotonicity_suite(samples=200, seed=9)
    assert a == b
    assert sum_conditions_suite(samples=100, seed=4).ok


def test_result_serialization():
    result = sink_equation_suite(random_samples=20, seed=3)
    doc = result.to_json()
    assert set(doc) == {"name", "checks", "ok", "violations", "extras"}
    assert doc["ok"] is True and doc["violations"] == []


def test_column_family_dimensions_reported():
    extras = basis_dimension_suite(max_n=4, samples=30, seed=2).extras
    fams = extras["column_family_dimensions"]
    for n_text, info in fams.items():
        n = int(n_text)
        assert info["two_column_pairs"] == [n + 1]
        assert info["single_column_family"] == n
        assert info["shared_column_at_most_two"] == n * (n - 1) + 1
