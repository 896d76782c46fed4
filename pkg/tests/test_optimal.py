import numpy as np
import pytest

from treebump import (
    SizeCapExceeded,
    WeightProfile,
    entropy,
    fill_tables,
    mehlhorn_bounds,
    optimal_cost_only,
    optimal_tree,
    oracle,
    uniform_profile,
    zipf_profile,
)

from conftest import random_profile

ZIPF3 = WeightProfile(probs=np.array([6 / 11, 3 / 11, 2 / 11]), seed=0, alpha=1.0)


def naive_dp_cost(probs):
    """Plain O(n^3) full-window DP, kept deliberately separate from the kernel."""
    n = len(probs)
    prefix = [0.0]
    for p in probs:
        prefix.append(prefix[-1] + p)
    cost = [[0.0] * n for _ in range(n)]
    for i in range(n):
        cost[i][i] = probs[i]
    for length in range(2, n + 1):
        for i in range(n - length + 1):
            j = i + length - 1
            best = min(
                (cost[i][r - 1] if r > i else 0.0) + (cost[r + 1][j] if r < j else 0.0)
                for r in range(i, j + 1)
            )
            cost[i][j] = best + (prefix[j + 1] - prefix[i])
    return cost[0][n - 1]


def test_hand_examples():
    t, c = optimal_tree(ZIPF3)
    t.validate()
    assert c == pytest.approx(18 / 11, abs=1e-12)
    assert t.root == 0

    t, c = optimal_tree(uniform_profile(3))
    assert c == pytest.approx(5 / 3, abs=1e-12)
    assert t.root == 1

    assert optimal_cost_only(uniform_profile(1)) == pytest.approx(1.0, abs=1e-15)
    two = WeightProfile(probs=np.array([0.9, 0.1]), seed=0, alpha=0.0)
    assert optimal_cost_only(two) == pytest.approx(0.9 + 0.2, abs=1e-12)


def test_matches_exhaustive_small(rng):
    for n in range(2, 8):
        for _ in range(10):
            prof = zipf_profile(n, 1.0, int(rng.integers(1 << 30)))
            expected, _ = oracle.exhaustive_optimal(prof)
            assert optimal_cost_only(prof) == expected


def test_matches_naive_full_window_dp(rng):
    for _ in range(25):
        n = int(rng.integers(2, 60))
        prof = random_profile(rng, n)
        assert optimal_cost_only(prof) == pytest.approx(naive_dp_cost(prof.probs.tolist()), abs=1e-12)


def test_tree_cost_equals_reported(rng):
    for _ in range(30):
        n = int(rng.integers(1, 120))
        prof = random_profile(rng, n)
        t, c = optimal_tree(prof)
        t.validate()
        assert abs(t.cost() - c) <= 1e-9


def test_cost_only_equals_full_tables(rng):
    for n in (1, 2, 17, 300, 2000):
        prof = zipf_profile(n, 1.0, n)
        _, c_full = optimal_tree(prof)
        assert optimal_cost_only(prof) == c_full


def test_root_table_is_monotone(rng):
    for _ in range(10):
        n = int(rng.integers(2, 50))
        prof = random_profile(rng, n)
        tables = fill_tables(prof)
        for i in range(n):
            for j in range(i + 1, n):
                assert tables.root_at(i, j - 1) <= tables.root_at(i, j) <= tables.root_at(i + 1, j)


def test_cost_at_least_entropy_lower_bound(rng):
    for _ in range(20):
        prof = zipf_profile(int(rng.integers(2, 400)), 1.0, int(rng.integers(1 << 30)))
        lower, _ = mehlhorn_bounds(entropy(prof))
        assert optimal_cost_only(prof) >= lower - 1e-9


def test_size_cap():
    prof = uniform_profile(31)
    with pytest.raises(SizeCapExceeded, match="30"):
        optimal_tree(prof, cap=30)
    with pytest.raises(SizeCapExceeded):
        optimal_cost_only(prof, cap=30)


def test_ties_resolve_to_smallest_root():
    # uniform n=2: both roots cost 1.5; the table must pick key 0
    tables = fill_tables(uniform_profile(2))
    assert tables.root_at(0, 1) == 0
