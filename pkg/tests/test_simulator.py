import functools
import math
from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quickspace import recurrence, run_space, simulator as sim
from quickspace.errors import DuplicateItems, TooLarge, ZeroTrials
from quickspace.rng import MASK64, SplitMix64, mix64, substream_seed


@functools.total_ordering
class Counted:
    """Wraps a value and counts every comparison made on it."""

    calls = 0

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        Counted.calls += 1
        return self.v < other.v

    def __eq__(self, other):
        return self.v == other.v

    def __hash__(self):
        return hash(self.v)


def counted(values):
    Counted.calls = 0
    return [Counted(v) for v in values]


# -- generator ----------------------------------------------------------------

def test_splitmix64_reference_outputs():
    g = SplitMix64(0)
    assert [g.next() for _ in range(3)] == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_mix64_is_one_step():
    assert mix64(12345) == SplitMix64(12345).next()


def test_substreams_differ_and_repeat():
    seeds = {substream_seed(7, k) for k in range(1000)}
    assert len(seeds) == 1000
    assert substream_seed(7, 3) == substream_seed(7, 3)
    assert substream_seed(7 + (1 << 64), 3) == substream_seed(7, 3)


class Scripted(SplitMix64):
    def __init__(self, values):
        super().__init__(0)
        self.values = iter(values)

    def next(self):
        return next(self.values)


def test_below_rejects_biased_prefix():
    # 2**64 % 3 == 1, so 0 is the single rejected draw for m = 3
    assert Scripted([0, 0, 5]).below(3) == 2
    assert Scripted([1]).below(3) == 1
    assert Scripted([MASK64]).below(3) == MASK64 % 3
    with pytest.raises(ValueError):
        SplitMix64(1).below(0)


def test_below_range():
    g = SplitMix64(99)
    draws = [g.below(7) for _ in range(7000)]
    assert set(draws) == set(range(7))


# -- randomized QuickSort ------------------------------------------------------

def test_empty_and_pair():
    assert sim.randomized_quicksort_count([], 1) == 0
    for seed in range(20):
        assert sim.randomized_quicksort_count([5, 3], seed) == 1


def test_three_items_in_support():
    support = set(run_space.comparison_pmf(3))
    seen = {sim.randomized_quicksort_count([3, 1, 2], seed) for seed in range(200)}
    assert seen == support == {2, 3}


def test_duplicates_rejected():
    with pytest.raises(DuplicateItems):
        sim.randomized_quicksort_count([1, 2, 1], 0)
    with pytest.raises(DuplicateItems):
        sim.deterministic_quicksort_count([[1], [1]])


@settings(max_examples=100)
@given(st.lists(st.integers(-1000, 1000), unique=True, max_size=60), st.integers(0, MASK64))
def test_sorts_and_counts_real_comparisons(values, seed):
    items = counted(values)
    out, count = sim.randomized_quicksort(items, seed)
    assert [x.v for x in out] == sorted(values)
    assert count == Counted.calls


@settings(max_examples=100)
@given(st.lists(st.integers(-1000, 1000), unique=True, max_size=60))
def test_deterministic_sorts_and_counts(values):
    items = counted(values)
    out, count = sim.deterministic_quicksort(items)
    assert [x.v for x in out] == sorted(values)
    assert count == Counted.calls


def test_same_seed_same_run():
    items = list(range(200))
    assert sim.randomized_quicksort_count(items, 5) == sim.randomized_quicksort_count(items, 5)


def test_randomized_is_rank_based():
    # only relative order matters, so any relabelling gives the same count
    for seed in range(30):
        assert sim.randomized_quicksort_count(range(1, 40), seed) == \
            sim.randomized_quicksort_count([10 * k + 3 for k in range(1, 40)], seed)


# -- deterministic QuickSort ------------------------------------------------

@pytest.mark.parametrize("items, expected", [([1, 2, 3], 3), ([2, 1, 3], 2), ([7], 0), ([], 0)])
def test_deterministic_examples(items, expected):
    assert sim.deterministic_quicksort_count(items) == expected


def test_deterministic_sorted_input_is_quadratic_without_recursion_limit():
    n = 3000
    assert sim.deterministic_quicksort_count(range(n)) == n * (n - 1) // 2


def test_permutation_expectation_small():
    # hand enumeration of the six orders of 1..3: 3, 3, 2, 2, 3, 3
    assert [sim.deterministic_quicksort_count(p) for p in permutations([1, 2, 3])] == [3, 3, 2, 2, 3, 3]
    assert sim.permutation_expectation_exact(2) == 1
    assert sim.permutation_expectation_exact(3) == F(8, 3)


@pytest.mark.parametrize("n", range(0, 9))
def test_permutation_expectation_equals_recurrence(n):
    assert sim.permutation_expectation_exact(n) == recurrence.t_exact(n)


def test_deterministic_pmf():
    assert sim.deterministic_pmf(2) == {1: 1}
    assert sim.deterministic_pmf(3) == {2: F(1, 3), 3: F(2, 3)}


@pytest.mark.parametrize("n", range(0, 8))
def test_deterministic_pmf_equals_run_space_pmf(n):
    assert sim.deterministic_pmf(n) == run_space.comparison_pmf(n)


def test_permutation_cap():
    with pytest.raises(TooLarge):
        sim.permutation_expectation_exact(9)
    with pytest.raises(TooLarge):
        sim.deterministic_pmf(5, cap=4)


# -- Monte Carlo ------------------------------------------------------------

def test_two_elements_always_one_comparison():
    report = sim.monte_carlo(2, 1000, seed=123)
    assert report.mean == 1.0 and report.variance == 0.0
    assert report.min == report.max == 1


def test_tiny_sizes():
    assert sim.monte_carlo(0, 5).mean == 0.0
    assert sim.monte_carlo(1, 5).max == 0


def test_single_trial():
    report = sim.monte_carlo(10, 1, seed=4)
    assert report.variance == 0.0 and report.min == report.max == report.mean


def test_zero_trials():
    with pytest.raises(ZeroTrials):
        sim.monte_carlo(5, 0)
    with pytest.raises(ZeroTrials):
        sim.report_from_counts(5, 0, [])


def test_unknown_engine():
    with pytest.raises(ValueError):
        sim.monte_carlo(5, 3, engine="fortran")


def test_three_elements_mean():
    report = sim.monte_carlo(3, 300_000, seed=sim.DEFAULT_SEED)
    assert abs(report.mean - 8 / 3) <= 0.02


def test_report_invariants():
    report = sim.monte_carlo(30, 2000, seed=11)
    assert report.min <= report.mean <= report.max
    assert report.variance >= 0
    assert report.stderr == pytest.approx(math.sqrt(report.variance / 2000))


def test_report_exact_statistics():
    report = sim.report_from_counts(4, 0, [4, 5, 6, 6])
    assert report.mean == 5.25
    assert report.variance == float(F(11, 12))


@pytest.mark.parametrize("n", [0, 1, 2, 3, 17, 100])
def test_engines_agree_count_for_count(n):
    assert sim.trial_counts(n, 2024, 0, 2000) == sim.monte_carlo_counts(n, 2000, 2024, engine="numba")


def test_engines_agree_on_large_seed_and_offset():
    seed = MASK64 - 5
    assert sim.trial_counts(40, seed, 500, 900) == sim._compiled_counts(40, seed, 500, 900)


def test_reproducible():
    assert sim.monte_carlo(50, 5000, seed=9) == sim.monte_carlo(50, 5000, seed=9)
    assert sim.monte_carlo(50, 5000, seed=9) != sim.monte_carlo(50, 5000, seed=10)


@pytest.mark.parametrize("workers", [2, 3])
def test_sharding_independent_of_worker_count(workers):
    single = sim.monte_carlo_counts(25, 1001, seed=77)
    assert sim.monte_carlo_counts(25, 1001, seed=77, workers=workers) == single
    assert sim.monte_carlo_counts(25, 1001, seed=77, workers=workers, engine="python") == single


@pytest.mark.parametrize("n", [3, 5, 8])
def test_counts_within_support(n):
    pmf = run_space.comparison_pmf(n)
    counts = sim.monte_carlo_counts(n, 5000, seed=3)
    assert set(counts) <= set(pmf)
    assert min(pmf) <= min(counts) and max(counts) <= n * (n - 1) // 2
