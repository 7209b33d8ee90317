"""Exact probability space of randomized QuickSort runs, with checks of its
expected-cost analysis by enumeration and simulation."""

from .errors import QuickspaceError
from .prob_core import (
    FiniteSpace,
    check_total_expectation,
    conditional_compose,
    conditional_expectation,
    deferred_expectation,
    expectation,
    make_space,
    prob,
    product,
)
from .recurrence import bound_check, indicator_sum, t_exact, t_float
from .run_space import (
    LEAF,
    Node,
    RunSpace,
    build_via_core,
    comparison_pmf,
    comparisons,
    enumerate_runs,
    expected_comparisons_by_enumeration,
    run_probability,
)
from .simulator import (
    TrialReport,
    deterministic_pmf,
    deterministic_quicksort_count,
    monte_carlo,
    permutation_expectation_exact,
    randomized_quicksort_count,
)
from .splitter import RankInterval, compare_prob_exact, first_splitter_in_interval, splitter_prob_exact

__version__ = "0.1.0"
