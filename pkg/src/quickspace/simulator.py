"""Executable QuickSort with comparison counting.

Two splitter rules: uniformly random (drawn from a seeded SplitMix64, see
:mod:`quickspace.rng`) and always-the-first-element.  A partition of ``m``
elements compares each of the other ``m - 1`` elements with the splitter
exactly once; the count returned is the number of ``<`` evaluations
actually made.

Subproblems are processed depth first, smaller side before larger side, so
the random draws of a run happen in a fixed order and a seed reproduces the
run exactly.
"""
from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import compress, permutations
from operator import not_
from typing import Callable, Iterable, Sequence

from . import prob_core
from .errors import DuplicateItems, TooLarge, ZeroTrials
from .rng import MASK64, SplitMix64, substream_seed

PERM_CAP = 8
DEFAULT_SEED = 20250101


@dataclass(frozen=True)
class TrialReport:
    n: int
    trials: int
    mean: float
    variance: float  # unbiased sample variance, 0.0 for a single trial
    seed: int
    min: int
    max: int

    @property
    def stderr(self) -> float:
        return math.sqrt(self.variance / self.trials)

    def to_dict(self) -> dict:
        return asdict(self)


def _check_distinct(items: Sequence) -> None:
    try:
        distinct = len(set(items)) == len(items)
    except TypeError:
        ordered = sorted(items)
        distinct = all(a != b for a, b in zip(ordered, ordered[1:]))
    if not distinct:
        raise DuplicateItems("QuickSort input must consist of distinct items")


def _quicksort(items: Iterable, choose: Callable[[int], int]) -> tuple[list, int]:
    out: list = []
    count = 0
    stack = [list(items)]
    while stack:
        seq = stack.pop()
        m = len(seq)
        if m <= 1:
            out.extend(seq)
            continue
        k = choose(m)
        splitter = seq[k]
        rest = seq[:k] + seq[k + 1:]
        smaller = [x < splitter for x in rest]
        count += len(smaller)
        stack.append(list(compress(rest, map(not_, smaller))))
        stack.append([splitter])
        stack.append(list(compress(rest, smaller)))
    return out, count


def randomized_quicksort(items: Sequence, seed: int) -> tuple[list, int]:
    """Sort a copy of ``items``; return ``(sorted_items, comparisons)``."""
    items = list(items)
    _check_distinct(items)
    return _quicksort(items, SplitMix64(seed).below)


def randomized_quicksort_count(items: Sequence, seed: int) -> int:
    return randomized_quicksort(items, seed)[1]


def _first(m: int) -> int:
    return 0


def deterministic_quicksort(items: Sequence) -> tuple[list, int]:
    items = list(items)
    _check_distinct(items)
    return _quicksort(items, _first)


def deterministic_quicksort_count(items: Sequence) -> int:
    return deterministic_quicksort(items)[1]


# -- Monte Carlo ------------------------------------------------------------

def trial_counts(n: int, seed: int, start: int, stop: int) -> list[int]:
    """Comparison counts of trials ``start .. stop-1``, each on its own substream."""
    identity = list(range(1, n + 1))
    seed &= MASK64
    return [
        _quicksort(identity, SplitMix64(substream_seed(seed, k)).below)[1]
        for k in range(start, stop)
    ]


def _compiled_counts(n: int, seed: int, start: int, stop: int) -> list[int]:
    import numpy as np

    from . import _fastpath

    return _fastpath.trial_counts(n, np.uint64(seed & MASK64), start, stop).tolist()


ENGINES = {"python": trial_counts, "numba": _compiled_counts}


def _shard(args):
    engine, *rest = args
    return ENGINES[engine](*rest)


def report_from_counts(n: int, seed: int, counts: Sequence[int]) -> TrialReport:
    """Summarize counts; mean and variance are computed exactly, then rounded once."""
    trials = len(counts)
    if trials == 0:
        raise ZeroTrials("at least one trial is required")
    total = sum(counts)
    squares = sum(c * c for c in counts)
    mean = Fraction(total, trials)
    if trials > 1:
        variance = Fraction(trials * squares - total * total, trials * (trials - 1))
    else:
        variance = Fraction(0)
    return TrialReport(
        n=n, trials=trials, mean=float(mean), variance=float(variance),
        seed=seed, min=min(counts), max=max(counts),
    )


def monte_carlo_counts(
    n: int, trials: int, seed: int = DEFAULT_SEED, workers: int = 1, engine: str = "numba"
) -> list[int]:
    if trials < 1:
        raise ZeroTrials("at least one trial is required")
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; choose from {sorted(ENGINES)}")
    if workers <= 1:
        return ENGINES[engine](n, seed, 0, trials)
    bounds = [trials * w // workers for w in range(workers + 1)]
    shards = [(engine, n, seed, lo, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_shard, shards))
    return [c for part in parts for c in part]


def monte_carlo(
    n: int, trials: int, seed: int = DEFAULT_SEED, workers: int = 1, engine: str = "numba"
) -> TrialReport:
    """Randomized QuickSort on 1..n, ``trials`` times; reproducible in (n, trials, seed).

    ``workers > 1`` shards trials over processes; counts are gathered in
    trial order so the report does not depend on the worker count.
    ``engine="python"`` runs :func:`trial_counts` itself; the default
    compiled engine reproduces it count for count and is ~50x faster.
    """
    return report_from_counts(n, seed, monte_carlo_counts(n, trials, seed, workers, engine))


# -- exact averaging over input permutations -------------------------------

def _check_perm_cap(n: int, cap: int) -> None:
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n > cap:
        raise TooLarge(f"n={n} exceeds the permutation cap {cap}")


def deterministic_pmf(n: int, cap: int = PERM_CAP) -> dict[int, Fraction]:
    """Distribution of first-element QuickSort's cost over uniform permutations of 1..n."""
    _check_perm_cap(n, cap)
    counts = Counter(_quicksort(p, _first)[1] for p in permutations(range(1, n + 1)))
    total = math.factorial(n)
    pmf = {c: Fraction(k, total) for c, k in sorted(counts.items())}
    prob_core.record_normalization(sum(pmf.values(), Fraction(0)), f"deterministic_pmf(n={n})")
    return pmf


def permutation_expectation_exact(n: int, cap: int = PERM_CAP) -> Fraction:
    _check_perm_cap(n, cap)
    total = sum(_quicksort(p, _first)[1] for p in permutations(range(1, n + 1)))
    return Fraction(total, math.factorial(n))
