"""Which element of a rank interval is split first, computed exactly over Q_n.

Node ranks in a run are relative to their subproblem.  The walk below keeps
the absolute rank of the subproblem's smallest element minus one as an
offset so that it can report absolute ranks.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import prob_core
from .errors import BadPair, InvalidInterval, RankOutOfInterval
from .run_space import ENUM_CAP, LEAF, enumerate_runs, validate_run


@dataclass(frozen=True)
class RankInterval:
    n: int
    i: int
    j: int

    def __post_init__(self):
        if not 1 <= self.i <= self.j <= self.n:
            raise InvalidInterval(f"need 1 <= i <= j <= n, got i={self.i}, j={self.j}, n={self.n}")

    @property
    def size(self) -> int:
        return self.j - self.i + 1

    def __contains__(self, rank: int) -> bool:
        return self.i <= rank <= self.j


def _first_splitter(run, lo: int, hi: int) -> int:
    offset = 0
    while run is not LEAF:
        rank = offset + run.rank
        if rank < lo:
            offset = rank
            run = run.right
        elif rank > hi:
            run = run.left
        else:
            return rank
    # a leaf holds at most one element, so the interval was a singleton
    return lo


def first_splitter_in_interval(run, n: int, interval: RankInterval) -> int:
    """Absolute rank of the first splitter chosen from ``interval`` in ``run``."""
    if interval.n != n:
        raise InvalidInterval(f"interval is for n={interval.n}, run is for n={n}")
    validate_run(run, n)
    return _first_splitter(run, interval.i, interval.j)


@lru_cache(maxsize=4096)
def _distribution(n: int, i: int, j: int, cap: int) -> dict[int, Fraction]:
    space = enumerate_runs(n, cap)
    dist = {q: Fraction(0) for q in range(i, j + 1)}
    for run, w, _ in space:
        dist[_first_splitter(run, i, j)] += w
    # every run splits the interval somewhere
    prob_core.record_normalization(sum(dist.values(), Fraction(0)), f"first splitter of [{i},{j}], n={n}")
    return dist


def first_splitter_distribution(interval: RankInterval, cap: int = ENUM_CAP) -> dict[int, Fraction]:
    return dict(_distribution(interval.n, interval.i, interval.j, cap))


def splitter_prob_exact(n: int, interval: RankInterval, q: int, cap: int = ENUM_CAP) -> Fraction:
    """Probability that rank ``q`` is the first splitter chosen inside ``interval``."""
    if interval.n != n:
        raise InvalidInterval(f"interval is for n={interval.n}, expected n={n}")
    if q not in interval:
        raise RankOutOfInterval(f"rank {q} outside [{interval.i},{interval.j}]")
    return _distribution(n, interval.i, interval.j, cap)[q]


def compare_prob_exact(n: int, i: int, j: int, cap: int = ENUM_CAP) -> Fraction:
    """Probability that ranks ``i`` and ``j`` are ever compared.

    They are compared iff one of them is the first splitter taken from
    [i, j]; any other first splitter separates them for good.
    """
    if not 1 <= i < j <= n:
        raise BadPair(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    dist = _distribution(n, i, j, cap)
    return dist[i] + dist[j]
