"""The probability space of randomized QuickSort runs.

A run of size ``n`` is a tree of splitter choices.  Subproblems of size 0 or
1 are finished and are represented by the leaf ``LEAF`` (printed ``⊥``).  A
larger subproblem is a :class:`Node` holding the rank of the chosen splitter
*within that subproblem* and the runs on the smaller and larger elements::

    Node(1, LEAF, Node(2, LEAF, LEAF))     # printed (1,⊥,(2,⊥,⊥)), n = 3

The size is never stored; it is carried alongside the run.  A node at a
subproblem of size ``m`` contributes a factor ``1/m`` to the run's
probability and ``m - 1`` comparisons to its cost.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional, Union

from . import prob_core
from .errors import InvalidRun, TooLarge

ENUM_CAP = 12
BOTTOM = "⊥"


class Node(NamedTuple):
    rank: int
    left: "Run"
    right: "Run"


LEAF = None
Run = Optional[Node]


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    """C_0 = 1, C_n = sum_{i=1..n} C_{i-1} C_{n-i}; C_1 is 1 as a consequence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n <= 1:
        return 1
    return sum(catalan(i - 1) * catalan(n - i) for i in range(1, n + 1))


def _check_cap(n: int, cap: int) -> None:
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n > cap:
        raise TooLarge(f"n={n} exceeds the enumeration cap {cap}")


def _walk(run, n: int, path: str = "root") -> tuple[int, int]:
    # returns (probability denominator, comparisons); raises on invalid shape
    if run is LEAF:
        if n > 1:
            raise InvalidRun(f"leaf at {path} but the subproblem has {n} elements")
        return 1, 0
    if not isinstance(run, tuple) or len(run) != 3:
        raise InvalidRun(f"malformed run at {path}: {run!r}")
    rank, left, right = run
    if isinstance(rank, bool) or not isinstance(rank, int):
        raise InvalidRun(f"rank at {path} is not an integer: {rank!r}")
    if n < 2:
        raise InvalidRun(f"node at {path} but the subproblem has {n} elements")
    if not 1 <= rank <= n:
        raise InvalidRun(f"rank {rank} at {path} outside 1..{n}")
    dl, tl = _walk(left, rank - 1, path + ".left")
    dr, tr = _walk(right, n - rank, path + ".right")
    return n * dl * dr, n - 1 + tl + tr


def validate_run(run, n: int) -> None:
    """Raise InvalidRun unless ``run`` is a run on ``n`` elements."""
    if n < 0:
        raise InvalidRun(f"negative size {n}")
    _walk(run, n)


def is_valid_run(run, n: int) -> bool:
    try:
        validate_run(run, n)
    except InvalidRun:
        return False
    return True


def run_probability(run, n: int) -> Fraction:
    validate_run(run, n)
    return Fraction(1, _walk(run, n)[0])


def comparisons(run, n: int) -> int:
    validate_run(run, n)
    return _walk(run, n)[1]


@lru_cache(maxsize=None)
def _runs_of_size(n: int) -> tuple[tuple[Run, int, int], ...]:
    # (run, probability denominator, comparisons) in canonical order:
    # ranks ascending, then left subruns, then right subruns.
    if n <= 1:
        return ((LEAF, 1, 0),)
    out = []
    for i in range(1, n + 1):
        lefts = _runs_of_size(i - 1)
        rights = _runs_of_size(n - i)
        for left, dl, tl in lefts:
            for right, dr, tr in rights:
                out.append((Node(i, left, right), n * dl * dr, n - 1 + tl + tr))
    return tuple(out)


@dataclass(frozen=True)
class RunSpace:
    """All runs on ``n`` elements with their probabilities and costs."""

    n: int
    runs: tuple
    weights: tuple[Fraction, ...]
    comparisons: tuple[int, ...]

    def __post_init__(self):
        if not (len(self.runs) == len(self.weights) == len(self.comparisons)):
            raise ValueError("runs, weights and comparisons must be parallel")
        if len(self.runs) != catalan(self.n):
            raise ValueError(f"|Q_{self.n}| = {len(self.runs)}, expected Catalan({self.n}) = {catalan(self.n)}")
        prob_core.record_normalization(sum(self.weights, prob_core.ZERO), f"RunSpace(n={self.n})")

    def __len__(self) -> int:
        return len(self.runs)

    def __iter__(self):
        return iter(zip(self.runs, self.weights, self.comparisons))

    def check_runs(self) -> None:
        """Re-derive every run's weight and cost from the tree itself."""
        for run, w, t in self:
            d, c = _walk(run, self.n)
            if Fraction(1, d) != w or c != t:
                raise InvalidRun(f"stored weight/cost disagree for {format_run(run)}")


@lru_cache(maxsize=None)
def _cached_space(n: int) -> RunSpace:
    triples = _runs_of_size(n)
    return RunSpace(
        n=n,
        runs=tuple(r for r, _, _ in triples),
        weights=tuple(Fraction(1, d) for _, d, _ in triples),
        comparisons=tuple(t for _, _, t in triples),
    )


def enumerate_runs(n: int, cap: int = ENUM_CAP) -> RunSpace:
    """Exhaustively enumerate Q_n with its weights q_n and costs t_n."""
    _check_cap(n, cap)
    return _cached_space(n)


def expected_comparisons_by_enumeration(n: int, cap: int = ENUM_CAP) -> Fraction:
    space = enumerate_runs(n, cap)
    return sum((w * t for _, w, t in space), prob_core.ZERO)


def comparison_pmf(n: int, cap: int = ENUM_CAP) -> dict[int, Fraction]:
    """Exact distribution of the comparison count t_n, keyed by count."""
    space = enumerate_runs(n, cap)
    pmf: Counter = Counter()
    for _, w, t in space:
        pmf[t] += w
    prob_core.record_normalization(sum(pmf.values(), prob_core.ZERO), f"comparison_pmf(n={n})")
    return dict(sorted(pmf.items()))


# -- construction through the generic composition primitives ---------------

@lru_cache(maxsize=None)
def _core_space(n: int) -> prob_core.FiniteSpace:
    if n <= 1:
        return prob_core.point_mass(LEAF)
    ranks = prob_core.uniform(range(1, n + 1))
    return prob_core.conditional_compose(
        ranks, lambda i: prob_core.product(_core_space(i - 1), _core_space(n - i))
    )


def build_via_core(n: int, cap: int = ENUM_CAP) -> prob_core.FiniteSpace:
    """Q_n assembled from a uniform rank choice composed with a product of
    smaller run spaces.  Outcome labels are nested pairs ``(i, (a, b))``."""
    _check_cap(n, cap)
    return _core_space(n)


def label_to_run(label) -> Run:
    """Convert a ``build_via_core`` outcome label into a run tree."""
    if label is LEAF:
        return LEAF
    i, (a, b) = label
    return Node(i, label_to_run(a), label_to_run(b))


def same_distribution(core: prob_core.FiniteSpace, space: RunSpace) -> bool:
    """Compare a composed space and an enumerated one as sorted (run, weight) lists."""
    left = sorted((format_run(label_to_run(s)), p) for s, p in core)
    right = sorted((format_run(r), w) for r, w, _ in space)
    return left == right


# -- serialization ----------------------------------------------------------

def format_run(run: Run, bottom: str = BOTTOM) -> str:
    if run is LEAF:
        return bottom
    return f"({run.rank},{format_run(run.left, bottom)},{format_run(run.right, bottom)})"


def parse_run(text: str) -> Run:
    """Inverse of :func:`format_run`; accepts ``⊥`` or ``_`` for leaves."""
    s = "".join(text.split())
    pos = 0

    def parse():
        nonlocal pos
        if s.startswith(BOTTOM, pos) or s.startswith("_", pos):
            pos += 1
            return LEAF
        if pos >= len(s) or s[pos] != "(":
            raise InvalidRun(f"expected '(' or a leaf at offset {pos} in {text!r}")
        pos += 1
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise InvalidRun(f"expected a rank at offset {start} in {text!r}")
        rank = int(s[start:pos])
        children = []
        for _ in range(2):
            if pos >= len(s) or s[pos] != ",":
                raise InvalidRun(f"expected ',' at offset {pos} in {text!r}")
            pos += 1
            children.append(parse())
        if pos >= len(s) or s[pos] != ")":
            raise InvalidRun(f"expected ')' at offset {pos} in {text!r}")
        pos += 1
        return Node(rank, children[0], children[1])

    run = parse()
    if pos != len(s):
        raise InvalidRun(f"trailing characters in {text!r}")
    return run


def run_to_tree(run: Run) -> Union[dict, None]:
    """JSON tree form: ``{"rank", "left", "right"}`` with ``None`` for leaves."""
    if run is LEAF:
        return None
    return {"rank": run.rank, "left": run_to_tree(run.left), "right": run_to_tree(run.right)}


def run_from_tree(tree) -> Run:
    if tree is None:
        return LEAF
    try:
        return Node(tree["rank"], run_from_tree(tree["left"]), run_from_tree(tree["right"]))
    except (KeyError, TypeError):
        raise InvalidRun(f"malformed tree: {json.dumps(tree)[:80]}") from None
