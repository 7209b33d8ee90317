"""Finite probability spaces over exact rationals.

Probabilities, random-variable values and expectations are all
``fractions.Fraction``; nothing in here ever touches a float.  Spaces are
built directly with :func:`make_space` or by composing existing spaces with
:func:`product` (independent experiments) and :func:`conditional_compose`
(a second experiment chosen by the outcome of the first).

Each construction re-checks that the weights sum to exactly one and records
the check in a process-wide tally, see :func:`normalization_stats`.  A
rejected user-supplied space counts as a rejected input; a space derived by
composition that fails the check counts as a violation.
"""
from __future__ import annotations

import threading
from collections.abc import Callable, Hashable, Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Any, Union

from .errors import (
    DuplicateLabel,
    EmptySpace,
    ImpossibleCell,
    ImpossibleCondition,
    MissingBranch,
    NegativeWeight,
    NotAPartition,
    NotNormalized,
    UndefinedOutcome,
    UnknownLabel,
)

Label = Hashable
RandomVar = Union[Mapping[Any, Any], Callable[[Any], Any]]

ZERO = Fraction(0)
ONE = Fraction(1)

_tally_lock = threading.Lock()
_tally = {"checks": 0, "rejected_inputs": 0, "violations": 0}


def exact(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would silently smuggle rounding into exact
    sums.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, (int, Rational, str)):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


def record_normalization(total: Fraction, context: str, derived: bool = True) -> None:
    """Tally one normalization check; raise NotNormalized if ``total != 1``.

    ``derived`` marks spaces the package computed itself, as opposed to
    weights handed in by a caller.
    """
    with _tally_lock:
        _tally["checks"] += 1
        if total != ONE:
            _tally["violations" if derived else "rejected_inputs"] += 1
    if total != ONE:
        raise NotNormalized(f"{context}: weights sum to {total}, not 1")


def normalization_stats() -> dict[str, int]:
    """Counts of checks, rejected inputs and violations since process start."""
    with _tally_lock:
        return dict(_tally)


@dataclass(frozen=True)
class FiniteSpace:
    """Outcome labels paired with exact, normalized weights.

    Use :func:`make_space` rather than calling this directly; the
    constructor validates anyway.  ``origin`` names the operation that
    built the space (``"input"`` for caller-supplied weights).
    """

    outcomes: tuple
    weights: tuple[Fraction, ...]
    origin: str = field(default="input", repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        outcomes = tuple(self.outcomes)
        weights = tuple(exact(w) for w in self.weights)
        if not outcomes:
            raise EmptySpace("a probability space needs at least one outcome")
        if len(outcomes) != len(weights):
            raise ValueError(f"{len(outcomes)} outcomes but {len(weights)} weights")
        index = {}
        for pos, label in enumerate(outcomes):
            if label in index:
                raise DuplicateLabel(f"outcome {label!r} appears twice")
            index[label] = pos
        for label, w in zip(outcomes, weights):
            if w < 0:
                raise NegativeWeight(f"outcome {label!r} has weight {w}")
        record_normalization(sum(weights, ZERO), f"FiniteSpace({self.origin})", self.origin != "input")
        object.__setattr__(self, "outcomes", outcomes)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.outcomes)

    def __iter__(self):
        return iter(zip(self.outcomes, self.weights))

    def __contains__(self, label) -> bool:
        return label in self._index

    def weight(self, label) -> Fraction:
        try:
            return self.weights[self._index[label]]
        except KeyError:
            raise UnknownLabel(f"{label!r} is not an outcome of this space") from None

    def event(self, labels: Iterable) -> frozenset:
        """Validate ``labels`` as an event of this space."""
        labels = frozenset(labels)
        for label in labels:
            if label not in self._index:
                raise UnknownLabel(f"{label!r} is not an outcome of this space")
        return labels

    def as_dict(self) -> dict:
        return dict(zip(self.outcomes, self.weights))


def make_space(outcomes: Iterable, weights: Iterable) -> FiniteSpace:
    return FiniteSpace(tuple(outcomes), tuple(weights))


def uniform(outcomes: Iterable) -> FiniteSpace:
    outcomes = tuple(outcomes)
    if not outcomes:
        raise EmptySpace("a probability space needs at least one outcome")
    w = Fraction(1, len(outcomes))
    return FiniteSpace(outcomes, (w,) * len(outcomes), origin="uniform")


def point_mass(label) -> FiniteSpace:
    return FiniteSpace((label,), (ONE,), origin="point_mass")


def prob(space: FiniteSpace, event: Iterable) -> Fraction:
    return sum((space.weight(s) for s in space.event(event)), ZERO)


def conditional_prob(space: FiniteSpace, event: Iterable, given: Iterable) -> Fraction:
    """p(A | B) = p(A ∩ B) / p(B)."""
    a = space.event(event)
    b = space.event(given)
    pb = prob(space, b)
    if pb == 0:
        raise ImpossibleCondition("conditioning event has probability 0")
    return prob(space, a & b) / pb


def product(space1: FiniteSpace, space2: FiniteSpace) -> FiniteSpace:
    """Joint space of two independent experiments; outcomes are pairs ``(a, b)``."""
    outcomes = []
    weights = []
    for a, pa in space1:
        for b, pb in space2:
            outcomes.append((a, b))
            weights.append(pa * pb)
    return FiniteSpace(tuple(outcomes), tuple(weights), origin="product")


def embed_first(space1: FiniteSpace, space2: FiniteSpace, event: Iterable) -> frozenset:
    """The cylinder ``A x S2`` inside ``product(space1, space2)``."""
    return frozenset((a, b) for a in space1.event(event) for b in space2.outcomes)


def embed_second(space1: FiniteSpace, space2: FiniteSpace, event: Iterable) -> frozenset:
    """The cylinder ``S1 x B`` inside ``product(space1, space2)``."""
    return frozenset((a, b) for a in space1.outcomes for b in space2.event(event))


def _branch_for(branch: Mapping | Callable, label):
    if callable(branch) and not isinstance(branch, Mapping):
        return branch(label)
    try:
        return branch[label]
    except KeyError:
        raise MissingBranch(f"no second experiment for base outcome {label!r}") from None


def conditional_compose(base: FiniteSpace, branch: Mapping | Callable) -> FiniteSpace:
    """Two-stage experiment: run ``base``, then ``branch[i]`` for its outcome ``i``.

    Outcomes are pairs ``(i, a)`` with ``a`` an outcome of ``branch[i]`` and
    weight ``p(i) * p_i(a)``.  ``branch`` may be a mapping or a callable.
    """
    outcomes = []
    weights = []
    for i, pi in base:
        second = _branch_for(branch, i)
        for a, pa in second:
            outcomes.append((i, a))
            weights.append(pi * pa)
    return FiniteSpace(tuple(outcomes), tuple(weights), origin="conditional_compose")


def _value(rv: RandomVar, label) -> Fraction:
    if callable(rv) and not isinstance(rv, Mapping):
        return exact(rv(label))
    try:
        return exact(rv[label])
    except KeyError:
        raise UndefinedOutcome(f"random variable undefined on {label!r}") from None


def expectation(space: FiniteSpace, rv: RandomVar) -> Fraction:
    return sum((p * _value(rv, s) for s, p in space), ZERO)


def conditional_expectation(space: FiniteSpace, rv: RandomVar, given: Iterable) -> Fraction:
    given = space.event(given)
    pa = prob(space, given)
    if pa == 0:
        raise ImpossibleCondition("conditioning event has probability 0")
    return sum((space.weight(s) * _value(rv, s) for s in given), ZERO) / pa


def check_total_expectation(space: FiniteSpace, rv: RandomVar, partition: Iterable[Iterable]) -> bool:
    """Evaluate both sides of the law of total expectation and compare them.

    ``partition`` must cover every outcome exactly once with cells of
    positive probability.
    """
    cells = [space.event(cell) for cell in partition]
    seen: set = set()
    for cell in cells:
        if seen & cell:
            raise NotAPartition("partition cells overlap")
        seen |= cell
    if len(seen) != len(space):
        raise NotAPartition(f"partition covers {len(seen)} of {len(space)} outcomes")
    total = ZERO
    for cell in cells:
        pa = prob(space, cell)
        if pa == 0:
            raise ImpossibleCell("partition cell has probability 0")
        total += pa * conditional_expectation(space, rv, cell)
    return total == expectation(space, rv)


def deferred_expectation(
    base: FiniteSpace,
    base_rv: RandomVar,
    branch: Mapping | Callable,
    branch_rvs: Mapping | Callable,
) -> Fraction:
    """E(X0) + sum_i p(i) E(X_i), cross-checked against the composed space.

    The composed space evaluates ``X(i, r) = X0(i) + X_i(r)`` directly; an
    ``AssertionError`` means the two orders of evaluation disagree.
    """
    staged = expectation(base, base_rv)
    for i, pi in base:
        staged += pi * expectation(_branch_for(branch, i), _branch_for(branch_rvs, i))

    composed = conditional_compose(base, branch)

    def combined(outcome):
        i, r = outcome
        return _value(base_rv, i) + _value(_branch_for(branch_rvs, i), r)

    joint = expectation(composed, combined)
    assert joint == staged, f"deferred decision mismatch: {joint} != {staged}"
    return staged
