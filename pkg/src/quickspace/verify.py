"""Named verification suites.

Each suite returns a list of :class:`Check` results.  Nothing here raises on
a failed law; a failure is a ``Check`` with ``passed=False`` and a detail
string naming the first counterexample.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import prob_core as pc
from . import recurrence, run_space, simulator, splitter
from .errors import InvalidRun, UnknownSuite

CORE_SEED = 2024
CORE_INSTANCES = 500
MC_SIZES = (10, 50, 100)
MC_TRIALS = 100_000
BOUND_SCAN = 100_000
FLOAT_TOLERANCE = 1e-9


@dataclass
class Check:
    name: str
    passed: bool
    params: dict = field(default_factory=dict)
    detail: str = ""


@dataclass
class Caps:
    n_max: int | None = None
    enum: int = run_space.ENUM_CAP
    exact: int = recurrence.EXACT_CAP
    perm: int = simulator.PERM_CAP
    bound: int = BOUND_SCAN
    trials: int = MC_TRIALS
    seed: int = simulator.DEFAULT_SEED
    instances: int = CORE_INSTANCES


def random_space(rng: random.Random, tag: str, max_size: int = 6) -> pc.FiniteSpace:
    """1..max_size outcomes, weights = random positive integers normalized."""
    size = rng.randint(1, max_size)
    raw = [rng.randint(1, 20) for _ in range(size)]
    total = sum(raw)
    return pc.make_space([f"{tag}{k}" for k in range(size)], [Fraction(r, total) for r in raw])


def random_rv(rng: random.Random, space: pc.FiniteSpace) -> dict:
    return {s: Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for s in space.outcomes}


def random_event(rng: random.Random, space: pc.FiniteSpace) -> frozenset:
    return frozenset(s for s in space.outcomes if rng.random() < 0.5)


def coin_die_example() -> Fraction:
    """Flip a coin; on heads (0 points) flip again, on tails (1 point) roll a die."""
    coin = pc.uniform(["h", "t"])
    die = pc.uniform(range(1, 7))
    x_coin = {"h": 0, "t": 1}
    return pc.deferred_expectation(
        coin, x_coin, {"h": coin, "t": die}, {"h": x_coin, "t": lambda d: d}
    )


def _first_failure(cases, predicate: Callable) -> str:
    for case in cases:
        if not predicate(case):
            return f"counterexample: {case!r}"
    return ""


def _runs_consistent(space: run_space.RunSpace) -> bool:
    try:
        space.check_runs()
    except InvalidRun:
        return False
    return True


def _check(name: str, params: dict, failure: str) -> Check:
    return Check(name, not failure, params, failure)


def core_laws(caps: Caps) -> list[Check]:
    rng = random.Random(CORE_SEED)
    k = caps.instances
    checks = []

    value = coin_die_example()
    checks.append(_check("deferred decision: coin/die example = 10/4", {},
                         "" if value == Fraction(10, 4) else f"got {value}"))

    failure = ""
    for trial in range(k):
        s1, s2 = random_space(rng, "a"), random_space(rng, "b")
        a, b = random_event(rng, s1), random_event(rng, s2)
        joint = pc.product(s1, s2)
        e1, e2 = pc.embed_first(s1, s2, a), pc.embed_second(s1, s2, b)
        if not (pc.prob(joint, e1) == pc.prob(s1, a)
                and pc.prob(joint, e2) == pc.prob(s2, b)
                and pc.prob(joint, e1 & e2) == pc.prob(s1, a) * pc.prob(s2, b)):
            failure = f"instance {trial}"
            break
    checks.append(_check("product space: embedded events independent", {"instances": k}, failure))

    failure = ""
    for trial in range(k):
        s1, s2 = random_space(rng, "a"), random_space(rng, "b")
        x1, x2 = random_rv(rng, s1), random_rv(rng, s2)
        joint = pc.product(s1, s2)
        lhs = pc.expectation(joint, lambda ab: x1[ab[0]] + x2[ab[1]])
        if lhs != pc.expectation(s1, x1) + pc.expectation(s2, x2):
            failure = f"instance {trial}"
            break
    checks.append(_check("product space: expectation of sum is additive", {"instances": k}, failure))

    failure = ""
    for trial in range(k):
        base = random_space(rng, "i")
        branch = {i: random_space(rng, f"{i}.") for i in base.outcomes}
        composed = pc.conditional_compose(base, branch)
        i = rng.choice(base.outcomes)
        a = random_event(rng, branch[i])
        first = frozenset(o for o in composed.outcomes if o[0] == i)
        second = frozenset((i, r) for r in a)
        if not (pc.prob(composed, first) == base.weight(i)
                and pc.prob(composed, second) == base.weight(i) * pc.prob(branch[i], a)
                and pc.conditional_prob(composed, second, first) == pc.prob(branch[i], a)):
            failure = f"instance {trial}"
            break
    checks.append(_check("conditional composition: q(e2(A) | e1(i)) = p_i(A)", {"instances": k}, failure))

    failure = ""
    for trial in range(k):
        base = random_space(rng, "i")
        branch = {i: random_space(rng, f"{i}.") for i in base.outcomes}
        rvs = {i: random_rv(rng, branch[i]) for i in base.outcomes}
        try:
            pc.deferred_expectation(base, random_rv(rng, base), branch, rvs)
        except AssertionError as exc:
            failure = f"instance {trial}: {exc}"
            break
    checks.append(_check("deferred decision: both evaluation orders agree", {"instances": k}, failure))

    failure = ""
    for trial in range(k):
        space = random_space(rng, "s")
        rv = random_rv(rng, space)
        labels = list(space.outcomes)
        rng.shuffle(labels)
        cuts = sorted(rng.sample(range(1, len(labels)), rng.randint(0, len(labels) - 1)))
        cells = [labels[lo:hi] for lo, hi in zip([0] + cuts, cuts + [len(labels)])]
        if not pc.check_total_expectation(space, rv, cells):
            failure = f"instance {trial}"
            break
    checks.append(_check("law of total expectation", {"instances": k}, failure))
    return checks


def space(caps: Caps) -> list[Check]:
    top = min(caps.enum, caps.n_max if caps.n_max is not None else caps.enum)
    checks = []

    q2, q3 = run_space.enumerate_runs(2, caps.enum), run_space.enumerate_runs(3, caps.enum)
    golden = (
        [run_space.format_run(r) for r in q2.runs] == ["(1,⊥,⊥)", "(2,⊥,⊥)"]
        and list(q2.weights) == [Fraction(1, 2)] * 2 and list(q2.comparisons) == [1, 1]
        and [run_space.format_run(r) for r in q3.runs]
        == ["(1,⊥,(1,⊥,⊥))", "(1,⊥,(2,⊥,⊥))", "(2,⊥,⊥)", "(3,(1,⊥,⊥),⊥)", "(3,(2,⊥,⊥),⊥)"]
        and list(q3.weights) == [Fraction(1, 6), Fraction(1, 6), Fraction(1, 3), Fraction(1, 6), Fraction(1, 6)]
        and list(q3.comparisons) == [3, 3, 2, 3, 3]
    )
    checks.append(_check("Q_2 and Q_3 match the worked example", {}, "" if golden else "mismatch"))

    ns = range(top + 1)
    checks.append(_check(
        "|Q_n| = Catalan(n) and weights sum to 1", {"n_max": top},
        _first_failure(ns, lambda n: len(run_space.enumerate_runs(n, caps.enum)) == run_space.catalan(n)
                       and sum(run_space.enumerate_runs(n, caps.enum).weights) == 1),
    ))
    checks.append(_check(
        "every enumerated run is valid with consistent weight and cost", {"n_max": top},
        _first_failure(ns, lambda n: _runs_consistent(run_space.enumerate_runs(n, caps.enum))),
    ))
    checks.append(_check(
        "E(t_n) by enumeration = T(n) from the recurrence", {"n_max": top},
        _first_failure(ns, lambda n: run_space.expected_comparisons_by_enumeration(n, caps.enum)
                       == recurrence.t_exact(n, caps.exact)),
    ))
    core_top = min(top, 8)
    checks.append(_check(
        "Q_n built by composition = Q_n enumerated", {"n_max": core_top},
        _first_failure(range(core_top + 1), lambda n: run_space.same_distribution(
            run_space.build_via_core(n, caps.enum), run_space.enumerate_runs(n, caps.enum))),
    ))
    return checks


def recurrence_suite(caps: Caps) -> list[Check]:
    top = caps.exact if caps.n_max is None else min(caps.n_max, caps.exact)
    exact = recurrence.t_exact_table(top, caps.exact)
    floats = recurrence.t_float_table(top)
    checks = [
        _check("indicator sum = T(n)", {"n_max": min(top, 500)},
               _first_failure(range(min(top, 500) + 1),
                              lambda n: recurrence.indicator_sum(n, caps.exact) == exact[n])),
        _check("float evaluator within 1e-9 relative of exact", {"n_max": top},
               _first_failure(range(top + 1), lambda n: abs(floats[n] - float(exact[n]))
                              / max(1.0, float(exact[n])) <= FLOAT_TOLERANCE)),
        _check("T(n+1) > T(n) for n >= 2", {"n_max": top},
               _first_failure(range(2, top), lambda n: exact[n + 1] > exact[n])),
    ]
    violation = recurrence.bound_check(caps.bound)
    checks.append(Check("T(n) <= 2 n ln n", violation is None, {"n_max": caps.bound, "guard": recurrence.BOUND_GUARD},
                        "" if violation is None else f"violated at n={violation}"))
    return checks


def splitter_suite(caps: Caps) -> list[Check]:
    top = min(caps.enum, caps.n_max if caps.n_max is not None else 8)
    triples = [(n, i, j, q) for n in range(1, top + 1) for i in range(1, n + 1)
               for j in range(i, n + 1) for q in range(i, j + 1)]

    def prob_of(t):
        n, i, j, q = t
        return splitter.splitter_prob_exact(n, splitter.RankInterval(n, i, j), q, caps.enum)

    by_size: dict[int, set] = {}
    for t in triples:
        by_size.setdefault(t[2] - t[1] + 1, set()).add(prob_of(t))
    return [
        _check("first splitter in [i,j] is uniform: 1/(j-i+1)", {"n_max": top, "triples": len(triples)},
               _first_failure(triples, lambda t: prob_of(t) == Fraction(1, t[2] - t[1] + 1))),
        _check("splitter probability depends only on the interval size", {"n_max": top},
               _first_failure(sorted(by_size.items()), lambda kv: len(kv[1]) == 1)),
        _check("every interval is split", {"n_max": top},
               _first_failure([(n, i, j) for n in range(1, top + 1) for i in range(1, n + 1) for j in range(i, n + 1)],
                              lambda t: sum(splitter.first_splitter_distribution(
                                  splitter.RankInterval(*t), caps.enum).values()) == 1)),
        _check("sum of pairwise comparison probabilities = T(n)", {"n_max": top},
               _first_failure(range(1, top + 1), lambda n: sum(
                   (splitter.compare_prob_exact(n, i, j, caps.enum)
                    for i in range(1, n + 1) for j in range(i + 1, n + 1)), Fraction(0))
                   == recurrence.t_exact(n, caps.exact))),
    ]


def simulator_suite(caps: Caps) -> list[Check]:
    perm_top = caps.perm if caps.n_max is None else min(caps.n_max, caps.perm)
    pmf_top = min(perm_top, caps.enum, 7)
    checks = [
        _check("first-element QuickSort over all permutations: mean = T(n)", {"n_max": perm_top},
               _first_failure(range(perm_top + 1), lambda n: simulator.permutation_expectation_exact(n, caps.perm)
                              == recurrence.t_exact(n, caps.exact))),
        _check("first-element QuickSort cost distribution = t_n distribution", {"n_max": pmf_top},
               _first_failure(range(pmf_top + 1), lambda n: simulator.deterministic_pmf(n, caps.perm)
                              == run_space.comparison_pmf(n, caps.enum))),
    ]
    for n in MC_SIZES:
        counts = simulator.monte_carlo_counts(n, caps.trials, caps.seed)
        report = simulator.report_from_counts(n, caps.seed, counts)
        again = simulator.monte_carlo(n, caps.trials, caps.seed)
        reference = recurrence.t_float(n)
        ok = abs(report.mean - reference) <= 3 * report.stderr
        checks.append(Check(
            f"Monte Carlo mean within 3 stderr of T({n})", ok,
            {"n": n, "trials": caps.trials, "seed": caps.seed},
            f"mean={report.mean!r} T={reference!r} stderr={report.stderr!r}",
        ))
        checks.append(_check(f"Monte Carlo report reproducible (n={n})", {"n": n, "seed": caps.seed},
                             "" if again == report else "reports differ"))
        if n <= caps.enum:
            support = run_space.comparison_pmf(n, caps.enum)
            lo, hi = min(support), n * (n - 1) // 2
            checks.append(_check(f"Monte Carlo counts within support (n={n})", {"n": n},
                                 _first_failure(counts, lambda c: lo <= c <= hi)))
    return checks


SUITES: dict[str, Callable[[Caps], list[Check]]] = {
    "core-laws": core_laws,
    "space": space,
    "recurrence": recurrence_suite,
    "splitter": splitter_suite,
    "simulator": simulator_suite,
}


def run_suite(name: str, caps: Caps | None = None) -> list[Check]:
    caps = caps or Caps()
    if name == "all":
        return [c for suite in SUITES.values() for c in suite(caps)]
    try:
        suite = SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join([*SUITES, 'all'])}") from None
    return suite(caps)
