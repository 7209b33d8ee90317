"""Compiled Monte Carlo kernel.

Same generator, same rejection sampling, same stable partition and the same
depth-first order as :func:`quickspace.simulator.trial_counts`, so the two
produce identical counts for identical (n, seed, trial range).
"""
from __future__ import annotations

import numpy as np
from numba import njit

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)


@njit(cache=True, inline="always")
def _finalize(z):
    z = (z ^ (z >> np.uint64(30))) * _MUL1
    z = (z ^ (z >> np.uint64(27))) * _MUL2
    return z ^ (z >> np.uint64(31))


@njit(cache=True, inline="always")
def _mix64(x):
    return _finalize(x + _GAMMA)


@njit(cache=True)
def _trial(values, buf, stack, state):
    # values holds the input in its current order; partitions are stable and
    # in place over [lo, hi).  stack holds pending (lo, hi) pairs.
    count = 0
    top = 0
    stack[0, 0] = 0
    stack[0, 1] = values.shape[0]
    top = 1
    while top > 0:
        top -= 1
        lo = stack[top, 0]
        hi = stack[top, 1]
        m = hi - lo
        if m <= 1:
            continue
        mu = np.uint64(m)
        threshold = (np.uint64(0) - mu) % mu
        while True:
            state = state + _GAMMA
            x = _finalize(state)
            if x >= threshold:
                break
        k = np.int64(x % mu)
        splitter = values[lo + k]
        nsmall = 0
        nlarge = 0
        for p in range(lo, hi):
            if p == lo + k:
                continue
            v = values[p]
            count += 1
            if v < splitter:
                values[lo + nsmall] = v
                nsmall += 1
            else:
                buf[nlarge] = v
                nlarge += 1
        values[lo + nsmall] = splitter
        for p in range(nlarge):
            values[lo + nsmall + 1 + p] = buf[p]
        # larger side pushed first so the smaller side runs first
        stack[top, 0] = lo + nsmall + 1
        stack[top, 1] = hi
        top += 1
        stack[top, 0] = lo
        stack[top, 1] = lo + nsmall
        top += 1
    return count


@njit(cache=True)
def trial_counts(n, seed, start, stop):
    out = np.empty(stop - start, dtype=np.int64)
    values = np.empty(n, dtype=np.int64)
    buf = np.empty(max(n, 1), dtype=np.int64)
    stack = np.empty((n + 2, 2), dtype=np.int64)
    s = np.uint64(seed)
    for t in range(start, stop):
        for p in range(n):
            values[p] = p + 1
        state = _mix64(s ^ _mix64(np.uint64(t)))
        out[t - start] = _trial(values, buf, stack, state)
    return out
