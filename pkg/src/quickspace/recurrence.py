"""Expected comparison count T(n) of randomized QuickSort.

T(0) = T(1) = 0 and, for n >= 2,

    T(n) = n - 1 + (1/n) * sum_{i=1..n} (T(i-1) + T(n-i))
         = n - 1 + (2/n) * sum_{i=0..n-1} T(i)

The second (prefix-sum) form is what both evaluators use, so a table up to
``n`` costs O(n) arithmetic operations.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction

from .errors import TooLarge

EXACT_CAP = 2000
BOUND_GUARD = 1e-6

_lock = threading.Lock()
_exact = [Fraction(0), Fraction(0)]
_exact_prefix = Fraction(0)  # sum of _exact[0 .. len-1]
_float = [0.0, 0.0]
_float_prefix = 0.0


def _check(n: int, cap: int) -> None:
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n > cap:
        raise TooLarge(f"n={n} exceeds the exact cap {cap}")


def t_exact(n: int, cap: int = EXACT_CAP) -> Fraction:
    _check(n, cap)
    global _exact_prefix
    with _lock:
        while len(_exact) <= n:
            m = len(_exact)
            _exact_prefix += _exact[-1]
            _exact.append(m - 1 + Fraction(2, m) * _exact_prefix)
        return _exact[n]


def t_exact_table(n_max: int, cap: int = EXACT_CAP) -> list[Fraction]:
    """[T(0), ..., T(n_max)] exactly."""
    t_exact(n_max, cap)
    with _lock:
        return _exact[: n_max + 1]


def t_float_table(n_max: int) -> list[float]:
    """[T(0), ..., T(n_max)] in double precision."""
    if n_max < 0:
        raise ValueError(f"n must be non-negative, got {n_max}")
    global _float_prefix
    with _lock:
        while len(_float) <= n_max:
            m = len(_float)
            _float_prefix += _float[-1]
            _float.append(m - 1 + 2.0 * _float_prefix / m)
        return _float[: n_max + 1]


def t_float(n: int) -> float:
    """Floating evaluation of T(n); relative error vs. :func:`t_exact` stays below 1e-9 up to n = 2000."""
    return t_float_table(n)[n]


def bound(n: int) -> float:
    """2 n ln n, the upper bound on T(n) (0 at n = 1)."""
    return 2.0 * n * math.log(n) if n >= 1 else 0.0


def bound_check(n_max: int, guard: float = BOUND_GUARD):
    """Return the first n in 1..n_max with T(n) > 2 n ln n + guard, else None."""
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    table = t_float_table(n_max)
    for n in range(1, n_max + 1):
        if table[n] > bound(n) + guard:
            return n
    return None


def indicator_sum(n: int, cap: int = EXACT_CAP) -> Fraction:
    """Sum over rank pairs i < j of 2/(j-i+1), grouped by gap size s = j-i+1.

    There are n-s+1 pairs at size s, so the sum is sum_{s=2..n} (n-s+1)*2/s.
    """
    _check(n, cap)
    return sum((Fraction(2 * (n - s + 1), s) for s in range(2, n + 1)), Fraction(0))
