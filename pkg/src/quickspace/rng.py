"""SplitMix64 and the per-trial substream derivation.

All arithmetic is modulo 2**64.

``next()``::

    state = state + 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

``mix64(x)`` is one ``next()`` step from state ``x`` (increment, then the
finalizer above).  Trial ``k`` of a run seeded with ``seed`` starts from
state ``substream_seed(seed, k) = mix64(seed ^ mix64(k))``.

``below(m)`` draws uniformly from ``0 .. m-1`` by rejection: with
``threshold = (2**64 - m) % m``, draw ``x`` until ``x >= threshold`` and
return ``x % m``.  The accepted range has a length divisible by ``m``, so
there is no modulo bias.
"""
from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MUL1 = 0xBF58476D1CE4E5B9
MUL2 = 0x94D049BB133111EB


def _finalize(z: int) -> int:
    z = ((z ^ (z >> 30)) * MUL1) & MASK64
    z = ((z ^ (z >> 27)) * MUL2) & MASK64
    return z ^ (z >> 31)


def mix64(x: int) -> int:
    return _finalize((x + GOLDEN_GAMMA) & MASK64)


def substream_seed(seed: int, trial: int) -> int:
    return mix64((seed & MASK64) ^ mix64(trial))


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return _finalize(self.state)

    def below(self, m: int) -> int:
        if m <= 0:
            raise ValueError(f"bound must be positive, got {m}")
        threshold = ((1 << 64) - m) % m
        while True:
            x = self.next()
            if x >= threshold:
                return x % m
