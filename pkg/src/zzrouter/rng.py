"""Deterministic pseudo-random number generation.

Every piece of randomness in this package flows through :class:`SplitMix64`,
implemented here in plain integer arithmetic so that a fixed seed yields a
bit-identical stream on every platform and Python version.  The stdlib
``random`` module is deliberately avoided: its distribution helpers are not
guaranteed stable across versions, which would silently break golden files
and benchmark reproducibility.
"""

from __future__ import annotations

from typing import MutableSequence, Sequence, TypeVar

PRNG_NAME = "splitmix64"
PRNG_VERSION = 1

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

T = TypeVar("T")


class SplitMix64:
    """SplitMix64 generator (Steele, Lea & Flood, 2014).

    64-bit state, 64-bit output, period 2^64.  Not cryptographic; plenty for
    seeding benchmark instances and breaking router ties.
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_uint64() >> 11) * (2.0 ** -53)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n), bias-free via rejection sampling."""
        if n <= 0:
            raise ValueError("randrange() bound must be positive")
        limit = ((1 << 64) // n) * n
        while True:
            x = self.next_uint64()
            if x < limit:
                return x % n

    def shuffle(self, seq: MutableSequence[T]) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.randrange(i + 1)
            seq[i], seq[j] = seq[j], seq[i]

    def choice(self, seq: Sequence[T]) -> T:
        if not seq:
            raise IndexError("cannot choose from an empty sequence")
        return seq[self.randrange(len(seq))]
