"""Deterministic random number generation.

Every random draw in this package flows through :class:`SplitMix64`, so any
run is reproducible bit-for-bit from its seed, on every platform and in any
reimplementation that follows the update rule below.

splitmix64 update (all arithmetic mod 2**64):

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output = z ^ (z >> 31)

Derived draws are defined exactly in terms of ``next_u64``:

* ``next_float`` = ``(next_u64() >> 11) * 2**-53`` (a double in [0, 1)),
* ``below(n)``   = ``next_u64() % n`` (one draw, modulo reduction),
* ``shuffle``    = Fisher-Yates from the top index down, ``j = below(i + 1)``,
* ``sample``     = full shuffle of a copy, then take the first ``k`` items.

Generators document the order in which they consume draws, so external tools
can replay streams.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64 stream seeded with a 64-bit integer (wider seeds are masked)."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        """A double chosen uniformly from [0, 1), using the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def below(self, n: int) -> int:
        """An integer in [0, n). Consumes exactly one draw."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return self.next_u64() % n

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.next_float()

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle; consumes len(items) - 1 draws."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, items, k: int) -> list:
        """First k items of a shuffled copy; consumes max(len(items) - 1, 0) draws."""
        pool = list(items)
        if k > len(pool):
            raise ValueError("sample size exceeds population")
        self.shuffle(pool)
        return pool[:k]


def derive_seeds(master_seed: int, count: int) -> list[int]:
    """Per-instance seeds for a batch run: ``count`` draws from a fresh stream."""
    stream = SplitMix64(master_seed)
    return [stream.next_u64() for _ in range(count)]
