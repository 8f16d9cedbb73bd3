"""Seeded 64-bit xorshift* generator used for every random choice.

The update equations are spelled out in the README so that other
implementations can reproduce the exact same random spaces.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
MULTIPLIER = 0x2545F4914F6CDD1D


def splitmix64(x: int) -> int:
    """One splitmix64 step; used only to turn a seed into a starting state."""
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    """xorshift64*: shifts 12, 25, 27 and a final odd multiplier."""

    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK64) or 1

    def next(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * MULTIPLIER) & MASK64

    def below(self, m: int) -> int:
        """Uniform-ish integer in ``range(m)`` (plain modulo, kept for reproducibility)."""
        if m <= 0:
            raise ValueError("below() needs a positive bound")
        return self.next() % m

    def choice(self, items):
        return items[self.below(len(items))]


def stream_for(seed: int, index: int) -> XorShift64Star:
    """Independent generator for item ``index`` of a seeded stream."""
    return XorShift64Star((seed & MASK64) ^ splitmix64(index))
