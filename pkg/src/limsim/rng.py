"""Seeded random number generation for portable, reproducible run contents.

The generator is splitmix64; row contents are built by concatenating 64-bit
draws big-endian and reducing modulo 2^width.  The exact algorithm is
documented in docs/formats.md so other implementations can reproduce traces
bit for bit.
"""

from __future__ import annotations

from typing import Sequence

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64 with the standard increment and mixing constants."""

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_below(self, bound: int) -> int:
        """Uniform draw in [0, bound) by masked rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        mask = (1 << (bound - 1).bit_length()) - 1 if bound > 1 else 0
        while True:
            v = self.next_u64() & mask
            if v < bound:
                return v


def random_row_value(rng: SplitMix64, width: int) -> int:
    """Packed row content: big-endian chunk concatenation mod 2^width."""
    if width < 1:
        raise ValueError("width must be positive")
    chunks = (width + 63) // 64
    acc = 0
    for _ in range(chunks):
        acc = (acc << 64) | rng.next_u64()
    return acc & ((1 << width) - 1)


def random_row_values(rng: SplitMix64, rows: int, width: int) -> list[int]:
    return [random_row_value(rng, width) for _ in range(rows)]
