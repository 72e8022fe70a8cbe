"""Deterministic random streams for reproducible property checks.

All randomized checks in this package draw from SplitMix64 so that any
run with the same seed produces bit-identical test vectors, independent
of numpy version or platform.  The generator is fully specified by its
constants:

    state      += 0x9E3779B97F4A7C15            (mod 2^64)
    z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output = z ^ (z >> 31)

Uniform doubles are output / 2^64 in [0, 1).
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Minimal 64-bit SplitMix generator with a documented algorithm."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in [0, 1)."""
        return self.next_u64() / 2.0**64

    def randint(self, low: int, high: int) -> int:
        """Uniform integer in [low, high] inclusive."""
        if high < low:
            raise ValueError("empty range")
        return low + self.next_u64() % (high - low + 1)

    def complex_components(self, n: int) -> np.ndarray:
        """n complex numbers with re, im uniform in [-1, 1)."""
        out = np.empty(n, dtype=complex)
        for j in range(n):
            re = 2.0 * self.uniform() - 1.0
            im = 2.0 * self.uniform() - 1.0
            out[j] = re + 1j * im
        return out
