"""Deterministic counter-based random streams.

Every variate is a pure function of (key, counter index), so draws never
depend on how many variates were taken before them.  Sampling loops can
therefore be chunked across threads in any schedule and still produce
bit-identical results.  The mixer is SplitMix64; the float path keeps the
top 53 bits, giving uniforms on [0, 1) that are exactly reproducible from
the scalar reference implementation.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_TWO53_INV = 2.0 ** -53


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit word."""
    z &= _MASK
    z = (z ^ (z >> 30)) * _MIX1 & _MASK
    z = (z ^ (z >> 27)) * _MIX2 & _MASK
    return z ^ (z >> 31)


class CounterStream:
    """Keyed counter stream: value(i) = mix64(key + (i+1)*GOLDEN)."""

    __slots__ = ("key",)

    def __init__(self, *parts: int):
        key = 0x243F6A8885A308D3
        for part in parts:
            key = mix64(key ^ mix64(part & _MASK))
        self.key = key

    def subkey(self, *parts: int) -> "CounterStream":
        child = CounterStream.__new__(CounterStream)
        key = self.key
        for part in parts:
            key = mix64(key ^ mix64(part & _MASK))
        child.key = key
        return child

    def u64(self, index: int) -> int:
        return mix64(self.key + (index + 1) * _GOLDEN)

    def uniform(self, index: int) -> float:
        return (self.u64(index) >> 11) * _TWO53_INV

    def uniform_block(self, count: int, offset: int = 0) -> np.ndarray:
        """Vectorized uniforms for indices offset..offset+count-1.

        Bit-identical to calling uniform() on each index.
        """
        idx = np.arange(offset + 1, offset + count + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.key) + idx * np.uint64(_GOLDEN)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
            z ^= z >> np.uint64(31)
        return (z >> np.uint64(11)).astype(np.float64) * _TWO53_INV
