"""Deterministic 64-bit PRNG helpers (splitmix64 family).

The bijective finalizer doubles as the per-lane bit mixer of the digest
layout, so it lives here rather than inside the digest code.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MULT1 = 0xBF58476D1CE4E5B9
_MULT2 = 0x94D049BB133111EB


def splitmix64_mix(z: int) -> int:
    """Bijective xor-shift/multiply finalizer on 64-bit integers."""
    z &= MASK64
    z ^= z >> 30
    z = (z * _MULT1) & MASK64
    z ^= z >> 27
    z = (z * _MULT2) & MASK64
    z ^= z >> 31
    return z


def splitmix64_stream(seed: int, count: int) -> np.ndarray:
    """First `count` outputs of the splitmix64 sequence for `seed` (uint64).

    Counter-based: output i is the finalizer applied to
    seed + (i+1) * GOLDEN_GAMMA mod 2**64, so any prefix is independent of
    how many values are eventually drawn.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    idx = np.arange(1, count + 1, dtype=np.uint64)
    z = np.uint64(seed & MASK64) + idx * np.uint64(GOLDEN_GAMMA)
    z ^= z >> np.uint64(30)
    z *= np.uint64(_MULT1)
    z ^= z >> np.uint64(27)
    z *= np.uint64(_MULT2)
    z ^= z >> np.uint64(31)
    return z


def random_doubles(seed: int, count: int) -> np.ndarray:
    """`count` doubles in [0, 1) with 53-bit resolution."""
    return (splitmix64_stream(seed, count) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def random_bytes(seed: int, count: int) -> bytes:
    """`count` deterministic bytes (big-endian packing of the u64 stream)."""
    n_words = (count + 7) // 8
    words = splitmix64_stream(seed, n_words).astype(">u8")
    return words.tobytes()[:count]
