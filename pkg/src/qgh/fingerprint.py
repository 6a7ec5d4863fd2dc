"""Multi-scale heat-trace fingerprint and the 256-bit digest layout."""

from __future__ import annotations

import numpy as np

from .qpe import phase_to_eigenvalue
from .rng import splitmix64_mix

# Eight log-spaced diffusion times: 0.05 * 2^(i-1) for i = 1..8. Eight lanes
# of 32 bits fill the 256-bit digest exactly, with no classical compression
# hash on top.
DEFAULT_TAUS: tuple[float, ...] = tuple(0.05 * 2.0**i for i in range(8))
FINGERPRINT_SIZE = 8
DIGEST_BYTES = 32


def validate_taus(taus: tuple[float, ...]) -> tuple[float, ...]:
    """Check the diffusion-time schedule: exactly 8 positive, strictly increasing."""
    taus = tuple(float(x) for x in taus)
    if len(taus) != FINGERPRINT_SIZE:
        raise ValueError(f"tau schedule must have exactly {FINGERPRINT_SIZE} entries")
    if any(x <= 0 for x in taus):
        raise ValueError("tau values must be positive")
    if any(b <= a for a, b in zip(taus, taus[1:])):
        raise ValueError("tau values must be strictly increasing")
    return taus


def heat_traces(
    probs: np.ndarray, m: int, t: float, taus: tuple[float, ...] = DEFAULT_TAUS
) -> np.ndarray:
    """Fingerprint vector h_i = sum_y P[y] * exp(-tau_i * lambda(y)).

    lambda(y) is the eigenvalue estimate for counting outcome y. Since all
    estimates are nonnegative and P is a distribution, each h_i lies in
    (0, 1] and the vector is non-increasing across the tau schedule.
    """
    probs = np.asarray(probs, dtype=np.float64)
    if probs.shape != (2**m,):
        raise ValueError(f"distribution has {probs.shape} entries, expected 2^{m}")
    taus = validate_taus(taus)
    lam = phase_to_eigenvalue(np.arange(2**m), m, t)
    return np.exp(-np.outer(taus, lam)) @ probs


def digest(fingerprint: np.ndarray) -> bytes:
    """Pack a fingerprint into 32 bytes with a fixed, bit-exact layout.

    Lane i quantizes h_i to q_i = min(floor(h_i * 2^32), 2^32 - 1), forms the
    64-bit word (i << 32) | q_i, passes it through the bijective splitmix64
    finalizer, and emits the low 32 bits big-endian. Raw heat traces have
    strongly correlated high bits (h near 1 at small tau); the per-lane mixer
    spreads them over the full lane without adding a cryptographic primitive.
    Distinct quantized fingerprints give distinct digests because the
    finalizer is a bijection applied to lanes that already differ.
    """
    fingerprint = np.asarray(fingerprint, dtype=np.float64)
    if fingerprint.shape != (FINGERPRINT_SIZE,):
        raise ValueError(f"fingerprint must have {FINGERPRINT_SIZE} entries")
    if np.any(fingerprint <= 0.0) or np.any(fingerprint > 1.0):
        raise ValueError("fingerprint entries must lie in (0, 1]")
    out = bytearray()
    for i, h in enumerate(fingerprint):
        q = min(int(h * 2**32), 2**32 - 1)
        word = (i << 32) | q
        mixed = splitmix64_mix(word)
        out += (mixed & 0xFFFFFFFF).to_bytes(4, "big")
    return bytes(out)


def digest_hex(raw: bytes) -> str:
    """Lowercase hex rendering (64 characters)."""
    if len(raw) != DIGEST_BYTES:
        raise ValueError("digest must be 32 bytes")
    return raw.hex()


def hamming_distance(a: bytes, b: bytes) -> int:
    """Number of differing bits between two 32-byte digests."""
    if len(a) != DIGEST_BYTES or len(b) != DIGEST_BYTES:
        raise ValueError("digests must be 32 bytes")
    return (int.from_bytes(a, "big") ^ int.from_bytes(b, "big")).bit_count()
