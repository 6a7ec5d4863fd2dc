"""Message encoding and the message-driven walk on an n x n toroidal grid.

A message is expanded to bits, grouped into 2-bit blocks, and each block
moves a walker one step on the torus. Edge weights count traversals, so the
walk of a message is a weighted graph. Everything here is a pure function
of its inputs.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .graph import WeightedGraph

# Block values 0..3 (bit pairs 00, 01, 10, 11) map to these directions by
# default; any of the 24 bijections is selectable by permutation id.
DIRECTIONS = ("down", "up", "right", "left")
_STEP = {"down": (1, 0), "up": (-1, 0), "right": (0, 1), "left": (0, -1)}
_PERMS = tuple(permutations(DIRECTIONS))


def direction_map(perm_id: int = 0) -> tuple[str, str, str, str]:
    """One of the 24 block-to-direction bijections; id 0 is the default map."""
    if not 0 <= perm_id < len(_PERMS):
        raise ValueError(f"direction-map permutation id must be in [0, 24), got {perm_id}")
    return _PERMS[perm_id]


def message_bits(data: bytes) -> np.ndarray:
    """Big-endian bit expansion of a byte string (uint8 array of 0/1)."""
    return np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8))


def encode_utf8(message: str) -> np.ndarray:
    """Bits of the UTF-8 encoding of a text message, in byte order."""
    return message_bits(message.encode("utf-8"))


def pad_and_block(bits: np.ndarray) -> np.ndarray:
    """Group a bit sequence into 2-bit blocks, padding one 0 if the length is odd.

    Block value is (first bit)*2 + (second bit), i.e. blocks read big-endian.
    """
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.ndim != 1:
        raise ValueError("bits must be one-dimensional")
    if len(bits) % 2:
        bits = np.append(bits, np.uint8(0))
    return bits[0::2] * 2 + bits[1::2]


def walk(
    blocks: np.ndarray,
    n: int,
    dmap: tuple[str, str, str, str] = DIRECTIONS,
    start: int = 0,
) -> WeightedGraph:
    """Trace the block sequence on the n x n torus and count edge traversals.

    Rows and columns advance modulo n: "up" decrements the row, "down"
    increments it, "right"/"left" step the column. Node index is
    row * n + col. Each traversal increments the weight of the undirected
    edge between the old and new position.
    """
    if n < 2:
        raise ValueError("grid side must be at least 2 (n = 1 would force self-loops)")
    if sorted(dmap) != sorted(DIRECTIONS):
        raise ValueError(f"direction map must be a bijection onto {DIRECTIONS}")
    n_nodes = n * n
    if not 0 <= start < n_nodes:
        raise ValueError(f"start node {start} outside [0, {n_nodes})")

    blocks = np.asarray(blocks, dtype=np.int64)
    if blocks.size == 0:
        return WeightedGraph(n_nodes, {})
    if blocks.min() < 0 or blocks.max() > 3:
        raise ValueError("blocks must be 2-bit values")

    dr = np.array([_STEP[d][0] for d in dmap], dtype=np.int64)[blocks]
    dc = np.array([_STEP[d][1] for d in dmap], dtype=np.int64)[blocks]
    rows = (start // n + np.cumsum(dr)) % n
    cols = (start % n + np.cumsum(dc)) % n
    pos = np.concatenate(([start], rows * n + cols))

    u, v = pos[:-1], pos[1:]
    lo, hi = np.minimum(u, v), np.maximum(u, v)
    keys, counts = np.unique(lo * n_nodes + hi, return_counts=True)
    weights = {
        (int(k) // n_nodes, int(k) % n_nodes): int(c) for k, c in zip(keys, counts)
    }
    return WeightedGraph(n_nodes, weights)


def end_position(
    blocks: np.ndarray,
    n: int,
    dmap: tuple[str, str, str, str] = DIRECTIONS,
    start: int = 0,
) -> int:
    """Final walker position (the graph alone does not determine it)."""
    blocks = np.asarray(blocks, dtype=np.int64)
    if blocks.size == 0:
        return start
    dr = np.array([_STEP[d][0] for d in dmap], dtype=np.int64)[blocks]
    dc = np.array([_STEP[d][1] for d in dmap], dtype=np.int64)[blocks]
    row = (start // n + int(dr.sum())) % n
    col = (start % n + int(dc.sum())) % n
    return row * n + col
