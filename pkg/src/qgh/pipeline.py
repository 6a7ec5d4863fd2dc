"""End-to-end hash pipeline: message -> walk graph -> spectrum -> QPE -> digest.

`hash_message` is a pure function of (message, config): the walk is
deterministic, the eigensolver has a fixed rotation order, the simulated
phase estimation is exact, and shot sampling (when enabled) is seeded.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fingerprint as fp
from .graph import WeightedGraph
from .qpe import (
    QpeConfig,
    choose_evolution_time,
    prepare_input_state,
    qpe_statevector,
    sample_shots,
)
from .spectral import eigendecompose, laplacian
from .evolution import exact_unitary, trotter_laplacian_unitary
from .walk import direction_map, message_bits, pad_and_block, walk

START_NODE = 0  # fixed origin (row 0, col 0); required for a deterministic hash

_INPUT_STATES = ("uniform", "ramp")  # plus "node:<idx>"
_EVOLUTIONS = ("exact",)  # plus "trotter:<n_steps>"


@dataclass(frozen=True)
class HashConfig:
    """Every knob of the pipeline; defaults give the standard 256-bit hash."""

    grid_n: int = 4
    counting_qubits: int = 8
    input_state: str = "ramp"
    evolution: str = "exact"
    mode: str = "exact"
    shots: int = 1024
    seed: int = 0
    taus: tuple[float, ...] = field(default=fp.DEFAULT_TAUS)
    direction_map: int = 0

    def __post_init__(self) -> None:
        if self.grid_n < 2:
            raise ValueError("grid_n must be at least 2")
        if self.counting_qubits < 1:
            raise ValueError("counting_qubits must be at least 1")
        if self.input_state not in _INPUT_STATES and not self.input_state.startswith("node:"):
            raise ValueError(f"unknown input_state {self.input_state!r}")
        if self.input_state.startswith("node:"):
            idx = _parse_int(self.input_state[5:], "input_state node index")
            if not 0 <= idx < self.grid_n**2:
                raise ValueError(f"input_state node index {idx} outside the grid")
        if self.evolution not in _EVOLUTIONS and not self.evolution.startswith("trotter:"):
            raise ValueError(f"unknown evolution {self.evolution!r}")
        if self.evolution.startswith("trotter:"):
            steps = _parse_int(self.evolution[8:], "trotter step count")
            if steps < 1:
                raise ValueError("trotter step count must be >= 1")
        if self.mode not in ("exact", "shots"):
            raise ValueError(f"mode must be 'exact' or 'shots', got {self.mode!r}")
        if self.mode == "shots" and self.shots < 1:
            raise ValueError("shots must be >= 1 in shots mode")
        object.__setattr__(self, "taus", fp.validate_taus(self.taus))
        direction_map(self.direction_map)  # validates the permutation id

    def trotter_steps(self) -> int | None:
        if self.evolution.startswith("trotter:"):
            return int(self.evolution[8:])
        return None


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"{what} must be an integer, got {text!r}") from None


def _as_bytes(message: str | bytes) -> bytes:
    if isinstance(message, str):
        return message.encode("utf-8")
    return bytes(message)


def build_graph(message: str | bytes, cfg: HashConfig = HashConfig()) -> WeightedGraph:
    """Walk stage: encode, pad, and trace the message on the torus."""
    blocks = pad_and_block(message_bits(_as_bytes(message)))
    return walk(blocks, cfg.grid_n, direction_map(cfg.direction_map), START_NODE)


def graph_phase_distribution(
    graph: WeightedGraph, cfg: HashConfig = HashConfig()
) -> tuple[np.ndarray, float]:
    """Counting-outcome distribution and the evolution time used to get it.

    In shots mode the returned distribution is the seeded empirical
    frequency histogram rather than the exact marginal.
    """
    lap = laplacian(graph)
    t = choose_evolution_time(lap, cfg.counting_qubits)
    psi = prepare_input_state(cfg.input_state, graph.n_nodes)
    steps = cfg.trotter_steps()
    if steps is None:
        unitary = exact_unitary(eigendecompose(lap), t)
    else:
        unitary = trotter_laplacian_unitary(graph, t, steps)
    qcfg = QpeConfig(m=cfg.counting_qubits, t=t, mode=cfg.mode, shots=cfg.shots, seed=cfg.seed)
    probs = qpe_statevector(lap, psi, qcfg, unitary=unitary)
    if cfg.mode == "shots":
        counts = sample_shots(probs, cfg.shots, cfg.seed)
        probs = counts.astype(np.float64) / cfg.shots
    return probs, t


def graph_fingerprint(graph: WeightedGraph, cfg: HashConfig = HashConfig()) -> np.ndarray:
    probs, t = graph_phase_distribution(graph, cfg)
    return fp.heat_traces(probs, cfg.counting_qubits, t, cfg.taus)


def graph_digest(graph: WeightedGraph, cfg: HashConfig = HashConfig()) -> bytes:
    return fp.digest(graph_fingerprint(graph, cfg))


def fingerprint_message(message: str | bytes, cfg: HashConfig = HashConfig()) -> np.ndarray:
    return graph_fingerprint(build_graph(message, cfg), cfg)


def hash_message(message: str | bytes, cfg: HashConfig = HashConfig()) -> bytes:
    """The full 256-bit hash of a text or byte message."""
    return graph_digest(build_graph(message, cfg), cfg)


def hash_hex(message: str | bytes, cfg: HashConfig = HashConfig()) -> str:
    return fp.digest_hex(hash_message(message, cfg))
