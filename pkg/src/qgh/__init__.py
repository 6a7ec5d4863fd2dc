"""QGH-256: a spectral graph hash.

A message drives a deterministic walk on a toroidal grid; the walk's
weighted graph is summarized by the phase spectrum of its Laplacian via an
exactly simulated quantum phase estimation over a non-eigenvector input
state; multi-scale heat traces of the estimated spectrum form a fingerprint
that packs into a 256-bit digest.
"""

from .fingerprint import (
    DEFAULT_TAUS,
    digest,
    digest_hex,
    hamming_distance,
    heat_traces,
)
from .graph import WeightedGraph, graph_to_dot, graph_to_json
from .pipeline import (
    HashConfig,
    build_graph,
    fingerprint_message,
    graph_digest,
    graph_fingerprint,
    graph_phase_distribution,
    hash_hex,
    hash_message,
)
from .qpe import (
    InputState,
    QpeConfig,
    choose_evolution_time,
    inverse_qft,
    phase_to_eigenvalue,
    prepare_input_state,
    qpe_closed_form,
    qpe_statevector,
    sample_shots,
)
from .spectral import (
    Overlaps,
    SpectralDecomposition,
    eigendecompose,
    exact_heat_trace,
    laplacian,
    overlaps,
)
from .evolution import (
    EdgeTerm,
    edge_split,
    exact_unitary,
    operator_distance,
    trotter_unitary,
)
from .walk import direction_map, encode_utf8, message_bits, pad_and_block, walk

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TAUS",
    "EdgeTerm",
    "HashConfig",
    "InputState",
    "Overlaps",
    "QpeConfig",
    "SpectralDecomposition",
    "WeightedGraph",
    "build_graph",
    "choose_evolution_time",
    "digest",
    "digest_hex",
    "direction_map",
    "edge_split",
    "eigendecompose",
    "encode_utf8",
    "exact_heat_trace",
    "exact_unitary",
    "fingerprint_message",
    "graph_digest",
    "graph_fingerprint",
    "graph_phase_distribution",
    "graph_to_dot",
    "graph_to_json",
    "hamming_distance",
    "hash_hex",
    "hash_message",
    "heat_traces",
    "inverse_qft",
    "laplacian",
    "message_bits",
    "operator_distance",
    "overlaps",
    "pad_and_block",
    "phase_to_eigenvalue",
    "prepare_input_state",
    "qpe_closed_form",
    "qpe_statevector",
    "sample_shots",
    "trotter_unitary",
    "walk",
]
