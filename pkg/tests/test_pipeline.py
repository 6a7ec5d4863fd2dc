import numpy as np
import pytest

from qgh.fingerprint import digest, hamming_distance
from qgh.pipeline import (
    HashConfig,
    build_graph,
    fingerprint_message,
    graph_fingerprint,
    hash_hex,
    hash_message,
)


def test_hash_is_deterministic():
    a = hash_message("determinism check")
    b = hash_message("determinism check")
    assert a == b
    assert hamming_distance(a, b) == 0


def test_str_and_bytes_agree():
    assert hash_message("Hi") == hash_message(b"Hi")


def test_empty_message_constant_fingerprint():
    # zero Laplacian: every heat trace is 1 up to simulator roundoff, and the
    # digest quantization absorbs that roundoff entirely
    fp = fingerprint_message("")
    assert fp == pytest.approx(np.ones(8), abs=1e-12)
    assert hash_message("") == digest(np.ones(8))


def test_hello_hella_differ():
    g1 = build_graph("Hello")
    g2 = build_graph("Hella")
    assert g1.weights != g2.weights
    assert hamming_distance(hash_message("Hello"), hash_message("Hella")) > 0


def test_hash_hex_shape():
    hx = hash_hex("Hello")
    assert len(hx) == 64 and set(hx) <= set("0123456789abcdef")


def test_config_validation():
    with pytest.raises(ValueError):
        HashConfig(grid_n=1)
    with pytest.raises(ValueError):
        HashConfig(counting_qubits=0)
    with pytest.raises(ValueError):
        HashConfig(taus=(0.1, 0.2))
    with pytest.raises(ValueError):
        HashConfig(mode="noisy")
    with pytest.raises(ValueError):
        HashConfig(evolution="cayley")
    with pytest.raises(ValueError):
        HashConfig(evolution="trotter:0")
    with pytest.raises(ValueError):
        HashConfig(input_state="node:16")  # off the 4x4 grid
    with pytest.raises(ValueError):
        HashConfig(input_state="vortex")
    with pytest.raises(ValueError):
        HashConfig(direction_map=24)
    with pytest.raises(ValueError):
        HashConfig(mode="shots", shots=0)


def test_direction_map_permutation_changes_hash():
    assert hash_message("Hi", HashConfig(direction_map=0)) != hash_message(
        "Hi", HashConfig(direction_map=5)
    )


def test_grid_size_changes_hash():
    assert hash_message("Hi", HashConfig(grid_n=4)) != hash_message("Hi", HashConfig(grid_n=5))


def test_input_state_changes_hash():
    ramp = hash_message("Hi", HashConfig(input_state="ramp"))
    node = hash_message("Hi", HashConfig(input_state="node:0"))
    assert ramp != node


def test_trotter_evolution_runs_and_converges_to_exact():
    exact_fp = fingerprint_message("Hi", HashConfig(evolution="exact"))
    coarse = fingerprint_message("Hi", HashConfig(evolution="trotter:1"))
    fine = fingerprint_message("Hi", HashConfig(evolution="trotter:256"))
    assert np.max(np.abs(fine - exact_fp)) < np.max(np.abs(coarse - exact_fp))
    assert np.max(np.abs(fine - exact_fp)) < 1e-3


def test_shots_mode_seeded_determinism():
    cfg = HashConfig(mode="shots", shots=512, seed=99)
    assert hash_message("Hello", cfg) == hash_message("Hello", cfg)


def test_shots_mode_tracks_exact_mode():
    exact_fp = fingerprint_message("Hello")
    shot_fp = fingerprint_message("Hello", HashConfig(mode="shots", shots=200_000, seed=3))
    assert np.max(np.abs(exact_fp - shot_fp)) < 0.01


def test_uniform_input_is_degenerate_for_all_messages():
    cfg = HashConfig(input_state="uniform")
    fp1 = fingerprint_message("completely different", cfg)
    fp2 = fingerprint_message("message payloads", cfg)
    assert fp1 == pytest.approx(np.ones(8), abs=1e-9)
    assert fp2 == pytest.approx(np.ones(8), abs=1e-9)


def test_graph_fingerprint_entry_point_matches_pipeline():
    g = build_graph("Hi")
    assert np.array_equal(graph_fingerprint(g), fingerprint_message("Hi"))
