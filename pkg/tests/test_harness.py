import json

import numpy as np
import pytest

from qgh.harness import (
    EvalReport,
    avalanche_test,
    collision_scan,
    config_fingerprint,
    cospectral_test,
    determinism_test,
    find_cospectral_pair,
    random_messages,
    report_emit,
    timing_profile,
    two_char_printable_corpus,
)
from qgh.pipeline import HashConfig
from qgh.spectral import eigendecompose, laplacian


def test_random_messages_reproducible():
    a = random_messages(5, 16, 7)
    b = random_messages(5, 16, 7)
    assert a == b
    assert all(len(m) == 16 for m in a)
    assert len(set(a)) == 5
    assert random_messages(5, 16, 8) != a


def test_two_char_corpus():
    corpus = two_char_printable_corpus()
    assert len(corpus) == 8836
    assert len(set(corpus)) == 8836
    assert all(len(m) == 2 and all(33 <= b <= 126 for b in m) for m in corpus)


def test_determinism_report():
    report = determinism_test(random_messages(4, 8, 1), repeats=3)
    assert report.passed
    assert report.summary["max_hamming"] == 0
    assert len(report.records) == 4 * 3  # 3 unordered pairs per message
    assert all(r["config_hash"] == report.config_hash for r in report.records)
    with pytest.raises(ValueError):
        determinism_test([b"x"], repeats=1)


def test_determinism_shot_mode_fixed_seed():
    cfg = HashConfig(mode="shots", shots=256, seed=5)
    report = determinism_test(random_messages(3, 8, 2), repeats=2, cfg=cfg)
    assert report.passed


def test_avalanche_report_one_bit():
    report = avalanche_test(random_messages(16, 16, 3), "one-bit")
    assert report.summary["min_hamming"] > 0
    assert all(r["graphs_differ"] for r in report.records)
    assert sum(report.summary["histogram"].values()) == 16


def test_avalanche_one_char():
    report = avalanche_test(random_messages(8, 16, 4), "one-char")
    assert report.summary["min_hamming"] > 0


def test_avalanche_rejects_bad_inputs():
    with pytest.raises(ValueError):
        avalanche_test([], "one-bit")
    with pytest.raises(ValueError):
        avalanche_test([b""], "one-bit")
    with pytest.raises(ValueError):
        avalanche_test([b"ok"], "two-bit")


def test_avalanche_reproducible():
    corpus = random_messages(6, 16, 9)
    r1 = avalanche_test(corpus, "one-bit")
    r2 = avalanche_test(corpus, "one-bit")
    assert r1.records == r2.records


def test_collision_scan_rejects_duplicates():
    with pytest.raises(ValueError):
        collision_scan([b"aa", b"aa"], 4)


def test_collision_scan_finds_left_right_merge_on_n2():
    # on a 2-wide torus "right" and "left" reach the same neighbor, so
    # messages differing only in that block collide at the graph level
    corpus = [bytes([0b10000000]), bytes([0b11000000])]
    report = collision_scan(corpus, 2)
    assert not report.passed
    assert report.summary["digest_collision_groups"] == 1
    assert report.summary["graph_collision_groups"] == 1
    assert report.summary["digest_collisions"][0]["stage"] == "graph"


def test_collision_scan_clean_corpus():
    corpus = [b"ab", b"cd", b"ef"]
    report = collision_scan(corpus, 4)
    assert report.passed
    assert report.summary["digest_collision_groups"] == 0


def test_collision_scan_reversal_symmetry_pair():
    # '2]' and 'vp' trace graphs related by the torus point reflection
    # i -> 15 - i; the reflected ramp state is beta*uniform - ramp and the
    # uniform part lies in the Laplacian kernel, so all positive-mode
    # overlap weights agree and the fingerprints coincide in exact
    # arithmetic: a fingerprint-stage digest collision between distinct graphs
    from qgh.pipeline import build_graph, fingerprint_message

    g1, g2 = build_graph(b"2]"), build_graph(b"vp")
    assert g1.weights != g2.weights
    reflected = {
        tuple(sorted((15 - u, 15 - v))): w for (u, v), w in g1.weights.items()
    }
    assert reflected == g2.weights
    fp_gap = np.max(np.abs(fingerprint_message(b"2]") - fingerprint_message(b"vp")))
    assert fp_gap <= 1e-12

    report = collision_scan([b"2]", b"vp"], 4)
    assert report.summary["digest_collision_groups"] == 1
    assert report.summary["graph_collision_groups"] == 0
    assert report.summary["digest_collisions"][0]["stage"] == "fingerprint"


def test_timing_profile_shape():
    report = timing_profile([64, 256], trials=3)
    assert len(report.records) == 2 * 3 * 2
    assert set(report.summary) >= {
        "walk_medians",
        "spectral_medians",
        "walk_fit_r_squared",
        "spectral_max_rel_deviation",
    }
    with pytest.raises(ValueError):
        timing_profile([], trials=3)
    with pytest.raises(ValueError):
        timing_profile([0], trials=3)


def test_cospectral_pair_properties():
    g1, g2 = find_cospectral_pair()
    assert g1.n_nodes == g2.n_nodes == 6
    assert g1.canonical_key() != g2.canonical_key()
    ev1 = eigendecompose(laplacian(g1)).eigenvalues
    ev2 = eigendecompose(laplacian(g2)).eigenvalues
    assert np.max(np.abs(ev1 - ev2)) < 1e-9


def test_cospectral_report():
    report = cospectral_test()
    assert report.passed
    assert report.summary["cospectral_within_1e-9"]
    assert report.summary["ramp_fingerprint_gap"] > 1e-6
    # with the uniform input both graphs collapse to the zero outcome
    assert report.summary["uniform_zero_outcome_1"] >= 1 - 1e-10
    assert report.summary["uniform_zero_outcome_2"] >= 1 - 1e-10
    assert report.summary["uniform_distribution_gap"] <= 1e-10


def test_report_emit_json_roundtrip():
    report = determinism_test([b"msg"], repeats=2)
    doc = json.loads(report_emit(report, "json"))
    assert doc["experiment"] == "determinism"
    assert doc["passed"] is True
    assert doc["records"] == report.records


def test_report_emit_csv():
    report = determinism_test([b"msg"], repeats=2)
    text = report_emit(report, "csv")
    lines = text.strip().split("\n")
    assert lines[0] == "message_id,repeat_i,repeat_j,hamming,config_hash"
    assert len(lines) == 2


def test_report_emit_empty_report():
    empty = EvalReport("blank", {}, ("a", "b"), [], {}, "deadbeef", True)
    assert json.loads(report_emit(empty, "json"))["records"] == []
    assert report_emit(empty, "csv") == "a,b\n"


def test_report_emit_rejects_unknown_format():
    report = EvalReport("blank", {}, (), [], {}, "deadbeef", True)
    with pytest.raises(ValueError):
        report_emit(report, "xml")


def test_config_fingerprint_distinguishes_configs():
    assert config_fingerprint(HashConfig()) != config_fingerprint(HashConfig(seed=1))
    assert config_fingerprint(HashConfig()) == config_fingerprint(HashConfig())
