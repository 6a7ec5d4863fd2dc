import io
import json

import pytest

from qgh.cli import main
from qgh.fingerprint import digest
from qgh.pipeline import hash_hex

import numpy as np


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_hash_is_stable_across_invocations(capsys):
    code1, out1, _ = run(capsys, "hash", "Hello")
    code2, out2, _ = run(capsys, "hash", "Hello")
    assert code1 == code2 == 0
    assert out1 == out2
    assert len(out1.strip()) == 64


def test_hash_empty_message(capsys):
    code, out, _ = run(capsys, "hash", "")
    assert code == 0
    assert out.strip() == digest(np.ones(8)).hex()


def test_hash_matches_library(capsys):
    _, out, _ = run(capsys, "hash", "Hi")
    assert out.strip() == hash_hex("Hi")


def test_hash_from_file(tmp_path, capsys):
    path = tmp_path / "msg.bin"
    path.write_bytes(b"Hi")
    code, out, _ = run(capsys, "hash", "--file", str(path))
    assert code == 0
    assert out.strip() == hash_hex("Hi")


def test_hash_from_stdin(capsys, monkeypatch):
    class FakeStdin:
        buffer = io.BytesIO(b"Hi")

    monkeypatch.setattr("sys.stdin", FakeStdin())
    code, out, _ = run(capsys, "hash", "--stdin")
    assert code == 0
    assert out.strip() == hash_hex("Hi")


def test_hash_missing_file_exits_1(capsys):
    code, out, err = run(capsys, "hash", "--file", "/nonexistent/path.bin")
    assert code == 1
    assert out == ""
    assert "qgh:" in err


def test_hash_requires_exactly_one_source(capsys):
    code, _, err = run(capsys, "hash")
    assert code == 2
    assert "exactly one" in err


def test_unknown_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["hash", "Hello", "--frobnicate"])
    assert exc.value.code == 2


def test_invalid_config_value_exits_2(capsys):
    code, _, err = run(capsys, "hash", "Hello", "--grid-n", "1")
    assert code == 2
    assert "grid_n" in err


def test_fingerprint_output(capsys):
    code, out, _ = run(capsys, "fingerprint", "Hello")
    values = json.loads(out)
    assert code == 0
    assert len(values) == 8
    assert all(0 < v <= 1 for v in values)
    assert values == sorted(values, reverse=True)


def test_graph_json_output(capsys):
    code, out, _ = run(capsys, "graph", "Hi")
    doc = json.loads(out)
    assert code == 0
    assert doc["n"] == 4
    assert sum(e["w"] for e in doc["edges"]) == 8


def test_graph_dot_output(capsys):
    code, out, _ = run(capsys, "graph", "Hi", "--dot")
    assert code == 0
    assert out.startswith("graph G {")
    assert "--" in out


def test_qpe_distribution_output(capsys):
    code, out, _ = run(capsys, "qpe", "Hi", "-m", "4")
    probs = json.loads(out)
    assert code == 0
    assert len(probs) == 16
    assert abs(sum(probs) - 1.0) < 1e-9


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg_file = tmp_path / "qgh.cfg"
    cfg_file.write_text("counting_qubits=4\nseed=9\n# comment line\n")
    _, out_file, _ = run(capsys, "qpe", "Hi", "--config", str(cfg_file))
    assert len(json.loads(out_file)) == 16
    _, out_override, _ = run(capsys, "qpe", "Hi", "--config", str(cfg_file), "-m", "5")
    assert len(json.loads(out_override)) == 32


def test_config_file_rejects_unknown_key(tmp_path, capsys):
    cfg_file = tmp_path / "qgh.cfg"
    cfg_file.write_text("qubits=4\n")
    code, _, err = run(capsys, "hash", "Hi", "--config", str(cfg_file))
    assert code == 2
    assert "qubits" in err


def test_taus_flag(capsys):
    code, out, _ = run(
        capsys, "fingerprint", "Hi", "--taus", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8"
    )
    assert code == 0
    assert len(json.loads(out)) == 8


def test_eval_determinism_writes_report(tmp_path, capsys):
    code, out, err = run(
        capsys, "eval", "determinism", "--count", "3", "--repeats", "2",
        "--out-dir", str(tmp_path),
    )
    assert code == 0
    stdout_doc = json.loads(out)
    assert stdout_doc["passed"] is True
    report = json.loads((tmp_path / "eval_determinism.json").read_text())
    assert report["experiment"] == "determinism"
    assert report["summary"]["max_hamming"] == 0


def test_eval_collision_smoke_csv(tmp_path, capsys):
    code, out, _ = run(
        capsys, "eval", "collision", "--limit", "20", "--format", "csv",
        "--out-dir", str(tmp_path),
    )
    assert code == 0
    lines = (tmp_path / "eval_collision.csv").read_text().strip().split("\n")
    assert lines[0].startswith("message_id,")
    assert len(lines) == 21
