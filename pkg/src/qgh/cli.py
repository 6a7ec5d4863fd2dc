"""Command-line interface.

Subcommands: hash, fingerprint, graph, qpe, eval. Only the requested
artifact goes to stdout; diagnostics go to stderr. Exit codes: 0 success,
1 runtime/IO failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness
from .fingerprint import digest_hex
from .graph import graph_to_dot, graph_to_json
from .pipeline import (
    HashConfig,
    build_graph,
    fingerprint_message,
    graph_phase_distribution,
    hash_message,
)

_CONFIG_KEYS = (
    "grid_n",
    "counting_qubits",
    "input_state",
    "evolution",
    "mode",
    "shots",
    "seed",
    "taus",
    "direction_map",
)
_EVAL_NAMES = ("determinism", "avalanche", "collision", "timing", "cospectral")


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    grp = parser.add_argument_group("pipeline configuration")
    grp.add_argument("--config", metavar="PATH", help="key=value config file; flags override it")
    grp.add_argument("--grid-n", type=int, dest="grid_n")
    grp.add_argument("-m", "--counting-qubits", type=int, dest="counting_qubits")
    grp.add_argument("--input-state", dest="input_state",
                     help="uniform | node:<idx> | ramp (default ramp)")
    grp.add_argument("--evolution", dest="evolution",
                     help="exact | trotter:<n_steps> (default exact)")
    grp.add_argument("--mode", dest="mode", help="exact | shots (default exact)")
    grp.add_argument("--shots", type=int, dest="shots")
    grp.add_argument("--seed", type=int, dest="seed")
    grp.add_argument("--taus", dest="taus",
                     help="comma-separated override of the 8 diffusion times")
    grp.add_argument("--direction-map", type=int, dest="direction_map",
                     help="block-to-direction permutation id in [0, 24)")


def _add_message_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("message", nargs="?", help="message text (UTF-8)")
    parser.add_argument("--file", metavar="PATH", help="hash the bytes of this file")
    parser.add_argument("--stdin", action="store_true", help="read message bytes from stdin")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qgh", description="Spectral graph hash (QGH-256)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_hash = sub.add_parser("hash", help="print the 64-char hex digest of a message")
    p_fp = sub.add_parser("fingerprint", help="print the 8 heat-trace values as JSON")
    p_graph = sub.add_parser("graph", help="print the walk graph as JSON (or DOT)")
    p_qpe = sub.add_parser("qpe", help="print the phase-estimation outcome distribution")
    for p in (p_hash, p_fp, p_graph, p_qpe):
        _add_message_flags(p)
        _add_config_flags(p)
    p_graph.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of JSON")

    p_eval = sub.add_parser("eval", help="run an evaluation experiment and write a report")
    p_eval.add_argument("experiment", choices=_EVAL_NAMES)
    p_eval.add_argument("--out-dir", default="reports", help="report directory (default ./reports)")
    p_eval.add_argument("--format", choices=("json", "csv"), default="json")
    p_eval.add_argument("--count", type=int, help="corpus size (determinism: 100, avalanche: 1000)")
    p_eval.add_argument("--length", type=int, default=16, help="random message length in bytes")
    p_eval.add_argument("--repeats", type=int, default=5, help="determinism repeats")
    p_eval.add_argument("--flip", choices=("one-bit", "one-char"), default="one-bit")
    p_eval.add_argument("--limit", type=int, help="truncate the collision corpus (smoke tests)")
    p_eval.add_argument("--lengths", default="100,1000,10000,100000",
                        help="timing message lengths, comma-separated")
    p_eval.add_argument("--trials", type=int, default=9, help="timing trials per length")
    _add_config_flags(p_eval)
    return parser


def _parse_config_file(path: str) -> dict:
    values: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, raw = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = raw.strip()
    return values


def _parse_taus(raw: str) -> tuple[float, ...]:
    return tuple(float(part) for part in raw.split(","))


def make_config(args: argparse.Namespace) -> HashConfig:
    """Merge config file values with flags; flags win."""
    merged: dict = {}
    if getattr(args, "config", None):
        file_values = _parse_config_file(args.config)
        for key, raw in file_values.items():
            if key in ("grid_n", "counting_qubits", "shots", "seed", "direction_map"):
                merged[key] = int(raw)
            elif key == "taus":
                merged[key] = _parse_taus(raw)
            else:
                merged[key] = raw
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = _parse_taus(value) if key == "taus" else value
    return HashConfig(**merged)


def _read_message(args: argparse.Namespace) -> bytes:
    sources = sum((args.message is not None, args.file is not None, bool(args.stdin)))
    if sources != 1:
        raise UsageError("provide exactly one of: a message argument, --file, or --stdin")
    if args.message is not None:
        return args.message.encode("utf-8")
    if args.file is not None:
        return Path(args.file).read_bytes()
    return sys.stdin.buffer.read()


class UsageError(Exception):
    pass


def _run_eval(args: argparse.Namespace, cfg: HashConfig) -> int:
    name = args.experiment
    if name == "determinism":
        count = args.count if args.count is not None else 100
        corpus = harness.random_messages(count, args.length, cfg.seed)
        report = harness.determinism_test(corpus, args.repeats, cfg)
    elif name == "avalanche":
        count = args.count if args.count is not None else 1000
        corpus = harness.random_messages(count, args.length, cfg.seed)
        report = harness.avalanche_test(corpus, args.flip, cfg)
    elif name == "collision":
        corpus = harness.two_char_printable_corpus()
        if args.limit is not None:
            corpus = corpus[: args.limit]
        report = harness.collision_scan(corpus, cfg.grid_n, cfg)
    elif name == "timing":
        lengths = [int(part) for part in args.lengths.split(",")]
        report = harness.timing_profile(lengths, args.trials, cfg)
    else:
        report = harness.cospectral_test(cfg)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"eval_{name}.{args.format}"
    path.write_text(harness.report_emit(report, args.format), encoding="utf-8")
    print(json.dumps({"experiment": name, "passed": report.passed,
                      "report": str(path), "summary_keys": sorted(report.summary)}))
    print(f"wrote {path}", file=sys.stderr)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
    except (ValueError, OSError) as exc:
        print(f"qgh: configuration error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "eval":
            return _run_eval(args, cfg)
        message = _read_message(args)
        if args.command == "hash":
            print(digest_hex(hash_message(message, cfg)))
        elif args.command == "fingerprint":
            fp = fingerprint_message(message, cfg)
            print(json.dumps([float(v) for v in fp]))
        elif args.command == "graph":
            graph = build_graph(message, cfg)
            sys.stdout.write(graph_to_dot(graph) if args.dot else graph_to_json(graph) + "\n")
        elif args.command == "qpe":
            graph = build_graph(message, cfg)
            probs, _ = graph_phase_distribution(graph, cfg)
            print(json.dumps([float(p) for p in probs]))
        return 0
    except UsageError as exc:
        print(f"qgh: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"qgh: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
