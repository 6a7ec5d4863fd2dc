#!/usr/bin/env python3
"""Run the five evaluation experiments and write all reports to one directory."""

import argparse
import sys
from pathlib import Path

from qgh import harness
from qgh.pipeline import HashConfig


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="reports")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--quick", action="store_true",
                        help="small corpora for a fast smoke run")
    args = parser.parse_args()

    cfg = HashConfig(seed=args.seed)
    n_det, n_av = (10, 20) if args.quick else (100, 1000)
    collision_corpus = harness.two_char_printable_corpus()
    if args.quick:
        collision_corpus = collision_corpus[:200]
    lengths = [100, 1000, 10_000] if args.quick else [100, 1000, 10_000, 100_000]

    runs = [
        ("determinism", lambda: harness.determinism_test(
            harness.random_messages(n_det, 16, cfg.seed), 5, cfg)),
        ("avalanche", lambda: harness.avalanche_test(
            harness.random_messages(n_av, 16, cfg.seed), "one-bit", cfg)),
        ("collision", lambda: harness.collision_scan(collision_corpus, cfg.grid_n, cfg)),
        ("timing", lambda: harness.timing_profile(lengths, 9, cfg)),
        ("cospectral", lambda: harness.cospectral_test(cfg)),
    ]

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, run in runs:
        report = run()
        path = out_dir / f"eval_{name}.{args.format}"
        path.write_text(harness.report_emit(report, args.format), encoding="utf-8")
        print(f"{name}: passed={report.passed} -> {path}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
