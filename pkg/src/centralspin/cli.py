"""Command-line entry point.

Two modes:

``centralspin run SCENARIO [--override KEY=VALUE ...] [--jobs N]``
    Run one scenario file and write its CSV report.

``centralspin --check [--override KEY=VALUE ...]``
    Run the oracle cross-check suite with default settings (overridable)
    and write its report.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 tolerance
failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .scenarios import (
    RunResult,
    ScenarioError,
    build_scenario,
    parse_overrides,
    parse_scenario_file,
    run_scenario,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="centralspin",
        description=(
            "Exact reduced dynamics of central spins in an XY bath: "
            "Fisher-information entanglement witnesses, cavity difference "
            "ratios, and oracle cross-checks, driven by scenario files."
        ),
    )
    parser.add_argument(
        "--check",
        action="store_true",
        help="run the oracle cross-check suite instead of a scenario file",
    )
    parser.add_argument(
        "--override",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a scenario key (repeatable; later values win)",
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=1,
        metavar="N",
        help="worker threads for scan kinds (default 1; output order is "
        "independent of N)",
    )
    parser.add_argument(
        "command",
        nargs="?",
        choices=["run"],
        help="'run' executes the scenario file given next",
    )
    parser.add_argument(
        "scenario",
        nargs="?",
        metavar="FILE",
        help="scenario file for 'run'",
    )
    return parser


def _summarize(result: RunResult) -> None:
    if result.kind == "oracle-check":
        for row in result.rows:
            name, draws, deviation, tolerance, status = row
            print(f"  {status:4s}  {name}: max deviation {deviation:.3e} "
                  f"(tolerance {tolerance:.1e}, {draws} draws)")
    print(f"{result.kind}: wrote {len(result.rows)} rows to {result.path}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.check == (args.command == "run"):
        parser.error("expected exactly one of 'run FILE' or '--check'")
    if args.command == "run" and args.scenario is None:
        parser.error("'run' requires a scenario file")
    if args.jobs < 1:
        parser.error("--jobs must be a positive integer")

    try:
        overrides = parse_overrides(args.override)
        if args.check:
            raw = {"kind": "oracle-check"}
        else:
            raw = parse_scenario_file(args.scenario)
        scenario = build_scenario(raw, overrides)
        result = run_scenario(scenario, jobs=args.jobs)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    _summarize(result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
