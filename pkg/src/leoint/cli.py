"""Command-line entry point: ``leoint propagate | compare | bench``."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from . import harness


def _scenario(args) -> harness.Scenario:
    scn = harness.load_scenario(args.scenario)
    scn = replace(scn, geo=harness.geo_from_env(scn.geo))
    over = {}
    if getattr(args, "duration", None) is not None:
        over["duration_s"] = args.duration
    if getattr(args, "interval", None) is not None:
        over["output_interval_s"] = args.interval
    if getattr(args, "steps", None) is not None:
        over["steps"] = args.steps
    return replace(scn, **over) if over else scn


def cmd_propagate(args) -> int:
    scn = _scenario(args)
    eph = harness.run_method(scn, args.method)
    harness.emit_csv(eph, args.out)
    print(f"{args.method}: {len(eph)} states -> {args.out}")
    return 0


def cmd_compare(args) -> int:
    scn = _scenario(args)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    series = harness.run_comparison(scn, methods)
    for m, s in series.items():
        path = out / f"{scn.name}_{m}.csv"
        harness.emit_csv(s, path)
        print(
            f"{m:15s} max|da| {abs(s.da).max() * 1e3:9.3f} m  ptp dC {s.envelope('dC'):.3e}"
            f"  ptp dS {s.envelope('dS'):.3e}  -> {path}"
        )
    return 0


def cmd_bench(args) -> int:
    scn = _scenario(args)
    report = harness.bench(scn, scn.output_interval_s, args.repeats, steps=scn.steps)
    print(report.format())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="leoint", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--scenario", required=True, help="built-in name or scenario file")
        p.add_argument("--duration", type=float, help="propagation span (s)")
        p.add_argument("--interval", type=float, help="output interval (s)")
        p.add_argument("--steps", type=int, help="split the span into this many intervals instead")

    p = sub.add_parser("propagate", help="write one method's ephemeris as CSV")
    common(p)
    p.add_argument("--method", required=True, choices=(*harness.METHODS, "reference"))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("compare", help="write error series against the full-zonal reference")
    common(p)
    p.add_argument("--methods", default=",".join(harness.METHODS))
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bench", help="runtime of RK4 Cowell vs the intermediaries")
    common(p)
    p.add_argument("--repeats", type=int, default=5)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (harness.ScenarioError, harness.ComparisonError, ValueError, OSError) as exc:
        print(f"leoint: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
