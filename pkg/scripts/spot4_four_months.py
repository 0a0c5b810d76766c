"""Four-month SPOT4 run at 240 s output: long-period errors of the first and
second intermediaries. Takes about half a minute, mostly the reference."""

import argparse
from dataclasses import replace
from pathlib import Path

from leoint import harness


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="out/spot4_months")
    ap.add_argument("--days", type=float, default=120.0)
    args = ap.parse_args()

    scn = replace(harness.BUILTINS["spot4"], duration_s=args.days * 86400.0, output_interval_s=240.0)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    series = harness.run_comparison(scn, ["intermediary-1", "intermediary-2"])
    for m, s in series.items():
        harness.emit_csv(s, out / f"spot4_{m}.csv")
        env = {k: s.envelope(k) for k in ("dC", "dS", "dI")}
        print(f"{m:15s} " + "  ".join(f"ptp {k} {v:.3e}" for k, v in env.items()))


if __name__ == "__main__":
    main()
