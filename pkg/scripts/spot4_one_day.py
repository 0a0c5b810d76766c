"""One-day SPOT4 error curves: J2 Cowell and the first intermediary against
the full-zonal reference. Writes one CSV per method and prints the summary
numbers behind acceptance criterion 5."""

import argparse
from dataclasses import replace
from pathlib import Path

import numpy as np

from leoint import harness


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="out/spot4_day")
    ap.add_argument("--interval", type=float, default=240.0)
    args = ap.parse_args()

    scn = replace(harness.BUILTINS["spot4"], output_interval_s=args.interval)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    series = harness.run_comparison(scn, ["cowell-j2", "intermediary-1", "intermediary-2"])
    for m, s in series.items():
        harness.emit_csv(s, out / f"spot4_{m}.csv")
        print(
            f"{m:15s} max|da| {np.abs(s.da).max() * 1e3:7.2f} m"
            f"  dOmega slope {s.slope('dOmega') * 86400:+.3e} rad/day"
            f"  dF slope {s.slope('dF') * 86400:+.3e} rad/day"
        )


if __name__ == "__main__":
    main()
