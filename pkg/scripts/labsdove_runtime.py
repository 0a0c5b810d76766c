"""Runtime of RK4 Cowell (J2, 1 s step) against the intermediaries for the
labs-dove orbit over one day, across output intervals."""

import argparse
import csv
import sys
from dataclasses import replace

from leoint import harness


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--intervals", default="1,2,5,10,30,60,120,240")
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--out", help="CSV file (default: stdout)")
    args = ap.parse_args()

    scn = replace(harness.BUILTINS["labs-dove"], duration_s=86400.0)
    rows = []
    for dt in (float(x) for x in args.intervals.split(",")):
        rep = harness.bench(scn, dt, args.repeats)
        print(rep.format(), file=sys.stderr)
        rows.append([dt, rep.wall_times["cowell-j2"], rep.wall_times["intermediary-1"],
                     rep.wall_times["intermediary-2"], rep.speedup["intermediary-1"], rep.speedup["intermediary-2"]])
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["interval_s", "cowell_j2_s", "intermediary_1_s", "intermediary_2_s", "speedup_1", "speedup_2"])
    w.writerows(rows)
    if args.out:
        fh.close()


if __name__ == "__main__":
    main()
