"""Table of c1_hat, c2_hat for the theorem-conformance grid at n_max = 16 and 32.

    python3 scripts/acceptance_table.py [--nmax 32] [--csv out.csv]
"""
import argparse
import csv
import math
import sys
import time

from gensmooth.funcspace import SpaceParams, lookup
from gensmooth.verifier import stability_probe, verify_theorem

FUNCTIONS = ("absx", "absx_pow(1.5)", "step_smooth")
PARAMS = ((1.0, 0.75), (2.0, 1.0), (math.inf, 1.2))


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--nmax", type=int, default=32)
    ap.add_argument("--csv")
    args = ap.parse_args(argv)

    rows, reports = [], []
    for fid in FUNCTIONS:
        for p, a in PARAMS:
            t0 = time.perf_counter()
            rep = verify_theorem(lookup(fid), SpaceParams(p, a), args.nmax)
            half = rep.truncated(args.nmax // 2)
            reports.append(rep)
            rows.append((fid, p, a, half.c1_hat, rep.c1_hat, half.c2_hat, rep.c2_hat, time.perf_counter() - t0))
            r = rows[-1]
            print(f"{fid:>14} p={p:<4g} a={a:<5g} c1 {r[3]:.4f} -> {r[4]:.4f}   c2 {r[5]:.4f} -> {r[6]:.4f}"
                  f"   ({r[7]:.1f}s)", flush=True)
    s = stability_probe(reports)
    print(f"min c1 = {s.min_c1:.6f}   max c2 = {s.max_c2:.6f}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["function", "p", "alpha", "c1_half", "c1", "c2_half", "c2", "seconds"])
            w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
