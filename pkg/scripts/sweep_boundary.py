"""Sweep delta across the threshold and report where the periodic family
starts to produce counterexamples, next to the root of 8x^3 + 8x^2 + x - 1."""

import argparse
import time
from fractions import Fraction

from densitylab.cli import run_sweep, sweep_csv, transition
from densitylab.exact_core import format_decimal, parse_rational, zeta


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--from", dest="lo", type=parse_rational, default=Fraction(266, 1000))
    ap.add_argument("--to", dest="hi", type=parse_rational, default=Fraction(272, 1000))
    ap.add_argument("--steps", type=int, default=60)
    ap.add_argument("--n-max", type=int, default=100)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--csv", default=None, help="also write the rows here")
    args = ap.parse_args()

    start = time.perf_counter()
    rows = run_sweep(args.lo, args.hi, args.steps, args.n_max, args.jobs)
    elapsed = time.perf_counter() - start
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(sweep_csv(rows, timing=True))
    for r in rows:
        n = "-" if r.minimal_n is None else r.minimal_n
        print(f"{format_decimal(r.delta, 5)}  {n:>4}  {r.verdict}")
    z = zeta(1)
    edge = transition(rows)
    print(f"\nzeta_1 = {format_decimal(z, 9)}")
    if edge:
        lo, hi = edge
        print(f"transition between {format_decimal(lo, 5)} and {format_decimal(hi, 5)}; "
              f"offset of the first found delta from zeta_1: {format_decimal(hi - z, 6)}")
    else:
        print("no transition inside the swept range")
    print(f"{len(rows)} points in {elapsed:.1f}s")


if __name__ == "__main__":
    main()
