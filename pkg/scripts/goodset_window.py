"""Scan delta and report, for the three-interval good-set generator, whether
the family parameters are valid, whether condition (i) holds, and how the
generator measure compares with 4d^2/(1-2d) and with the lower-bound constant."""

import argparse
from fractions import Fraction

from densitylab.bounds import lower_bound_constant
from densitylab.constructions import good_set_example, kurka_params
from densitylab.exact_core import format_decimal, parse_rational
from densitylab.periodic import check_good_i, check_good_ii_bounded, default_cuts


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--from", dest="lo", type=parse_rational, default=Fraction(26, 100))
    ap.add_argument("--to", dest="hi", type=parse_rational, default=Fraction(32, 100))
    ap.add_argument("--steps", type=int, default=24)
    ap.add_argument("--cuts", action="store_true", help="also run the one-period cut grid")
    args = ap.parse_args()
    print("delta    valid  cond(i)  cond(ii)  lambda(G)   4d^2/(1-2d)  c(d)")
    for i in range(args.steps + 1):
        d = args.lo + (args.hi - args.lo) * i / args.steps
        p = kurka_params(d)
        if p.alpha <= 0:
            print(f"{format_decimal(d, 4)}   alpha <= 0, no generator")
            continue
        P = good_set_example(d)
        ok_i = check_good_i(P, d).passed
        ok_ii = "-"
        if args.cuts:
            ok_ii = str(check_good_ii_bounded(P, d, default_cuts(P, periods=1)).passed)
        print(f"{format_decimal(d, 4)}   {str(p.valid):<5}  {str(ok_i):<7}  {ok_ii:<8}  "
              f"{format_decimal(P.measure_G, 6)}    {format_decimal(4 * d * d / (1 - 2 * d), 6)}"
              f"       {format_decimal(lower_bound_constant(d), 6)}")


if __name__ == "__main__":
    main()
