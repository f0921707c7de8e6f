"""Print the threshold constants with their polynomials, exact brackets and
the sign pattern of each row's defining inequalities at a few sample deltas."""

import argparse
from fractions import Fraction

from densitylab.exact_core import (ZETA_POLYNOMIALS, format_decimal, parse_rational, zeta,
                                   zeta_bracket, zeta_row_conditions)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tol", type=parse_rational, default=Fraction(1, 10**15))
    ap.add_argument("--samples", nargs="*", type=parse_rational,
                    default=[Fraction(26, 100), Fraction(27, 100), Fraction(28, 100)])
    args = ap.parse_args()
    head = "  ".join(f"{format_decimal(d, 2):>6}" for d in args.samples)
    print(f"{'row':<4} {'polynomial':<22} {'value':<20} {'bracket width':<14} {head}")
    for i in sorted(ZETA_POLYNOMIALS):
        b = zeta_bracket(i, args.tol)
        marks = "  ".join(f"{''.join('+' if c else '-' for c in zeta_row_conditions(i, d)):>6}"
                          for d in args.samples)
        print(f"{i:<4} {str(ZETA_POLYNOMIALS[i]):<22} {format_decimal(zeta(i, args.tol), 15):<20} "
              f"{float(b.high - b.low):<14.2e} {marks}")


if __name__ == "__main__":
    main()
