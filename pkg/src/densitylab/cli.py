"""Command line interface: ``densitylab <command> ...``.

Commands: roots, construct, verify, profile, sweep, goodset, oracle.
Rationals are accepted as "num/den", integers or decimal literals.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool
from typing import Optional, Sequence

from .exact_core import (PRIOR_POLYNOMIALS, ZETA_POLYNOMIALS, default_tol, format_decimal,
                         format_rational, parse_rational, prior_root, zeta)
from .intervals import Configuration, dumps_set, loads_set

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r} ({exc})")


def _read_config(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return loads_set(fh.read())
    except (OSError, ValueError, ZeroDivisionError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _write(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# roots


def cmd_roots(args) -> int:
    tol = args.tol if args.tol is not None else default_tol()
    digits = max(6, len(str(tol.denominator)) - 1)
    rows = [(f"zeta_{i}", str(ZETA_POLYNOMIALS[i]), zeta(i, tol)) for i in sorted(ZETA_POLYNOMIALS)]
    rows += [(name, str(PRIOR_POLYNOMIALS[name]), prior_root(name, tol))
             for name in PRIOR_POLYNOMIALS]
    width = max(len(r[1]) for r in rows)
    for name, poly, value in rows:
        print(f"{name:<14} {poly:<{width}}  {format_decimal(value, digits)}")
    return EXIT_OK


# --------------------------------------------------------------------------
# construct / verify / profile


def cmd_construct(args) -> int:
    from . import constructions as cons

    if args.family == "kurka":
        p = cons.kurka_params(args.delta)
        if not p.valid:
            print(f"warning: delta={format_rational(args.delta)} is outside the validity window",
                  file=sys.stderr)
        C = cons.kurka_cn(args.delta, args.n)
    elif args.family == "szenes":
        C = cons.szenes_config(args.m, args.k, args.fill)
    else:
        C = cons.cgo_config(args.m, args.k, args.fill, args.gap)
    _write(dumps_set(C), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verifier import is_counterexample

    C = _read_config(args.config)
    if not isinstance(C, Configuration):
        raise InputError("verify needs a configuration (\"halfline\": true)")
    rep = is_counterexample(C, args.delta)
    print(json.dumps(rep.to_json(), indent=2))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_profile(args) -> int:
    from .density import density_profile, profile_csv

    S = _read_config(args.config)
    _write(profile_csv(density_profile(S, args.point), args.digits), args.out)
    return EXIT_OK


# --------------------------------------------------------------------------
# sweep


@dataclass(frozen=True)
class SweepRow:
    delta: Fraction
    minimal_n: Optional[int]
    runtime_ms: int

    @property
    def verdict(self) -> str:
        return "found" if self.minimal_n is not None else "not-found"


def _sweep_one(job) -> SweepRow:
    from .constructions import minimal_counterexample_n

    delta, n_max = job
    start = time.perf_counter()
    n = minimal_counterexample_n(delta, n_max)
    return SweepRow(delta, n, int((time.perf_counter() - start) * 1000))


def sweep_deltas(lo: Fraction, hi: Fraction, steps: int) -> list[Fraction]:
    if not lo < hi or steps < 1:
        raise InputError("sweep needs from < to and steps >= 1")
    return [lo + (hi - lo) * i / steps for i in range(steps + 1)]


def run_sweep(lo, hi, steps, n_max, jobs: int = 1) -> list[SweepRow]:
    work = [(d, n_max) for d in sweep_deltas(Q_(lo), Q_(hi), steps)]
    if jobs > 1:
        with Pool(jobs) as pool:
            rows = pool.map(_sweep_one, work)
    else:
        rows = [_sweep_one(w) for w in work]
    return sorted(rows, key=lambda r: r.delta)


def Q_(x) -> Fraction:
    return x if isinstance(x, Fraction) else parse_rational(str(x))


def sweep_csv(rows: Sequence[SweepRow], timing: bool = False, digits: int = 6) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["delta", "delta_exact", "minimal_n", "verdict"] + (["runtime_ms"] if timing else [])
    w.writerow(header)
    for r in rows:
        line = [format_decimal(r.delta, digits), format_rational(r.delta),
                "" if r.minimal_n is None else r.minimal_n, r.verdict]
        w.writerow(line + ([r.runtime_ms] if timing else []))
    return buf.getvalue()


def transition(rows: Sequence[SweepRow]) -> Optional[tuple[Fraction, Fraction]]:
    """(last not-found delta, first found delta) around the single switch."""
    for a, b in zip(rows, rows[1:]):
        if a.verdict == "not-found" and b.verdict == "found":
            return a.delta, b.delta
    return None


def cmd_sweep(args) -> int:
    rows = run_sweep(args.lo, args.hi, args.steps, args.n_max, args.jobs)
    _write(sweep_csv(rows, args.timing), args.out)
    edge = transition(rows)
    if edge is not None:
        print(f"transition between {format_decimal(edge[0], 6)} and {format_decimal(edge[1], 6)}",
              file=sys.stderr)
    return EXIT_OK


# --------------------------------------------------------------------------
# goodset / oracle


def _load_goodset(args):
    from .constructions import good_set_example
    from .periodic import PeriodicSet

    if args.example:
        return good_set_example(args.delta)
    if not args.generator:
        raise InputError("give --example or --generator FILE")
    try:
        with open(args.generator, encoding="utf-8") as fh:
            return PeriodicSet.from_json(json.load(fh))
    except (OSError, ValueError, ZeroDivisionError, json.JSONDecodeError) as exc:
        raise InputError(f"{args.generator}: {exc}") from exc


def cmd_goodset(args) -> int:
    from .periodic import check_good_i, check_good_ii_bounded, cover_period, default_cuts

    P = _load_goodset(args)
    if args.action == "verify":
        r1 = check_good_i(P, args.delta)
        cuts = default_cuts(P, periods=args.periods)
        r2 = check_good_ii_bounded(P, args.delta, cuts)
        out = {
            "measure": format_rational(P.measure_G),
            "symmetric": P.is_symmetric,
            "condition_i": r1.to_json(),
            "condition_ii": {"cuts": len(cuts), "status": r2.status, "passed": r2.passed,
                             "violations": [f.to_json() for f in r2.violations]},
        }
        print(json.dumps(out, indent=2))
        print(f"lambda(G) = {format_rational(P.measure_G)}; condition (i) "
              f"{'passed' if r1.passed else 'failed'}; condition (ii) grid "
              f"{'passed' if r2.passed else 'failed'}", file=sys.stderr)
        return EXIT_OK if r1.passed and r2.passed else EXIT_FAIL
    cover = cover_period(P, args.delta)
    print(json.dumps([[format_rational(I.left), format_rational(I.right)] for I in cover], indent=2))
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .bounds import lemmaxy_oracle

    H = _read_config(args.set)
    if isinstance(H, Configuration):
        raise InputError("the oracle needs a bounded set (\"halfline\": false)")
    rep = lemmaxy_oracle(H, args.p, args.q, args.delta, seed=args.seed)
    out = rep.to_json()
    print(json.dumps(out, indent=2))
    return {"holds": EXIT_OK, "hypotheses-unmet": EXIT_OK}.get(rep.status, EXIT_FAIL)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="densitylab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="threshold constants as roots of their polynomials")
    p.add_argument("--tol", type=_rational, default=None, help="refinement tolerance")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("construct", help="write a configuration file")
    p.add_argument("family", choices=["kurka", "szenes", "cgo"])
    p.add_argument("--delta", type=_rational, default=Fraction(27, 100))
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m", type=_rational, default=Fraction(1, 5))
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--fill", type=_rational, default=Fraction(1, 2))
    p.add_argument("--gap", type=_rational, default=Fraction(0))
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check whether a configuration is a counterexample")
    p.add_argument("config")
    p.add_argument("--delta", type=_rational, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("profile", help="density profile at a point as CSV")
    p.add_argument("config")
    p.add_argument("--point", type=_rational, required=True)
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("sweep", help="minimal N of the periodic family over a delta grid")
    p.add_argument("--from", dest="lo", type=_rational, required=True)
    p.add_argument("--to", dest="hi", type=_rational, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--n-max", type=int, default=100)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="add a runtime_ms column")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("goodset", help="good-set conditions and covers")
    p.add_argument("action", choices=["verify", "cover"])
    p.add_argument("--example", action="store_true")
    p.add_argument("--generator", default=None)
    p.add_argument("--delta", type=_rational, required=True)
    p.add_argument("--periods", type=int, default=3)
    p.set_defaults(func=cmd_goodset)

    p = sub.add_parser("oracle", help="randomized theorem oracles")
    p.add_argument("which", choices=["lemmaxy"])
    p.add_argument("--set", required=True)
    p.add_argument("--p", type=_rational, required=True)
    p.add_argument("--q", type=_rational, required=True)
    p.add_argument("--delta", type=_rational, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
