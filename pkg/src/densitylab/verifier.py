"""Counterexample verification, the v_B / v_W / rho quantities, and exact
predicate bundles for the structural lemmas about minimal counterexamples."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .density import (density_at, density_extrema, first_bad_radius, iter_pieces,
                      max_bad_radius, solve_piece)
from .exact_core import Q
from .intervals import Configuration, Finding, Interval, IntervalSet, VerificationReport


def _check_delta(delta) -> Fraction:
    d = Q(delta)
    if not 0 < d < Fraction(1, 2):
        raise ValueError("delta must lie in (0, 1/2)")
    return d


def is_counterexample(C: Configuration, delta, stop_early: bool = False) -> VerificationReport:
    """Passed when every endpoint of C has a radius with density outside
    (delta, 1 - delta).  Each endpoint gets its least such radius as witness,
    or a violation entry when its density stays strictly inside for all radii."""
    d = _check_delta(delta)
    findings = []
    for p in C.endpoints():
        hit = first_bad_radius(C, p, d)
        if hit is None:
            findings.append(Finding("endpoint", "violation", p, None))
            if stop_early:
                break
        else:
            omega, side = hit
            findings.append(Finding("endpoint", side, p, omega,
                                    {"density": density_at(C, p, omega)}))
    return VerificationReport(f"counterexample check at delta={d}", tuple(findings))


@dataclass(frozen=True)
class SzenesQuantities:
    v_B: Fraction
    v_W: Fraction
    rho: Fraction
    table: tuple[tuple[Fraction, Fraction, str], ...]  # (p, omega(p), side)


class MissingRadius(ValueError):
    pass


def omega_table(C: Configuration, delta) -> list[tuple[Fraction, Fraction, str]]:
    d = _check_delta(delta)
    rows = []
    for p in C.endpoints():
        hit = max_bad_radius(C, p, d)
        if hit is None:
            raise MissingRadius(f"endpoint {p} has no radius with density outside (delta, 1-delta)")
        rows.append((p, hit[0], hit[1]))
    return rows


def szenes_quantities(C: Configuration, delta) -> SzenesQuantities:
    """v_B = max{p in B : p <= 1/2, omega(p) >= p},
    v_W = min{p in W : p >= 1/2, omega(p) >= 1 - p}, rho = lambda(C ∩ (0, 1)).

    Configurations are rescaled so the last endpoint is 1 before evaluating.
    """
    C = C.normalized()
    rows = omega_table(C, delta)
    half = Fraction(1, 2)
    bs = [p for p, w, s in rows if s == "B" and p <= half and w >= p]
    ws = [p for p, w, s in rows if s == "W" and p >= half and w >= 1 - p]
    if not bs:
        raise ValueError("the set defining v_B is empty")
    if not ws:
        raise ValueError("the set defining v_W is empty")
    return SzenesQuantities(max(bs), min(ws), C.measure_within(Fraction(0), Fraction(1)),
                            tuple(rows))


# --------------------------------------------------------------------------
# property bundles


class MissingSymbol(KeyError):
    pass


class _Objects:
    def __init__(self, objects: Mapping):
        self._o = dict(objects)

    def __getitem__(self, key):
        if key not in self._o:
            raise MissingSymbol(f"bundle needs symbol {key!r}")
        v = self._o[key]
        return Q(v) if isinstance(v, (int, str)) else v

    def get(self, key, default=None):
        return self._o.get(key, default)


def has_bad_radius(S, p, delta, reach=None) -> bool:
    """Some radius in (0, reach] (default (0, inf)) has density outside
    (delta, 1 - delta).  With reach = min(p - x, y - p) this decides the
    existence of such a radius with I_omega(p) inside (x, y)."""
    d = Q(delta)
    if reach is not None and reach <= 0:
        return False
    for piece in iter_pieces(S, p, reach):
        if solve_piece(piece, 1 - d, True) or solve_piece(piece, d, False):
            return True
    return False


def upper_and_maximal(S, p, eps, delta) -> bool:
    """density(eps) >= 1 - delta and density(eps) >= density(e) for 0 < e < eps."""
    d, eps = Q(delta), Q(eps)
    top = density_at(S, p, eps)
    if top < 1 - d:
        return False
    return all(solve_piece(piece, top, True) is None or _only_at(piece, top, eps)
               for piece in iter_pieces(S, p, eps))


def _only_at(piece, level, eps) -> bool:
    """Density exceeds ``level`` nowhere in the piece (touching is allowed)."""
    a, s = piece.a, piece.b - 2 * level
    # g(omega) = a + s*omega must be <= 0 on (lo, hi]; linear, so check the ends
    hi = piece.hi if piece.hi is not None else eps
    return a + s * piece.lo <= 0 and a + s * hi <= 0


def _cond(label, ok: bool | None, **values) -> Finding:
    kind = "skip" if ok is None else ("ok" if ok else "violation")
    return Finding(label, kind, None, None, values)


def _minimality(o: _Objects, label: str) -> Finding:
    """Minimality in the number of intervals is not decidable from the objects;
    it is checked only through a caller-supplied callback."""
    check = o.get("counterexample_size")
    if check is None:
        return _cond(label, None, reason="not checkable without counterexample_size")
    return _cond(label, bool(check(o)), reason="checked by supplied callback")


def _endpoint_radius(D, lo, hi, window, d, label) -> list[Finding]:
    """Every endpoint p of D in (lo, hi) has a bad radius with I(p) inside window."""
    x, y = window
    out = []
    for p in D.endpoints():
        if lo < p < hi:
            ok = has_bad_radius(D, p, d, min(p - x, y - p))
            out.append(Finding(label, "ok" if ok else "violation", p, None))
    return out


def _bundle_lemmaa(o: _Objects, d: Fraction) -> list[Finding]:
    D: IntervalSet = o["D"]
    a, b = o["a"], o["b"]
    zero, one = Fraction(0), Fraction(1)
    k = 4 * d * d / (1 - 2 * d)
    ivs = D.intervals
    shape = bool(ivs) and ivs[0].left > 0 and ivs[-1].right == 1 and 0 <= a < b <= 1
    out = [_cond("shape", shape)]
    out += _endpoint_radius(D, a, b, (zero, one), d, "(a)")
    out.append(_minimality(o, "(b)"))
    lam = D.measure
    gap = 1 - D.measure_within(zero, one)
    out.append(_cond("(c) lambda D", lam <= k * (b - a), measure=lam, bound=k * (b - a)))
    out.append(_cond("(c) lambda complement", gap <= k * (b - a), measure=gap, bound=k * (b - a)))
    return out


def _bundle_lemmab(o: _Objects, d: Fraction) -> list[Finding]:
    D: IntervalSet = o["D"]
    a, b = o["a"], o["b"]
    a2, b2 = o["a_prime"], o["b_prime"]
    ea, eb = o["eps_a_prime"], o["eps_b_prime"]
    r1, s1 = D.intervals[0].left, D.intervals[0].right
    rn, sn = D.intervals[-1].left, D.intervals[-1].right
    ends = set(D.endpoints())
    out = [_cond("(i)", r1 <= a < b <= sn and a2 in ends and b2 in ends
                 and a < a2 < b and a < b2 < b)]
    out.append(_minimality(o, "(ii)"))
    out += _endpoint_radius(D, a, b, (r1, sn), d, "(iii)")
    ia, ib = Interval.centered(a2, ea), Interval.centered(b2, eb)
    out.append(_cond("(iv)", r1 <= ia.left and ia.right <= sn and r1 <= ib.left and ib.right <= sn))
    out.append(_cond("(v) at a'", upper_and_maximal(D, a2, ea, d), density=density_at(D, a2, ea)))
    out.append(_cond("(v) at b'", upper_and_maximal(D, b2, eb, d), density=density_at(D, b2, eb)))
    out.append(_cond("(vi)", ia.left < s1 and r1 < ia.right and ib.left < sn and rn < ib.right))
    k = 4 * d * d / (1 - 2 * d)
    out.append(_cond("(vii)", D.measure <= k * (b - a), measure=D.measure, bound=k * (b - a)))
    return out


def _bundle_lemmabwlog(o: _Objects, d: Fraction) -> list[Finding]:
    a, a2, ea = o["a"], o["a_prime"], o["eps_a_prime"]
    b, b2, eb = o["b"], o["b_prime"], o["eps_b_prime"]
    k = (4 * d - 1) / (1 - 2 * d)
    return [
        _cond("(viii)", a2 - a > k * ea, lhs=a2 - a, rhs=k * ea),
        _cond("(ix)", b - b2 > k * eb, lhs=b - b2, rhs=k * eb),
    ]


def _bundle_lemmad(o: _Objects, d: Fraction) -> list[Finding]:
    F: IntervalSet = o["F"]
    first, last = F.intervals[0], F.intervals[-1]
    out = [_cond("(I)", first.center == 0 and last.center == 1,
                 first_centre=first.center, last_centre=last.center)]
    out.append(_minimality(o, "(II)"))
    out += _endpoint_radius(F, first.left, last.right, (first.left, last.right), d, "(III)")
    k = 4 * d * d / (1 - 2 * d)
    lam = F.measure_within(Fraction(0), Fraction(1))
    out.append(_cond("(IV)", lam <= k, measure=lam, bound=k))
    return out


BUNDLES: dict[str, Callable[[_Objects, Fraction], list[Finding]]] = {
    "lemmaa-abc": _bundle_lemmaa,
    "lemmab-i-vii": _bundle_lemmab,
    "lemmabwlog-viii-ix": _bundle_lemmabwlog,
    "lemmad-I-IV": _bundle_lemmad,
}


def check_property_bundle(name: str, objects: Mapping, delta) -> VerificationReport:
    if name not in BUNDLES:
        raise ValueError(f"unknown bundle {name!r}; choose from {sorted(BUNDLES)}")
    d = _check_delta(delta)
    findings = BUNDLES[name](_Objects(objects), d)
    return VerificationReport(name, tuple(findings))


def extrema_inside(S, p, delta) -> bool:
    """Density at p stays strictly inside (delta, 1 - delta) for every radius."""
    d = Q(delta)
    e = density_extrema(S, p)
    low_ok = e.inf.value > d or (e.inf.value == d and not e.inf.attained)
    high_ok = e.sup.value < 1 - d or (e.sup.value == 1 - d and not e.sup.attained)
    return low_ok and high_ok
