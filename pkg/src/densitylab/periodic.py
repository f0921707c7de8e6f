"""Periodic sets H = G + Z and the delta-good conditions.

The generator is G = [0, nu_1) u (mu_2, nu_2) u ... u (mu_r, 1]; integers are
interior points of H.  Measures use the cumulative function
F(x) = floor(x) * lambda(G) + lambda(G ∩ (0, frac x)); the oscillation
g(x) = F(x) - x * lambda(G) is 1-periodic, so for every interval I

    |lambda(H ∩ I) - lambda(G) * |I||  <=  D = max g - min g.

That envelope makes the density question at large radii decidable and
bounds every search window.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional

from .density import bad_infimum, density_at, first_bad_radius, min_upper_radius
from .exact_core import Q, format_rational, parse_rational
from .intervals import (Finding, Interval, IntervalSet, RaySet, VerificationReport, reflect)


class PeriodicSet:
    """H = G + Z for a generator G = [0, nu_1) u ... u (mu_r, 1]."""

    finite = False

    def __init__(self, generator: Iterable):
        G = IntervalSet(generator)
        ivs = G.intervals
        if len(ivs) < 2:
            raise ValueError("the generator needs at least two intervals")
        if ivs[0].left != 0 or ivs[-1].right != 1:
            raise ValueError("the generator must start with [0, nu_1) and end with (mu_r, 1]")
        pts = [ivs[0].right]
        for iv in ivs[1:-1]:
            pts += [iv.left, iv.right]
        pts.append(ivs[-1].left)
        if any(not x < y for x, y in zip(pts, pts[1:])):
            raise ValueError("generator endpoints must be strictly increasing")
        self.G = G
        self.ends_mod1 = pts
        self._right_ends = frozenset(iv.right for iv in ivs[:-1])  # H lies just left of these
        self._left_ends = frozenset(iv.left for iv in ivs[1:])  # H lies just right of these

    def __eq__(self, other):
        return isinstance(other, PeriodicSet) and self.G == other.G

    def __hash__(self):
        return hash(self.G)

    def __repr__(self):
        return f"PeriodicSet({self.G!r})"

    @property
    def measure_G(self) -> Fraction:
        return self.G.measure

    def tail_limit(self) -> Fraction:
        return self.measure_G

    # membership and endpoints -------------------------------------------

    @staticmethod
    def _split(x) -> tuple[int, Fraction]:
        k = math.floor(x)
        return k, Q(x) - k

    def contains(self, x) -> bool:
        _, f = self._split(x)
        return f == 0 or self.G.contains(f)

    def left_in(self, x) -> bool:
        """H contains a left neighbourhood (x - eta, x)."""
        _, f = self._split(x)
        return f == 0 or f in self._right_ends or self.G.contains(f)

    def right_in(self, x) -> bool:
        """H contains a right neighbourhood (x, x + eta)."""
        _, f = self._split(x)
        return f == 0 or f in self._left_ends or self.G.contains(f)

    def is_endpoint(self, x) -> bool:
        _, f = self._split(x)
        return f in self._right_ends or f in self._left_ends

    def endpoints_within(self, lo, hi) -> list[Fraction]:
        lo, hi = Q(lo), Q(hi)
        out = []
        for k in range(math.floor(lo), math.floor(hi) + 1):
            for e in self.ends_mod1:
                x = k + e
                if lo <= x <= hi:
                    out.append(x)
        return out

    def components(self, x, y) -> list[Interval]:
        """Components of H meeting (x, y), clipped to (x, y)."""
        x, y = Q(x), Q(y)
        ivs = self.G.intervals
        mids = [(iv.left, iv.right) for iv in ivs[1:-1]]
        first, last = ivs[0].right, ivs[-1].left
        out = []
        for k in range(math.floor(x) - 1, math.floor(y) + 2):
            raw = [(k + last - 1, k + first)] + [(k + u, k + v) for u, v in mids]
            for u, v in raw:
                u, v = max(u, x), min(v, y)
                if u < v:
                    out.append(Interval(u, v))
        return sorted(set(out))

    # measure ------------------------------------------------------------

    def cumulative(self, x) -> Fraction:
        k, f = self._split(x)
        return k * self.measure_G + self.G.cumulative(f)

    def measure_within(self, x, y) -> Fraction:
        if x > y:
            raise ValueError("measure_within needs x <= y")
        return self.cumulative(y) - self.cumulative(x)

    def oscillation(self, x) -> Fraction:
        return self.cumulative(x) - Q(x) * self.measure_G

    @cached_property
    def envelope(self) -> tuple[Fraction, Fraction]:
        """(D, M): D = max g - min g and M = max |g| over a period."""
        vals = [self.oscillation(t) for t in [Fraction(0), *self.ends_mod1]]
        return max(vals) - min(vals), max(abs(v) for v in vals)

    def tail_bound(self, p):
        """(limit, R0, K): for omega >= R0 the density differs from the limit
        by at most K / (2 omega)."""
        return self.measure_G, Fraction(0), self.envelope[0]

    # symmetry and IO ----------------------------------------------------

    def mirrored(self) -> "PeriodicSet":
        return PeriodicSet(reflect(self.G, Fraction(1, 2)))

    @property
    def is_symmetric(self) -> bool:
        return self.mirrored() == self

    def to_json(self) -> dict:
        return {"generator": [[format_rational(iv.left), format_rational(iv.right)]
                              for iv in self.G]}

    @classmethod
    def from_json(cls, obj) -> "PeriodicSet":
        if not isinstance(obj, dict) or "generator" not in obj:
            raise ValueError("expected an object with a 'generator' list")
        ivs = []
        for pair in obj["generator"]:
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ValueError(f"bad generator interval {pair!r}")
            ivs.append(Interval(parse_rational(pair[0]), parse_rational(pair[1])))
        return cls(ivs)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def periodic_measure(P: PeriodicSet, x, y) -> Fraction:
    return P.measure_within(Q(x), Q(y))


# --------------------------------------------------------------------------
# cut sets for condition (ii)


class HalfPeriodic:
    """H ∩ (-inf, bound) (keep="below") or H ∩ (bound, inf) (keep="above")."""

    finite = False

    def __init__(self, P: PeriodicSet, bound, keep: str):
        if keep not in ("below", "above"):
            raise ValueError("keep must be 'below' or 'above'")
        self.P, self.bound, self.keep = P, Q(bound), keep

    def __repr__(self):
        return f"HalfPeriodic({self.keep} {self.bound})"

    def contains(self, x) -> bool:
        inside = x < self.bound if self.keep == "below" else x > self.bound
        return inside and self.P.contains(x)

    def measure_within(self, x, y) -> Fraction:
        if self.keep == "below":
            y = min(y, self.bound)
        else:
            x = max(x, self.bound)
        return self.P.measure_within(x, y) if x < y else Fraction(0)

    def endpoints_within(self, lo, hi) -> list[Fraction]:
        b = self.bound
        if self.keep == "below":
            pts = [e for e in self.P.endpoints_within(lo, hi) if e < b]
            if lo <= b <= hi and self.P.left_in(b):
                pts.append(b)
        else:
            pts = [e for e in self.P.endpoints_within(lo, hi) if e > b]
            if lo <= b <= hi and self.P.right_in(b):
                pts.insert(0, b)
        return pts

    def tail_limit(self) -> Fraction:
        return self.P.measure_G / 2

    def tail_bound(self, p):
        dist = abs(self.bound - Q(p))
        lam = self.P.measure_G
        return lam / 2, dist, lam * dist + self.P.envelope[0]


CUT_SHAPES = ("ray_below", "ray_above", "below", "above")


def cut_set(P: PeriodicSet, shape: str, a=None, b=None):
    """One of the four cut sets of condition (ii).

    ray_below: ((-inf, a) u H) minus [b, inf)      ray_above: (H u (b, inf)) minus (-inf, a]
    below:     H minus [b, inf)                     above:     H minus (-inf, a]
    """
    if shape == "below":
        return HalfPeriodic(P, b, "below")
    if shape == "above":
        return HalfPeriodic(P, a, "above")
    a, b = Q(a), Q(b)
    if not a < b:
        raise ValueError("cuts need a < b")
    if shape == "ray_below":
        left = a
        if P.contains(a):
            comp = next(iv for iv in P.components(a - 1, b + 1) if iv.left < a < iv.right)
            left = min(comp.right, b)
        body = [iv for iv in P.components(left, b)]
        return RaySet(IntervalSet(body), left=left)
    if shape == "ray_above":
        right = b
        if P.contains(b):
            comp = next(iv for iv in P.components(a - 1, b + 1) if iv.left < b < iv.right)
            right = max(comp.left, a)
        body = [iv for iv in P.components(a, right)]
        return RaySet(IntervalSet(body), right=right)
    raise ValueError(f"unknown cut shape {shape!r}")


def _cut_endpoints(C, P: PeriodicSet, delta) -> list[Fraction]:
    """Endpoints of C that can possibly keep the density inside (delta, 1-delta).

    For the one-sided periodic cuts, an endpoint p farther than R from the cut
    behaves like an endpoint of H for radii up to that distance; when H has a
    bad radius below R at every endpoint, those p are excluded exactly.
    """
    if not isinstance(C, HalfPeriodic):
        return C.endpoints()
    R = max_min_bad_radius(P, delta)
    b = C.bound
    if R is None:
        R = 2 * horizon(P, delta) + 2
    if C.keep == "below":
        return C.endpoints_within(b - R, b)
    return C.endpoints_within(b, b + R)


# --------------------------------------------------------------------------
# tail certificates


@dataclass(frozen=True)
class TailCertificate:
    """Beyond ``horizon`` the density is provably inside (delta, 1 - delta)
    ("inside"), provably outside ("outside"), or the envelope cannot decide
    ("undecidable", limit on a threshold)."""

    status: str
    horizon: Fraction
    limit: Fraction


def tail_certificate(S, p, delta) -> TailCertificate:
    d = Q(delta)
    L, R0, K = S.tail_bound(p)
    if d < L < 1 - d:
        gap = min(L - d, 1 - d - L)
        status = "inside"
    elif L < d or L > 1 - d:
        gap = d - L if L < d else L - (1 - d)
        status = "outside"
    else:
        return TailCertificate("undecidable", max(R0, Fraction(2)), L)
    return TailCertificate(status, max(R0, K / (2 * gap), Fraction(1, 10**6)), L)


def horizon(P: PeriodicSet, delta) -> Fraction:
    return tail_certificate(P, Fraction(0), delta).horizon


def periodic_density_profile(P: PeriodicSet, c, delta):
    """(profile on (0, W], certificate for radii beyond W)."""
    from .density import density_profile

    cert = tail_certificate(P, c, delta)
    return density_profile(P, c, cert.horizon), cert


def all_radii_inside(S, p, delta) -> Optional[bool]:
    """Exact decision of "density in (delta, 1 - delta) for every radius";
    None when the tail cannot be decided."""
    from .verifier import has_bad_radius

    d = Q(delta)
    if getattr(S, "finite", True):
        return not has_bad_radius(S, p, d)
    cert = tail_certificate(S, p, d)
    if cert.status == "outside":
        return False
    if has_bad_radius(S, p, d, cert.horizon):
        return False
    return True if cert.status == "inside" else None


_MIN_BAD_CACHE: dict = {}


def max_min_bad_radius(P: PeriodicSet, delta) -> Optional[Fraction]:
    """max over endpoints p of H of the least bad radius at p (None if some
    endpoint has no bad radius within the horizon)."""
    key = (P, Q(delta))
    if key in _MIN_BAD_CACHE:
        return _MIN_BAD_CACHE[key]
    worst = Fraction(0)
    W = horizon(P, delta)
    result: Optional[Fraction] = None
    for e in P.ends_mod1:
        hit = first_bad_radius(P, e, delta, W)
        if hit is None:
            break
        worst = max(worst, hit[0])
    else:
        result = worst
    _MIN_BAD_CACHE[key] = result
    return result


# --------------------------------------------------------------------------
# condition (i) and (ii)


def check_good_i(P: PeriodicSet, delta) -> VerificationReport:
    d = Q(delta)
    findings = []
    status = None
    for e in P.ends_mod1:
        cert = tail_certificate(P, e, d)
        hit = first_bad_radius(P, e, d, cert.horizon)
        if hit is not None:
            omega, side = hit
            findings.append(Finding("(i)", side, e, omega, {"density": density_at(P, e, omega)}))
        elif cert.status == "outside":
            omega = cert.horizon + 1
            f = density_at(P, e, omega)
            findings.append(Finding("(i)", "W" if f <= d else "B", e, omega, {"density": f}))
        elif cert.status == "undecidable":
            status = "undecidable"
            findings.append(Finding("(i)", "undecided", e, None,
                                    {"reason": "limit density equals a threshold"}))
        else:
            findings.append(Finding("(i)", "violation", e, None,
                                    {"horizon": cert.horizon}))
    return VerificationReport(f"good condition (i) at delta={d}", tuple(findings), status)


def default_cuts(P: PeriodicSet, periods: int = 3,
                 offsets=(0, Fraction(1, 7), Fraction(-1, 7), Fraction(1, 3), Fraction(-1, 3))):
    """All pairs a < b from endpoints + offsets within the window [0, periods),
    plus the one-sided cuts (None, b) for a = -inf and (a, None) for b = +inf."""
    pts = sorted({e + Q(o) for e in P.endpoints_within(0, periods - Fraction(1, 10**9))
                  for o in offsets})
    cuts = [(None, b) for b in pts] + [(a, None) for a in pts]
    cuts += [(a, b) for i, a in enumerate(pts) for b in pts[i + 1:]]
    return cuts


def _qualifying_endpoint(C, P, delta):
    """An endpoint of C whose density stays inside for all radii, or a marker."""
    undecided = False
    for p in _cut_endpoints(C, P, delta):
        verdict = all_radii_inside(C, p, delta)
        if verdict:
            return p
        if verdict is None:
            undecided = True
    return "undecided" if undecided else None


def check_good_ii_bounded(P: PeriodicSet, delta, cuts=None, use_symmetry: bool = True
                          ) -> VerificationReport:
    """Bounded falsifier for condition (ii): every cut in ``cuts`` (pairs with
    a = None meaning -inf) is tested in every applicable shape.  A cut where no
    endpoint keeps its density inside (delta, 1 - delta) is a violation."""
    d = Q(delta)
    cuts = default_cuts(P) if cuts is None else cuts
    symmetric = use_symmetry and P.is_symmetric
    findings = []
    status = "bounded: no violation found"
    seen = set()
    for a, b in cuts:
        tasks = []
        if a is None:
            tasks.append(("below", None, b))
        elif b is None:
            if not symmetric:  # mirror image of a "below" cut
                tasks.append(("above", a, None))
        else:
            tasks.append(("ray_below", a, b))
            if not symmetric:
                tasks.append(("ray_above", a, b))
        for shape, x, y in tasks:
            key = (shape, x, y)
            if key in seen:
                continue
            seen.add(key)
            C = cut_set(P, shape, x, y)
            p = _qualifying_endpoint(C, P, d)
            label = f"(ii) {shape}"
            vals = {"a": x, "b": y}
            if p is None:
                findings.append(Finding(label, "violation", None, None, vals))
            elif p == "undecided":
                findings.append(Finding(label, "undecided", None, None, vals))
            else:
                findings.append(Finding(label, "ok", p, None, vals))
    if any(f.kind == "violation" for f in findings):
        status = "violation found"
    return VerificationReport(f"good condition (ii) at delta={d}, {len(cuts)} cuts"
                              + (" (mirror symmetry used)" if symmetric else ""),
                              tuple(findings), status)


# --------------------------------------------------------------------------
# witness intervals


class NotFound(LookupError):
    pass


def _window(P, delta) -> Fraction:
    return 2 * horizon(P, delta) + 2


def upper_radius(P: PeriodicSet, a, delta) -> Optional[Fraction]:
    """Least gamma with density >= 1 - delta at a (the triangle radius)."""
    return min_upper_radius(P, a, delta, _window(P, delta))


def find_upper_interval(P: PeriodicSet, s, delta, direction: str = "left") -> Interval:
    """An interval I_alpha(a) with the triangle relation, a <= s (left) or
    a >= s (right), and s inside it.  Centres are endpoints of H, nearest
    first; the window is widened once before giving up."""
    s, d = Q(s), Q(delta)
    if P.contains(s):
        raise ValueError(f"{s} is interior to H")
    if direction not in ("left", "right"):
        raise ValueError("direction must be 'left' or 'right'")
    width = _window(P, d)
    for attempt in range(2):
        if direction == "left":
            cands = reversed(P.endpoints_within(s - width, s))
        else:
            cands = iter(P.endpoints_within(s, s + width))
        for a in cands:
            gamma = upper_radius(P, a, d)
            if gamma is not None and abs(s - a) < gamma:
                return Interval.centered(a, gamma)
        width *= 2
    raise NotFound(f"no upper interval for {s}")


def find_between_interval(P: PeriodicSet, p, q, delta, variant: str = "alpha") -> Interval:
    """An interval I centred at an endpoint a in [p, q] whose smaller radii all
    keep the density inside, with (>= 1 - delta and p in I) or (<= delta and q
    in I); the beta variant swaps the roles of p and q."""
    p, q, d = Q(p), Q(q), Q(delta)
    if not (P.is_endpoint(p) and P.is_endpoint(q)) or p > q:
        raise ValueError("p <= q must be endpoints of H")
    W = _window(P, d)
    if p == q:
        hit = bad_infimum(P, p, d, W)
        if hit is None or hit[0] == 0:
            raise NotFound(f"no least bad radius at {p}")
        return Interval.centered(p, hit[0])
    near, far = (p, q) if variant == "alpha" else (q, p)
    cands = P.endpoints_within(p, q)
    if variant != "alpha":
        cands = list(reversed(cands))
    for a in cands:
        hit = bad_infimum(P, a, d, W)
        if hit is None or hit[0] == 0:
            continue
        alpha, side = hit
        I = Interval.centered(a, alpha)
        f = density_at(P, a, alpha)
        if f >= 1 - d and I.contains(near):
            return I
        if f <= d and I.contains(far):
            return I
    raise NotFound(f"no interval between {p} and {q}")


def covers(intervals: list[Interval], lo, hi, closed: bool = True) -> bool:
    """Open intervals cover [lo, hi] (closed) or (lo, hi) (open), by an exact sweep."""
    x = Q(lo)
    ivs = sorted(intervals, key=lambda iv: iv.left)
    i, best, first = 0, None, True
    while True:
        while i < len(ivs) and (ivs[i].left < x or (first and not closed and ivs[i].left <= x)):
            best = ivs[i].right if best is None else max(best, ivs[i].right)
            i += 1
        first = False
        if best is None or best <= x:
            return False
        if best > hi or (not closed and best >= hi):
            return True
        x = best


def cover_period(P: PeriodicSet, delta) -> list[Interval]:
    """Intervals with density >= 1 - delta covering [0, 1]: one upper interval
    per complement gap plus the components of H."""
    d = Q(delta)
    ivs = P.G.intervals
    out = []
    for left, right in zip(ivs, ivs[1:]):
        x, s = left.right, right.left
        I = find_upper_interval(P, s, d, "left")
        if not I.contains(x):
            raise NotFound(f"upper interval at {s} misses {x}")
        out.append(I)
    out += [Interval(ivs[-1].left - 1, ivs[0].right)]
    out += [Interval(iv.left, iv.right) for iv in ivs[1:-1]]
    out += [Interval(ivs[-1].left, 1 + ivs[0].right)]
    if not covers(out, 0, 1):
        raise NotFound("intervals do not cover [0, 1]")
    return out
