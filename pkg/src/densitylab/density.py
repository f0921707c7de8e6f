"""Exact analysis of the density function omega -> lambda(S | I_omega(c)).

Between two consecutive critical radii (distances from the centre to an
endpoint of S) the measure lambda(S ∩ I_omega(c)) is affine in omega, say
a + b*omega with b in {0, 1, 2}.  The density (a + b*omega) / (2*omega) is
therefore monotone on every piece, which turns every "for all omega" and
"there is an omega" question into finitely many exact linear checks.

Any object with ``measure_within``, ``contains``, ``endpoints`` (or
``endpoints_within``), ``finite`` and ``tail_limit`` can be analysed.
"""

from __future__ import annotations

import csv
import heapq
import io
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .exact_core import Q, format_decimal
from .intervals import Interval

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Piece:
    """Radii in (lo, hi] where the measure equals a + b*omega; hi None means +inf."""

    lo: Fraction
    hi: Optional[Fraction]
    a: Fraction
    b: int

    def measure(self, omega) -> Fraction:
        return self.a + self.b * omega

    def density(self, omega) -> Fraction:
        return (self.a + self.b * omega) / (2 * omega)

    def trend(self) -> int:
        """+1 increasing, -1 decreasing, 0 constant (sign of -a)."""
        return (self.a < 0) - (self.a > 0)

    def limit_hi(self) -> Fraction:
        """Density at hi, or the limit b/2 for the unbounded piece."""
        return Fraction(self.b, 2) if self.hi is None else self.density(self.hi)

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2 if self.hi is not None else 2 * self.lo + 1

    def contains_radius(self, omega) -> bool:
        return self.lo < omega and (self.hi is None or omega <= self.hi)


@dataclass(frozen=True)
class RadiusRange:
    """A range of radii; ``hi`` None means unbounded above."""

    lo: Fraction
    lo_closed: bool
    hi: Optional[Fraction]
    hi_closed: bool


def solve_piece(piece: Piece, level, upper: bool) -> Optional[RadiusRange]:
    """Radii in the piece where f >= level (upper) or f <= level (lower)."""
    level = Q(level)
    # f >= level  <=>  a + (b - 2 level) omega >= 0   (omega > 0)
    A, S = piece.a, piece.b - 2 * level
    if not upper:
        A, S = -A, -S
    lo, hi = piece.lo, piece.hi
    if S == 0:
        return RadiusRange(lo, False, hi, hi is not None) if A >= 0 else None
    z = -A / S
    if S > 0:  # omega >= z
        if z <= lo:
            return RadiusRange(lo, False, hi, hi is not None)
        if hi is not None and z > hi:
            return None
        return RadiusRange(z, True, hi, hi is not None)
    # omega <= z
    if z <= lo:
        return None
    end = z if hi is None else min(z, hi)
    return RadiusRange(lo, False, end, True)


# --------------------------------------------------------------------------
# piece generation


def _endpoint_list(S, c, max_radius):
    if max_radius is None:
        if not S.finite:
            raise ValueError("infinite sets need an explicit max_radius")
        return S.endpoints()
    return S.endpoints_within(c - max_radius, c + max_radius)


def critical_radii(S, c, max_radius=None) -> Iterator[Fraction]:
    """Strictly increasing positive distances from c to the endpoints of S."""
    c = Q(c)
    pts = _endpoint_list(S, c, max_radius)
    i, j = bisect_left(pts, c), bisect_right(pts, c)
    left = (c - e for e in reversed(pts[:i]))
    right = (e - c for e in pts[j:])
    last = None
    for r in heapq.merge(left, right):
        if r != last:
            yield r
            last = r


def iter_pieces(S, c, max_radius=None) -> Iterator[Piece]:
    """Yield the pieces of the profile in increasing radius order.

    With ``max_radius`` the last piece ends exactly at that radius;
    otherwise (finite sets only) the last piece is unbounded.
    """
    c = Q(c)
    R = None if max_radius is None else Q(max_radius)
    lo = Fraction(0)
    m_lo = Fraction(0)
    for r in critical_radii(S, c, R):
        hi = r if R is None else min(r, R)
        mid = (lo + hi) / 2
        b = S.contains(c - mid) + S.contains(c + mid)
        a = m_lo - b * lo
        yield Piece(lo, hi, a, b)
        m_lo = a + b * hi
        lo = hi
        if R is not None and hi >= R:
            return
    if R is not None and lo >= R:
        return
    probe = lo + 1 if R is None else (lo + R) / 2
    b = S.contains(c - probe) + S.contains(c + probe)
    yield Piece(lo, R, m_lo - b * lo, b)


@dataclass(frozen=True)
class DensityProfile:
    """Exact piecewise description of the density at ``center``.

    ``horizon`` is None for a profile valid on all of (0, inf); otherwise the
    profile covers (0, horizon] only.
    """

    center: Fraction
    pieces: tuple[Piece, ...]
    horizon: Optional[Fraction] = None

    @property
    def breakpoints(self) -> list[Fraction]:
        return [p.hi for p in self.pieces[:-1]] + (
            [] if self.pieces[-1].hi is None or self.horizon is not None else [self.pieces[-1].hi])

    @property
    def limit_zero(self) -> Fraction:
        return Fraction(self.pieces[0].b, 2)

    @property
    def limit_infinity(self) -> Optional[Fraction]:
        return None if self.horizon is not None else Fraction(self.pieces[-1].b, 2)

    def piece_at(self, omega) -> Piece:
        for p in self.pieces:
            if p.contains_radius(omega):
                return p
        raise ValueError(f"radius {omega} outside the profile")

    def evaluate(self, omega) -> Fraction:
        omega = Q(omega)
        if omega <= 0:
            raise ValueError("radius must be positive")
        return self.piece_at(omega).density(omega)


def density_profile(S, c, max_radius=None) -> DensityProfile:
    c = Q(c)
    R = None if max_radius is None else Q(max_radius)
    return DensityProfile(c, tuple(iter_pieces(S, c, R)), R)


def density_at(S, c, omega) -> Fraction:
    c, omega = Q(c), Q(omega)
    if omega <= 0:
        raise ValueError("radius must be positive")
    return S.measure_within(c - omega, c + omega) / (2 * omega)


def relative_measure(S, I: Interval) -> Fraction:
    if I.is_empty():
        raise ValueError("relative measure needs a nonempty interval")
    return S.measure_within(I.left, I.right) / I.length


# --------------------------------------------------------------------------
# extrema and thresholds


@dataclass(frozen=True)
class Extremum:
    value: Fraction
    attained: bool
    radius: Optional[Fraction]  # an attaining radius, None for a pure limit


@dataclass(frozen=True)
class Extrema:
    inf: Extremum
    sup: Extremum


def density_extrema(S, c, max_radius=None) -> Extrema:
    """Exact infimum and supremum of the density over (0, inf) or (0, max_radius]."""
    pieces = list(iter_pieces(S, c, max_radius))
    first = pieces[0]
    cands: list[Extremum] = [Extremum(first.density(first.hi) if first.hi else Fraction(first.b, 2),
                                      True, first.hi if first.hi else Fraction(1))]
    for p in pieces:
        if p.hi is not None:
            cands.append(Extremum(p.density(p.hi), True, p.hi))
    last = pieces[-1]
    if last.hi is None:
        # monotone towards b/2; attained only when constant
        cands.append(Extremum(Fraction(last.b, 2), last.a == 0, last.lo + 1 if last.a == 0 else None))
    lo = min(cands, key=lambda e: (e.value, not e.attained))
    hi = max(cands, key=lambda e: (e.value, e.attained))
    return Extrema(lo, hi)


def _bad_ranges(piece: Piece, delta):
    up = solve_piece(piece, 1 - delta, True)
    down = solve_piece(piece, delta, False)
    return up, down


def first_bad_radius(S, c, delta, max_radius=None):
    """Smallest radius with density outside (delta, 1 - delta) as (omega, side).

    Side "B" means density >= 1 - delta, "W" means density <= delta.  When the
    first piece is already bad there is no least radius and the end of that
    piece is returned.  Returns None when every radius is good.
    """
    delta = Q(delta)
    for piece in iter_pieces(S, c, max_radius):
        best = None
        for side, rng in zip("BW", _bad_ranges(piece, delta)):
            if rng is None:
                continue
            omega = rng.lo if rng.lo_closed or rng.lo > 0 else rng.hi
            if omega is None:  # unbounded constant first piece
                omega = piece.lo + 1
            if best is None or omega < best[0]:
                best = (omega, side)
        if best is not None:
            return best
    return None


def max_bad_radius(S, c, delta, max_radius=None):
    """Greatest radius with density outside (delta, 1 - delta), as (omega, side).

    Returns None when no such radius exists.  Raises if the bad radii are
    unbounded (cannot happen for configurations, whose density tends to 1/2).
    Ties at the same radius report side "B" first.
    """
    delta = Q(delta)
    pieces = list(iter_pieces(S, c, max_radius))
    for piece in reversed(pieces):
        best = None
        for side, rng in zip("BW", _bad_ranges(piece, delta)):
            if rng is None:
                continue
            if rng.hi is None:
                raise ValueError(f"bad radii at {c} are unbounded")
            if best is None or rng.hi > best[0]:
                best = (rng.hi, side)
        if best is not None:
            return best
    return None


def min_upper_radius(S, c, delta, max_radius=None) -> Optional[Fraction]:
    """Least gamma with density >= 1 - delta, i.e. the unique gamma with the
    triangle relation; None if no radius reaches 1 - delta or the set of such
    radii accumulates at 0 (no least element)."""
    delta = Q(delta)
    for piece in iter_pieces(S, c, max_radius):
        rng = solve_piece(piece, 1 - delta, True)
        if rng is None:
            continue
        if rng.lo_closed:
            return rng.lo
        if rng.lo > 0:
            return rng.lo  # reached at the shared breakpoint by continuity
        return None
    return None


def triangle_check(S, c, gamma, delta) -> bool:
    """density(gamma) >= 1 - delta and density(eps) < 1 - delta for 0 < eps < gamma."""
    gamma = Q(gamma)
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    return min_upper_radius(S, c, delta, max_radius=gamma if not S.finite else None) == gamma


def bad_infimum(S, c, delta, max_radius=None):
    """Infimum of the radii with density outside (delta, 1 - delta), as
    (omega, side); 0 when bad radii accumulate at 0, None when none exist."""
    delta = Q(delta)
    for piece in iter_pieces(S, c, max_radius):
        best = None
        for side, rng in zip("BW", _bad_ranges(piece, delta)):
            if rng is not None and (best is None or rng.lo < best[0]):
                best = (rng.lo, side)
        if best is not None:
            return best
    return None


# --------------------------------------------------------------------------
# export


def profile_rows(profile: DensityProfile) -> list[tuple[Fraction, Fraction]]:
    """Breakpoints plus piece midpoints, in increasing radius order."""
    rows = []
    for p in profile.pieces:
        rows.append((p.midpoint(), p.density(p.midpoint())))
        if p.hi is not None:
            rows.append((p.hi, p.density(p.hi)))
    return rows


def profile_csv(profile: DensityProfile, digits: int = 12) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["omega", "density"])
    for omega, f in profile_rows(profile):
        w.writerow([format_decimal(omega, digits), format_decimal(f, digits)])
    return buf.getvalue()
