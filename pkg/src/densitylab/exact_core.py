"""Exact rationals, integer polynomials, Sturm root isolation and the zeta table.

Every scalar in the package is a :class:`fractions.Fraction`.  Polynomials
have integer coefficients stored lowest degree first.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

Rational = Fraction

DEFAULT_TOL = Fraction(1, 10**12)


def Q(value) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings to a Fraction (never floats)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"refusing inexact value {value!r}; pass an int, Fraction or 'num/den'")


def parse_rational(text: str) -> Fraction:
    """Parse "n", "num/den" or a finite decimal literal such as "0.27"."""
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    if "/" in s:
        num, _, den = s.partition("/")
        n, d = int(num), int(den)
        if d == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(n, d)
    if any(c in s for c in "eE") or s.lower() in ("inf", "-inf", "nan"):
        raise ValueError(f"not an exact rational literal: {text!r}")
    return Fraction(s)


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_decimal(x: Fraction, digits: int = 12) -> str:
    """Round-half-even decimal rendering with ``digits`` places after the point."""
    scaled = x * 10**digits
    q, r = divmod(scaled.numerator, scaled.denominator)
    twice = 2 * r
    if twice > scaled.denominator or (twice == scaled.denominator and q % 2 == 1):
        q += 1
    sign = "-" if q < 0 else ""
    q = abs(q)
    if digits == 0:
        return f"{sign}{q}"
    whole, frac = divmod(q, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def default_tol() -> Fraction:
    """Root tolerance, overridable through ``DENSITYLAB_TOL``."""
    env = os.environ.get("DENSITYLAB_TOL")
    if env:
        tol = parse_rational(env)
        if tol <= 0:
            raise ValueError("DENSITYLAB_TOL must be positive")
        return tol
    return DEFAULT_TOL


def sign(x) -> int:
    return (x > 0) - (x < 0)


# --------------------------------------------------------------------------
# polynomials


class IntPolynomial:
    """Integer-coefficient polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int]):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_high(cls, *coeffs: int) -> "IntPolynomial":
        """Build from coefficients written highest degree first, as usually printed."""
        return cls(list(reversed(coeffs)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x) -> Fraction:
        return eval_poly(self, Q(x))

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            body = ("" if mag == 1 and k else str(mag)) + ("x" if k else "") + (f"^{k}" if k > 1 else "")
            terms.append(("-" if c < 0 else "+") + body)
        out = " ".join(t[0] + " " + t[1:] for t in terms)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]


def eval_poly(p: IntPolynomial, x: Fraction) -> Fraction:
    """Horner evaluation, exact."""
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


# rational-coefficient helpers used by the Sturm chain (lists, lowest first)

def _trim(cs: list) -> list:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _derivative(cs: Sequence) -> list:
    return [k * cs[k] for k in range(1, len(cs))]


def _divmod(num: Sequence, den: Sequence) -> tuple[list, list]:
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    while len(num) >= len(den) and num:
        shift = len(num) - len(den)
        factor = num[-1] / den[-1]
        quot[shift] = factor
        for i, d in enumerate(den):
            num[i + shift] -= factor * d
        num.pop()
        _trim(num)
    return _trim(quot), num


def _gcd(a: Sequence, b: Sequence) -> list:
    a, b = _trim(list(map(Fraction, a))), _trim(list(map(Fraction, b)))
    while b:
        a, b = b, _divmod(a, b)[1]
    return [c / a[-1] for c in a] if a else a


def _eval(cs: Sequence, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _to_int_poly(cs: Sequence[Fraction]) -> IntPolynomial:
    from math import lcm

    den = 1
    for c in cs:
        den = lcm(den, Fraction(c).denominator)
    return IntPolynomial([int(Fraction(c) * den) for c in cs])


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    g = _gcd(p.coeffs, _derivative(p.coeffs))
    if len(g) <= 1:
        return p
    quot, rem = _divmod(p.coeffs, g)
    assert not rem
    return _to_int_poly(quot)


def sturm_sequence(p: IntPolynomial) -> list[list[Fraction]]:
    seq = [list(map(Fraction, p.coeffs)), list(map(Fraction, _derivative(p.coeffs)))]
    while seq[-1]:
        rem = _divmod(seq[-2], seq[-1])[1]
        if not rem:
            break
        seq.append([-c for c in rem])
    return [s for s in seq if s]


def _sign_changes(seq: list[list[Fraction]], x: Fraction) -> int:
    signs = [sign(_eval(s, x)) for s in seq]
    signs = [s for s in signs if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_roots(p: IntPolynomial, low: Fraction, high: Fraction) -> int:
    """Number of distinct real roots in (low, high]."""
    sq = squarefree_part(p)
    seq = sturm_sequence(sq)
    return _sign_changes(seq, Q(low)) - _sign_changes(seq, Q(high))


def cauchy_bound(p: IntPolynomial) -> Fraction:
    lead = abs(p.coeffs[-1])
    return 1 + max((Fraction(abs(c), lead) for c in p.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class RootBracket:
    """Open bracket holding exactly one simple root of ``polynomial``.

    Endpoints carry opposite signs.  ``exact`` is set when bisection lands
    on a rational root.
    """

    low: Fraction
    high: Fraction
    polynomial: IntPolynomial
    exact: Fraction | None = None

    def __post_init__(self):
        if not self.low < self.high:
            raise ValueError("bracket needs low < high")

    def contains(self, x) -> bool:
        return self.low < Q(x) < self.high


def isolate_roots(p: IntPolynomial) -> list[RootBracket]:
    """One disjoint bracket per distinct real root, ordered left to right."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    if p.degree == 0:
        return []
    sq = squarefree_part(p)
    seq = sturm_sequence(sq)
    bound = cauchy_bound(sq)
    out: list[RootBracket] = []

    def changes(x):
        return _sign_changes(seq, x)

    stack = [(-bound, bound, changes(-bound), changes(bound))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append(RootBracket(lo, hi, sq))
            continue
        mid = _split_point(seq[0], lo, hi)
        vmid = changes(mid)
        stack.append((lo, mid, vlo, vmid))
        stack.append((mid, hi, vmid, vhi))
    out.sort(key=lambda b: b.low)
    return out


def _split_point(cs, lo: Fraction, hi: Fraction) -> Fraction:
    # split points are never roots, so every final bracket has a sign change
    for num, den in ((1, 2), (1, 3), (2, 3), (2, 5), (3, 5), (3, 7), (4, 7)):
        x = lo + (hi - lo) * num / den
        if _eval(cs, x) != 0:
            return x
    raise AssertionError("polynomial vanishes at too many split points")


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with least denominator strictly inside (lo, hi)."""
    if not lo < hi:
        raise ValueError("empty interval")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    fl = lo.numerator // lo.denominator
    if fl + 1 < hi:
        return Fraction(fl + 1)
    # (lo, hi) sits inside [fl, fl + 1]; recurse on the continued-fraction tail
    if lo == fl:
        tail = 1 / (hi - fl)
        return fl + 1 / Fraction(tail.numerator // tail.denominator + 1)
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl))


def _probe(p: IntPolynomial, lo: Fraction, hi: Fraction) -> Fraction | None:
    x = simplest_between(lo, hi)
    return x if eval_poly(p, x) == 0 else None


def refine_root(b: RootBracket, tol: Fraction | None = None) -> Fraction:
    """Bisect ``b`` to width <= tol and return the midpoint (or the exact root)."""
    tol = default_tol() if tol is None else Q(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if b.exact is not None:
        return b.exact
    p = b.polynomial
    lo, hi = b.low, b.high
    slo = sign(eval_poly(p, lo))
    while hi - lo > tol:
        hit = _probe(p, lo, hi)
        if hit is not None:
            return hit
        mid = (lo + hi) / 2
        sm = sign(eval_poly(p, mid))
        if sm == 0:
            return mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def refine_bracket(b: RootBracket, tol: Fraction) -> RootBracket:
    """Like :func:`refine_root` but keep the certified bracket."""
    if b.exact is not None:
        return b
    p = b.polynomial
    lo, hi = b.low, b.high
    slo = sign(eval_poly(p, lo))
    while hi - lo > tol:
        mid = (lo + hi) / 2
        sm = sign(eval_poly(p, mid))
        if sm == 0:
            return RootBracket(lo, hi, p, exact=mid)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return RootBracket(lo, hi, p)


# --------------------------------------------------------------------------
# the zeta table

ZETA_POLYNOMIALS: dict[int, IntPolynomial] = {
    1: IntPolynomial.from_high(8, 8, 1, -1),
    2: IntPolynomial.from_high(8, -16, 0, 1),
    3: IntPolynomial.from_high(4, 10, -3),
    4: IntPolynomial.from_high(4, -6, 5, -1),
    5: IntPolynomial.from_high(4, -12, 3),
    6: IntPolynomial.from_high(8, -8, -2, 1),
    7: IntPolynomial.from_high(2, 3, -1),
}

# earlier bounds on the same constant
PRIOR_POLYNOMIALS: dict[str, IntPolynomial] = {
    "szenes_lower": IntPolynomial.from_high(4, 2, 3, -1),
    "szenes_upper": IntPolynomial.from_high(8, 4, 2, -1),
    "cgo_upper": IntPolynomial.from_high(2, 2, 3, -1),
}

_HALF = Fraction(1, 2)


def root_in(p: IntPolynomial, low: Fraction, high: Fraction) -> RootBracket:
    """Bracket (low, high) for the unique root of ``p`` there; raise otherwise."""
    sq = squarefree_part(p)
    if eval_poly(sq, low) == 0 or eval_poly(sq, high) == 0:
        raise ValueError(f"{p} vanishes at a bracket end")
    n = count_roots(sq, low, high)
    if n != 1:
        raise ValueError(f"{p} has {n} real roots in ({low}, {high}), expected exactly one")
    return RootBracket(low, high, sq)


def zeta_bracket(i: int, tol: Fraction | None = None) -> RootBracket:
    if i not in ZETA_POLYNOMIALS:
        raise ValueError(f"zeta index must be 1..7, got {i}")
    b = root_in(ZETA_POLYNOMIALS[i], Fraction(0), _HALF)
    return refine_bracket(b, default_tol() if tol is None else Q(tol))


def zeta(i: int, tol: Fraction | None = None) -> Fraction:
    """zeta_i refined to ``tol``: the root of the i-th table polynomial in (0, 1/2)."""
    if i not in ZETA_POLYNOMIALS:
        raise ValueError(f"zeta index must be 1..7, got {i}")
    return refine_root(root_in(ZETA_POLYNOMIALS[i], Fraction(0), _HALF), tol)


def prior_root(name: str, tol: Fraction | None = None) -> Fraction:
    return refine_root(root_in(PRIOR_POLYNOMIALS[name], Fraction(0), _HALF), tol)


def below_zeta(i: int, delta) -> bool:
    """Exact test of ``0 < delta < zeta_i``.

    Each table polynomial has a single root in (0, 1/2) and is nonzero at 0,
    so the test reduces to a sign comparison with the value at 0.
    """
    d = Q(delta)
    if not 0 < d:
        return False
    if d >= _HALF:
        return False
    p = ZETA_POLYNOMIALS[i]
    return sign(eval_poly(p, d)) == sign(eval_poly(p, Fraction(0)))


def _row(*conds: Callable[[Fraction], bool]) -> Callable[[Fraction], list[bool]]:
    return lambda d: [c(d) for c in conds]


# Inequalities each row guarantees for 0 < delta < zeta_i; all evaluated over Q.
ZETA_ROWS: dict[int, Callable[[Fraction], list[bool]]] = {
    1: _row(lambda d: 4 * d**2 / (1 - 2 * d) < (1 - d) * (1 + 2 * d) / (1 + 3 * d)),
    2: _row(lambda d: 1 - 3 * d - 2 * d**2 != 0
            and 2 / (1 - 2 * d) - (1 - 2 * d) ** 2 / (1 - 3 * d - 2 * d**2) > 0),
    3: _row(lambda d: 1 < (1 - 2 * d) / (4 * d**2) * (1 - Fraction(4, 3) * d),
            lambda d: (-4 * d**2 + 6 * d - 1) * (1 - d) >= 8 * d**3 + 4 * d - 1),
    4: _row(lambda d: 4 * d**3 < (1 - 2 * d) * (1 - 3 * d)),
    5: _row(lambda d: 4 * d**2 - 12 * d + 3 > 0),
    6: _row(lambda d: 2 * d >= 2 * d / (1 - 2 * d) - Fraction(1, 2) / (1 - d)),
    7: _row(lambda d: 1 - 3 * d - 2 * d**2 > 0,
            lambda d: d < (1 - 2 * d) / (1 + 2 * d),
            lambda d: (1 - d) * (1 - 2 * d) / (2 * d) > 2 * d,
            lambda d: -14 * d**2 + 15 * d - 3 <= 2 * (4 * d - 1) * (1 - 2 * d)),
}


def zeta_row_conditions(i: int, delta) -> list[bool]:
    d = Q(delta)
    if not 0 < d < _HALF:
        raise ValueError("delta must lie in (0, 1/2)")
    return ZETA_ROWS[i](d)


def check_zeta_row(i: int, delta) -> bool:
    """True iff every inequality of table row ``i`` holds at ``delta``."""
    return all(zeta_row_conditions(i, delta))
