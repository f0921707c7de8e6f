"""Finite unions of open intervals, half-line sets, configurations and reports.

Sets are open.  Abutting intervals such as (0,1) and (1,2) are kept apart:
the shared point is missing from the set and counts as an endpoint.
"""

from __future__ import annotations

import json
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate
from typing import Iterable, Sequence

from .exact_core import Q, format_rational, parse_rational


@dataclass(frozen=True, order=True)
class Interval:
    """The open interval (left, right); empty when left == right."""

    left: Fraction
    right: Fraction

    def __post_init__(self):
        object.__setattr__(self, "left", Q(self.left))
        object.__setattr__(self, "right", Q(self.right))
        if self.left > self.right:
            raise ValueError(f"interval with left > right: ({self.left}, {self.right})")

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    @property
    def center(self) -> Fraction:
        return (self.left + self.right) / 2

    @property
    def radius(self) -> Fraction:
        return (self.right - self.left) / 2

    def is_empty(self) -> bool:
        return self.left == self.right

    def contains(self, x) -> bool:
        return self.left < x < self.right

    def covers(self, other: "Interval") -> bool:
        """True when ``other`` (as an open set) lies inside self."""
        return self.left <= other.left and other.right <= self.right

    @classmethod
    def centered(cls, center, radius) -> "Interval":
        c, r = Q(center), Q(radius)
        return cls(c - r, c + r)

    def __repr__(self):
        return f"({format_rational(self.left)}, {format_rational(self.right)})"


def _as_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    a, b = x
    return Interval(Q(a), Q(b))


class IntervalSet:
    """Normalized finite disjoint union of nonempty open intervals."""

    __slots__ = ("intervals", "_lefts", "_rights", "_prefix", "_endpoints")

    def __init__(self, intervals: Iterable = ()):
        ivs = tuple(_as_interval(x) for x in intervals)
        for iv in ivs:
            if iv.is_empty():
                raise ValueError("IntervalSet holds nonempty intervals only; use normalize()")
        for u, v in zip(ivs, ivs[1:]):
            if not u.right <= v.left:
                raise ValueError(f"intervals overlap or are unsorted: {u} {v}; use normalize()")
        self.intervals = ivs
        self._lefts = [iv.left for iv in ivs]
        self._rights = [iv.right for iv in ivs]
        self._prefix = [Fraction(0), *accumulate(iv.length for iv in ivs)]
        pts: list[Fraction] = []
        for iv in ivs:
            if not pts or pts[-1] != iv.left:
                pts.append(iv.left)
            pts.append(iv.right)
        self._endpoints = pts

    # value semantics
    def __eq__(self, other):
        return isinstance(other, IntervalSet) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __repr__(self):
        return "IntervalSet[" + ", ".join(map(repr, self.intervals)) + "]"

    @property
    def measure(self) -> Fraction:
        return self._prefix[-1]

    def endpoints(self) -> list[Fraction]:
        return list(self._endpoints)

    def endpoints_within(self, lo, hi) -> list[Fraction]:
        pts = self._endpoints
        return pts[bisect_left(pts, lo):bisect_right(pts, hi)]

    def contains(self, x) -> bool:
        i = bisect_left(self._lefts, x) - 1
        return i >= 0 and x < self._rights[i]

    def cumulative(self, t) -> Fraction:
        """Measure of the set left of ``t``."""
        i = bisect_right(self._lefts, t)
        if i == 0:
            return Fraction(0)
        over = self._rights[i - 1] - t
        return self._prefix[i] - over if over > 0 else self._prefix[i]

    def measure_within(self, x, y) -> Fraction:
        if x > y:
            raise ValueError("measure_within needs x <= y")
        return self.cumulative(y) - self.cumulative(x)

    @property
    def finite(self) -> bool:
        return True

    def tail_limit(self) -> Fraction:
        return Fraction(0)

    def bounds(self) -> tuple[Fraction, Fraction] | None:
        if not self.intervals:
            return None
        return self._lefts[0], self._rights[-1]

    def restrict(self, x, y) -> "IntervalSet":
        """The set intersected with the open window (x, y)."""
        out = []
        for iv in self.intervals:
            a, b = max(iv.left, x), min(iv.right, y)
            if a < b:
                out.append(Interval(a, b))
        return IntervalSet(out)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return normalize([*self.intervals, *other.intervals])


def normalize(raw: Iterable) -> IntervalSet:
    """Drop empty intervals, sort, and merge overlapping (not abutting) ones."""
    ivs = sorted(iv for iv in map(_as_interval, raw) if not iv.is_empty())
    out: list[Interval] = []
    for iv in ivs:
        if out and iv.left < out[-1].right:
            if iv.right > out[-1].right:
                out[-1] = Interval(out[-1].left, iv.right)
        else:
            out.append(iv)
    return IntervalSet(out)


def merge_closure(s: IntervalSet) -> IntervalSet:
    """Merge abutting intervals too, filling the isolated complement points."""
    out: list[Interval] = []
    for iv in s.intervals:
        if out and iv.left <= out[-1].right:
            out[-1] = Interval(out[-1].left, max(iv.right, out[-1].right))
        else:
            out.append(iv)
    return IntervalSet(out)


def affine(s: IntervalSet, scale, shift) -> IntervalSet:
    """Image of ``s`` under x -> scale * x + shift, scale > 0."""
    k, c = Q(scale), Q(shift)
    if k <= 0:
        raise ValueError("affine scale must be positive")
    return IntervalSet(Interval(k * iv.left + c, k * iv.right + c) for iv in s.intervals)


def reflect(s: IntervalSet, center=0) -> IntervalSet:
    """Image of ``s`` under x -> 2 * center - x."""
    z = 2 * Q(center)
    return IntervalSet(Interval(z - iv.right, z - iv.left) for iv in reversed(s.intervals))


def complement_within(s: IntervalSet, x, y) -> IntervalSet:
    """Open complement of s inside (x, y); endpoints of s are excluded."""
    x, y = Q(x), Q(y)
    if not x < y:
        raise ValueError("complement_within needs x < y")
    out = []
    cur = x
    for iv in s.restrict(x, y).intervals:
        if cur < iv.left:
            out.append(Interval(cur, iv.left))
        cur = max(cur, iv.right)
    if cur < y:
        out.append(Interval(cur, y))
    return IntervalSet(out)


class RaySet:
    """(-inf, left) u body u (right, inf), each ray optional.

    A ray end is always an endpoint of the set even when a body interval
    starts right there (that point is then an isolated complement point).
    """

    __slots__ = ("body", "left", "right", "_endpoints")

    def __init__(self, body: IntervalSet, left=None, right=None):
        self.body = body if isinstance(body, IntervalSet) else IntervalSet(body)
        self.left = None if left is None else Q(left)
        self.right = None if right is None else Q(right)
        b = self.body.bounds()
        if b is not None:
            if self.left is not None and b[0] < self.left:
                raise ValueError("body must lie right of the left ray")
            if self.right is not None and b[1] > self.right:
                raise ValueError("body must lie left of the right ray")
        if self.left is not None and self.right is not None and self.right < self.left:
            raise ValueError("rays overlap")
        pts = self.body.endpoints()
        if self.left is not None and (not pts or pts[0] != self.left):
            pts.insert(0, self.left)
        if self.right is not None and (not pts or pts[-1] != self.right):
            pts.append(self.right)
        self._endpoints = pts

    def __eq__(self, other):
        return (isinstance(other, RaySet) and type(self) is type(other)
                and (self.body, self.left, self.right) == (other.body, other.left, other.right))

    def __hash__(self):
        return hash((self.body, self.left, self.right))

    def __repr__(self):
        return f"{type(self).__name__}(left={self.left}, body={self.body!r}, right={self.right})"

    @property
    def finite(self) -> bool:
        return True

    def endpoints(self) -> list[Fraction]:
        return list(self._endpoints)

    def endpoints_within(self, lo, hi) -> list[Fraction]:
        pts = self._endpoints
        return pts[bisect_left(pts, lo):bisect_right(pts, hi)]

    def contains(self, x) -> bool:
        if self.left is not None and x < self.left:
            return True
        if self.right is not None and x > self.right:
            return True
        return self.body.contains(x)

    def measure_within(self, x, y) -> Fraction:
        if x > y:
            raise ValueError("measure_within needs x <= y")
        total = self.body.measure_within(x, y)
        if self.left is not None:
            total += max(Fraction(0), min(y, self.left) - x)
        if self.right is not None:
            total += max(Fraction(0), y - max(x, self.right))
        return total

    def tail_limit(self) -> Fraction:
        return Fraction((self.left is not None) + (self.right is not None), 2)


class Configuration(RaySet):
    """(-inf, 0) together with a body of intervals in (0, inf)."""

    __slots__ = ()

    def __init__(self, body):
        body = body if isinstance(body, IntervalSet) else IntervalSet(body)
        if not body.intervals:
            raise ValueError("a configuration needs at least one interval")
        if body.intervals[0].left <= 0:
            raise ValueError("configuration endpoints must be positive")
        super().__init__(body, left=Fraction(0))

    def normalized(self) -> "Configuration":
        """Rescale so that the last endpoint is 1."""
        last = self.body.intervals[-1].right
        return Configuration(affine(self.body, 1 / last, 0))

    def scaled(self, scale) -> "Configuration":
        return Configuration(affine(self.body, scale, 0))


# --------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Finding:
    """One line of a verification report.

    ``kind`` is "B" or "W" for a witness radius on the upper or lower side,
    "ok" for a satisfied condition, "violation", "skip" (a hypothesis or
    precondition was not met), "undecided" or "info".
    """

    label: str
    kind: str
    point: Fraction | None = None
    omega: Fraction | None = None
    values: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "endpoint": None if self.point is None else format_rational(self.point),
            "omega": None if self.omega is None else format_rational(self.omega),
            "side": self.kind,
        }
        if self.values:
            out["values"] = {k: _jsonable(v) for k, v in self.values.items()}
        return out


def _jsonable(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, Interval):
        return [format_rational(v.left), format_rational(v.right)]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    findings: tuple[Finding, ...] = ()
    status: str | None = None

    @property
    def passed(self) -> bool:
        return not any(f.kind == "violation" for f in self.findings)

    @property
    def violations(self) -> list[Finding]:
        return [f for f in self.findings if f.kind == "violation"]

    def by_kind(self, kind: str) -> list[Finding]:
        return [f for f in self.findings if f.kind == kind]

    def to_json(self) -> dict:
        out = {"subject": self.subject, "passed": self.passed,
               "findings": [f.to_json() for f in self.findings]}
        if self.status is not None:
            out["status"] = self.status
        return out


# --------------------------------------------------------------------------
# JSON


def set_to_json(s) -> dict:
    if isinstance(s, RaySet):
        if s.right is not None or s.left != 0:
            raise ValueError("only configurations and plain interval sets serialize")
        body, halfline = s.body, True
    else:
        body, halfline = s, False
    return {"halfline": halfline,
            "intervals": [[format_rational(iv.left), format_rational(iv.right)] for iv in body]}


def set_from_json(obj: dict):
    """Parse the set schema; raise ValueError on malformed or unsorted input."""
    if not isinstance(obj, dict) or "intervals" not in obj:
        raise ValueError("expected an object with an 'intervals' list")
    halfline = obj.get("halfline", False)
    if not isinstance(halfline, bool):
        raise ValueError("'halfline' must be a boolean")
    ivs = []
    for pair in obj["intervals"]:
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair)):
            raise ValueError(f"interval must be a pair of rational strings: {pair!r}")
        a, b = parse_rational(pair[0]), parse_rational(pair[1])
        if not a < b:
            raise ValueError(f"empty or reversed interval {pair!r}")
        ivs.append(Interval(a, b))
    body = IntervalSet(ivs)
    return Configuration(body) if halfline else body


def dumps_set(s) -> str:
    return json.dumps(set_to_json(s), indent=2) + "\n"


def loads_set(text: str):
    return set_from_json(json.loads(text))


def sorted_unique(xs: Sequence[Fraction]) -> list[Fraction]:
    return sorted(set(xs))
