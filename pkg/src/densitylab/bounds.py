"""Executable forms of the measure-bound machinery for good sets.

* ``f_value`` / ``st_points``: the piecewise linear function
  f(x) = (1 - 2d) x - lambda(A ∩ (p, x)) and its extreme points.
* ``check_lemmac`` / ``check_cl3``: exact checks of two inequalities that
  hold for every set, used as oracles in randomized runs.
* ``condition_c_witness`` and ``lemmaxy_oracle``: the interval-witness
  condition (C) and the lower bound it implies.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .density import density_at, density_extrema, min_upper_radius
from .exact_core import Q, below_zeta
from .intervals import Finding, Interval, IntervalSet, VerificationReport, normalize


def f_value(A, p, x, delta) -> Fraction:
    p, x, d = Q(p), Q(x), Q(delta)
    if x < p:
        raise ValueError("f is defined for x >= p")
    return (1 - 2 * d) * x - A.measure_within(p, x)


def _breakpoints(A, p, q) -> list[Fraction]:
    inner = [e for e in A.endpoints_within(p, q) if p < e < q]
    return [p, *inner, q]


@dataclass(frozen=True)
class StPoints:
    s: Fraction
    t: Fraction
    f_min: Fraction
    f_max: Fraction


def st_points(A, p, q, delta, verify: bool = True) -> StPoints:
    """Greatest minimizer s and least maximizer t of f on [p, q].

    f has slope 1 - 2d off A and -2d on A, never 0, so its extremes sit at
    breakpoints and are isolated.
    """
    p, q, d = Q(p), Q(q), Q(delta)
    if not p < q:
        raise ValueError("st_points needs p < q")
    xs = _breakpoints(A, p, q)
    vals = [f_value(A, p, x, d) for x in xs]
    lo, hi = min(vals), max(vals)
    s = max(x for x, v in zip(xs, vals) if v == lo)
    t = min(x for x, v in zip(xs, vals) if v == hi)
    out = StPoints(s, t, lo, hi)
    if verify:
        bad = st_violations(A, p, q, d, out)
        if bad:
            raise AssertionError(f"st_points postcondition failed at {bad[:3]}")
    return out


def st_violations(A, p, q, delta, st: StPoints) -> list[tuple[str, Fraction]]:
    """The four defining implications of s and t, checked at every breakpoint."""
    d = Q(delta)
    k = 1 - 2 * d
    bad = []

    def rel(x, y):
        return A.measure_within(x, y) / (y - x)

    for x in _breakpoints(A, p, q):
        if x < st.s and not rel(x, st.s) >= k:
            bad.append(("x<s", x))
        if st.s < x and not rel(st.s, x) < k:
            bad.append(("s<x", x))
        if x < st.t and not rel(x, st.t) < k:
            bad.append(("x<t", x))
        if st.t < x and not rel(st.t, x) >= k:
            bad.append(("t<x", x))
    return bad


def lemmac_hypothesis(A, c, gamma, delta) -> bool:
    """density(gamma) >= 1 - d and no smaller radius has a larger density."""
    d = Q(delta)
    top = density_at(A, c, gamma)
    if top < 1 - d:
        return False
    return density_extrema(A, c, max_radius=Q(gamma)).sup.value <= top


def check_lemmac(A, c, gamma, delta) -> VerificationReport:
    c, g, d = Q(c), Q(gamma), Q(delta)
    subject = f"dense tails at c={c}, gamma={g}"
    if not lemmac_hypothesis(A, c, g, d):
        return VerificationReport(subject, (Finding("hypothesis", "skip", c, g,
                                                    {"reason": "hypothesis not met"}),))
    k = 1 - 2 * d
    lo, hi = c - g, c + g
    inner = [e for e in A.endpoints_within(lo, hi) if lo < e < hi]
    findings = []
    # h(s) = lambda(A ∩ (s, hi)) - k (hi - s) is linear between endpoints and 0 at hi
    for s in [lo, *inner]:
        ok = A.measure_within(s, hi) >= k * (hi - s)
        findings.append(Finding("s-side", "ok" if ok else "violation", s, None))
    for t in [*inner, hi]:
        ok = A.measure_within(lo, t) >= k * (t - lo)
        findings.append(Finding("t-side", "ok" if ok else "violation", t, None))
    return VerificationReport(subject, tuple(findings))


def check_cl3(H, p, t, s, q, delta) -> VerificationReport:
    p, t, s, q, d = map(Q, (p, t, s, q, delta))
    subject = f"overlapping dense halves on ({p}, {q})"
    k = 1 - 2 * d

    def rel(x, y):
        return H.measure_within(x, y) / (y - x)

    if not (p <= t < s <= q and rel(p, s) >= k and rel(t, q) >= k):
        return VerificationReport(subject, (Finding("hypothesis", "skip", None, None,
                                                    {"reason": "hypothesis not met"}),))
    whole = rel(p, q)
    findings = [Finding("(1)", "ok" if whole >= k / (1 + 2 * d) else "violation", None, None,
                        {"density": whole, "bound": k / (1 + 2 * d)})]
    if whole <= (1 - d) / 2:
        bound = (1 - d) * k / (2 * d)
        mid = rel(t, s)
        findings.append(Finding("(2)", "ok" if mid >= bound else "violation", None, None,
                                {"density": mid, "bound": bound}))
    else:
        findings.append(Finding("(2)", "skip", None, None, {"reason": "density above (1-d)/2"}))
    return VerificationReport(subject, tuple(findings))


# --------------------------------------------------------------------------
# condition (C)


@dataclass(frozen=True)
class ConditionCWitness:
    outer: Interval
    per_u: tuple[tuple[Fraction, Interval, Fraction], ...]  # (u, I_beta(b), slack)


class _UpperTable:
    """Triangle radii at the endpoints of a set, computed once per centre."""

    def __init__(self, H, delta, window: Optional[Fraction]):
        self.H, self.d, self.window = H, Q(delta), window
        self._cache: dict[Fraction, Optional[Fraction]] = {}

    def radius(self, a) -> Optional[Fraction]:
        if a not in self._cache:
            self._cache[a] = min_upper_radius(self.H, a, self.d, self.window)
        return self._cache[a]

    def intervals_containing(self, x, y, lo, hi) -> list[Interval]:
        """Triangle intervals centred at endpoints in [lo, hi] containing (x, y)."""
        out = []
        for a in self.H.endpoints_within(lo, hi):
            g = self.radius(a)
            if g is not None and a - g <= x and y <= a + g:
                out.append(Interval.centered(a, g))
        return out


def _search_reach(H, delta) -> Fraction:
    from .periodic import PeriodicSet, horizon

    if isinstance(H, PeriodicSet):
        return 2 * horizon(H, delta) + 2
    b = H.bounds() if hasattr(H, "bounds") else None
    return (b[1] - b[0]) if b else Fraction(1)


def condition_c_witness(H, w, v, delta, u_grid: Optional[Sequence] = None,
                        table: Optional[_UpperTable] = None):
    """Witness bundle for condition (C) on (w, v), or a Finding explaining why not.

    The outer interval takes the least admissible centre a and each inner one
    the greatest admissible centre b, which maximizes every slack b - a.
    """
    w, v, d = Q(w), Q(v), Q(delta)
    if not w < v:
        raise ValueError("need w < v")
    if H.measure_within(w, v) > (1 - d) / 2 * (v - w):
        return Finding("(C)", "skip", None, None, {"reason": "density above (1-d)/2", "w": w, "v": v})
    from .periodic import PeriodicSet

    reach = _search_reach(H, d)
    if table is None:
        table = _UpperTable(H, d, reach if isinstance(H, PeriodicSet) else None)
    outer = table.intervals_containing(w, v, w - reach, v + reach)
    if not outer:
        return Finding("(C)", "violation", None, None, {"reason": "no outer interval", "w": w, "v": v})
    I_a = min(outer, key=lambda I: I.center)
    a = I_a.center
    if u_grid is None:
        u_grid = [w] + [e for e in H.endpoints_within(w, v) if w < e < v]
    per_u = []
    for u in u_grid:
        u = Q(u)
        inner = table.intervals_containing(u, v, u - reach, v + reach)
        if not inner:
            return Finding("(C)", "violation", u, None, {"reason": "no inner interval", "w": w, "v": v})
        I_b = max(inner, key=lambda I: I.center)
        need = v - u - 2 / (1 - d) * H.measure_within(u, v)
        slack = (I_b.center - a) - need
        if slack < 0:
            return Finding("(C)", "violation", u, None,
                           {"reason": "negative slack", "slack": slack, "w": w, "v": v})
        per_u.append((u, I_b, slack))
    return ConditionCWitness(I_a, tuple(per_u))


def slack_from_measures(H, a, b, u, v, delta) -> Fraction:
    d = Q(delta)
    return (Q(b) - Q(a)) - (Q(v) - Q(u) - 2 / (1 - d) * H.measure_within(Q(u), Q(v)))


def lower_bound_constant(delta) -> Fraction:
    d = Q(delta)
    return (1 - d) * (1 + 2 * d) / (1 + 3 * d)


def finite_cover(H: IntervalSet, p, q, delta) -> Optional[list[Interval]]:
    """Intervals with density >= 1 - d covering (p, q): the components of H
    plus one triangle interval per complement gap meeting [p, q]."""
    from .periodic import covers

    p, q, d = Q(p), Q(q), Q(delta)
    table = _UpperTable(H, d, None)
    out = [Interval(iv.left, iv.right) for iv in H.intervals if iv.right > p and iv.left < q]
    bounds = H.bounds()
    if bounds is None:
        return None
    ivs = H.intervals
    for left, right in zip(ivs, ivs[1:]):
        x, s = left.right, right.left
        if s < p or x > q:
            continue
        found = table.intervals_containing(x, s, bounds[0], bounds[1])
        if not found:
            return None
        out.append(found[0])
    return out if covers(out, p, q, closed=False) else None


def lemmaxy_oracle(H: IntervalSet, p, q, delta, seed: int = 0, random_windows: int = 20,
                   core: Optional[tuple] = None) -> VerificationReport:
    """End-to-end check of the bound lambda(H) >= c(d) (q - p).

    The hypotheses (threshold on d, a finite cover, condition (C) on all
    endpoint windows plus seeded random windows) are certified first; only
    then is the conclusion asserted.  ``core`` optionally names a sub-window
    whose measure is reported alongside, so the contribution of the margin
    around it (the boundary correction) is explicit.
    """
    p, q, d = Q(p), Q(q), Q(delta)
    subject = f"measure bound on ({p}, {q}) at delta={d}"
    findings = []
    if not below_zeta(6, d):
        findings.append(Finding("threshold", "skip", None, None, {"reason": "delta >= zeta_6"}))
        return VerificationReport(subject, tuple(findings), "hypotheses-unmet")
    cover = finite_cover(H, p, q, d)
    if cover is None:
        findings.append(Finding("cover", "skip", None, None, {"reason": "no finite cover found"}))
        return VerificationReport(subject, tuple(findings), "hypotheses-unmet")
    findings.append(Finding("cover", "ok", None, None, {"intervals": len(cover)}))
    pts = [p] + [e for e in H.endpoints_within(p, q) if p < e < q] + [q]
    rng = random.Random(seed)
    windows = [(x, y) for i, x in enumerate(pts) for y in pts[i + 1:]]
    for _ in range(random_windows):
        x = p + Fraction(rng.randrange(0, 10**6), 10**6) * (q - p)
        y = p + Fraction(rng.randrange(0, 10**6), 10**6) * (q - p)
        if x != y:
            windows.append((min(x, y), max(x, y)))
    table = _UpperTable(H, d, None)
    checked = 0
    for w, v in windows:
        res = condition_c_witness(H, w, v, d, table=table)
        if isinstance(res, Finding):
            if res.kind == "violation":
                findings.append(res)
                return VerificationReport(subject, tuple(findings), "hypotheses-unmet")
            continue
        checked += 1
    findings.append(Finding("(C)", "ok", None, None,
                            {"windows": len(windows), "with_witness": checked,
                             "coverage": "endpoint grid in [w, v) plus w"}))
    total = H.measure
    bound = lower_bound_constant(d) * (q - p)
    values = {"measure": total, "bound": bound}
    if core is not None:
        x, y = map(Q, core)
        inner = H.measure_within(x, y)
        values.update(core_measure=inner, core_bound=lower_bound_constant(d) * (y - x),
                      boundary_correction=total - inner)
    ok = total >= bound
    findings.append(Finding("conclusion", "ok" if ok else "violation", None, None, values))
    # the bare "violation" kind already fails the report; status names the outcome
    return VerificationReport(subject, tuple(findings), "holds" if ok else "VIOLATION")


# --------------------------------------------------------------------------
# seeded random instances


def random_interval_set(rng: random.Random, n_max: int = 6, span: int = 4,
                        den: int = 24) -> IntervalSet:
    """Random finite union of open intervals with endpoints in (1/den) Z ∩ [0, span]."""
    n = rng.randint(1, n_max)
    pts = sorted(rng.sample(range(0, span * den + 1), 2 * n))
    return normalize(Interval(Fraction(pts[2 * i], den), Fraction(pts[2 * i + 1], den))
                     for i in range(n))


def random_delta(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 49), 100)


@dataclass
class PropertyRun:
    name: str
    cases: int = 0
    failures: int = 0
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.cases > 0


def run_lemmac(seed: int, cases: int = 1000) -> PropertyRun:
    """Instances where the hypothesis holds, built around random endpoints."""
    rng = random.Random(seed)
    run = PropertyRun("lemmac")
    while run.cases < cases:
        A = random_interval_set(rng)
        d = Fraction(rng.choice([25, 27, 20, 30, 10, 40]), 100)
        ends = A.endpoints()
        c = rng.choice(ends) if rng.random() < 0.7 else Fraction(rng.randint(0, 96), 24)
        gamma = min_upper_radius(A, c, d)
        if gamma is None:
            gamma = Fraction(rng.randint(1, 48), 24)
        if not lemmac_hypothesis(A, c, gamma, d):
            run.skipped += 1
            continue
        run.cases += 1
        if not check_lemmac(A, c, gamma, d).passed:
            run.failures += 1
    return run


def _cl3_targeted(rng: random.Random):
    """A set concentrated on (t, s) inside (0, 1): the regime where the whole
    window is sparse yet both overlapping halves are dense, so part (2) applies."""
    den = 240
    l = Fraction(rng.randint(80, 92), den)
    t = Fraction(rng.randint(int((1 - 2 * l) * den), int(l * den)), den)
    s = t + l
    ivs = [Interval(t, s)]
    for _ in range(rng.randint(0, 3)):  # punch small holes
        x = t + Fraction(rng.randint(1, int(l * den) - 2), den)
        ivs = [piece for iv in ivs for piece in _cut(iv, x, x + Fraction(1, den))]
    for _ in range(rng.randint(0, 2)):  # small pieces outside
        x = Fraction(rng.randint(0, den - 2), den)
        if x + Fraction(1, den) <= t or x >= s:
            ivs.append(Interval(x, x + Fraction(1, den)))
    return normalize(ivs), (Fraction(0), t, s, Fraction(1))


def _cut(iv: Interval, x, y) -> list[Interval]:
    return [piece for piece in (Interval(iv.left, max(iv.left, min(x, iv.right))),
                                Interval(min(iv.right, max(y, iv.left)), iv.right))
            if not piece.is_empty()]


def run_cl3(seed: int, cases: int = 1000) -> PropertyRun:
    """Half uniform instances, half targeted ones exercising part (2)."""
    rng = random.Random(seed)
    run = PropertyRun("cl3")
    second = 0
    while run.cases < cases:
        if rng.random() < 0.5:
            H, (p, t, s, q) = _cl3_targeted(rng)
            d = Fraction(1, 4)
        else:
            H = random_interval_set(rng, n_max=8, span=3)
            d = rng.choice([Fraction(1, 4), Fraction(27, 100)])
            p, t, s, q = sorted(Fraction(rng.randint(0, 72), 24) for _ in range(4))
            if not t < s:
                continue
        rep = check_cl3(H, p, t, s, q, d)
        if rep.findings[0].kind == "skip":
            run.skipped += 1
            continue
        run.cases += 1
        second += rep.findings[1].kind != "skip"
        if not rep.passed:
            run.failures += 1
    run.name = f"cl3 ({second} cases exercising (2))"
    return run


def run_st_points(seed: int, cases: int = 1000) -> PropertyRun:
    rng = random.Random(seed)
    run = PropertyRun("st_points")
    for _ in range(cases):
        A = random_interval_set(rng)
        d = random_delta(rng)
        p = Fraction(rng.randint(0, 48), 24)
        q = p + Fraction(rng.randint(1, 60), 24)
        st = st_points(A, p, q, d, verify=False)
        run.cases += 1
        if st_violations(A, p, q, d, st):
            run.failures += 1
    return run
