"""Configuration families: the three-interval periodic family S_N / C_N,
equal-interval layouts from earlier work, and the symmetric good-set example."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .density import density_at
from .exact_core import Q
from .intervals import (Configuration, Finding, Interval, IntervalSet, VerificationReport,
                        affine)


@dataclass(frozen=True)
class KurkaParams:
    delta: Fraction
    alpha: Fraction
    beta: Fraction
    phi: Fraction
    psi: Fraction
    m: Fraction
    above_root: bool  # 8d^3 + 8d^2 + d - 1 > 0
    upper_window: bool  # 4d^2 + 2d - 1 <= 0
    lower_window: bool  # 4d^2 - 6d + 1 <= 0

    @property
    def valid(self) -> bool:
        return self.above_root and self.upper_window and self.lower_window and self.alpha > 0

    @property
    def ends(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """(k_i, l_i) for the three intervals of one period."""
        k2 = self.phi + self.psi
        l2 = k2 + self.alpha
        k3 = l2 + self.beta
        return ((Fraction(0), self.phi), (k2, l2), (k3, k3 + self.alpha))

    @property
    def period_measure(self) -> Fraction:
        return self.phi + 2 * self.alpha


def kurka_params(delta) -> KurkaParams:
    d = Q(delta)
    if not 0 < d < Fraction(1, 2):
        raise ValueError("delta must lie in (0, 1/2)")
    den = 1 + 3 * d
    return KurkaParams(
        delta=d,
        alpha=(1 + 2 * d - 4 * d * d) / (4 * den),
        beta=2 * d * d / den,
        phi=1 / (2 * den),
        psi=d / den,
        m=4 * d * d / (den + 4 * d * d),
        above_root=8 * d ** 3 + 8 * d ** 2 + d - 1 > 0,
        upper_window=4 * d * d + 2 * d - 1 <= 0,
        lower_window=4 * d * d - 6 * d + 1 <= 0,
    )


def kurka_sn(delta, n: int) -> IntervalSet:
    """N copies of the three-interval period followed by a final (0, phi) block."""
    if n < 1:
        raise ValueError("N must be a positive integer")
    p = kurka_params(delta)
    ivs = []
    for shift in range(n):
        for k, l in p.ends:
            ivs.append(Interval(shift + k, shift + l))
    ivs.append(Interval(Fraction(n), n + p.phi))
    return IntervalSet(ivs)


def kurka_map(delta, n: int) -> tuple[Fraction, Fraction]:
    """(scale, shift) of the affine map sending 0 to m and N + phi to 1."""
    p = kurka_params(delta)
    scale = (1 - p.m) / (n + p.phi)
    return scale, p.m


def kurka_cn(delta, n: int) -> Configuration:
    scale, shift = kurka_map(delta, n)
    return Configuration(affine(kurka_sn(delta, n), scale, shift))


def kurka_body_measure(delta, n: int) -> Fraction:
    """lambda(u_N(S_N)) in closed form."""
    p = kurka_params(delta)
    return (1 - p.m) * (n * p.period_measure + p.phi) / (n + p.phi)


def lambda_threshold_n(delta, n_max: int) -> Optional[int]:
    """Least N <= n_max with lambda(u_N(S_N)) <= 2 delta."""
    d = Q(delta)
    for n in range(1, n_max + 1):
        if kurka_body_measure(d, n) <= 2 * d:
            return n
    return None


def verify_claim_radii(delta, n: int) -> VerificationReport:
    """Check the three radius cases at every interior endpoint of S_N, and the
    boundary radii 1 - m at 0 and m, and 1 at 1, for C_N."""
    p = kurka_params(delta)
    d = p.delta
    S = kurka_sn(d, n)
    target = 1 - d
    findings = []
    ends = p.ends
    for shift in range(n + 1):
        for idx, (k, l) in enumerate(ends):
            if shift == n and idx > 0:
                break
            for point, case, radius in _claim_cases(p, shift, idx, k, l):
                if not 0 < point < n + p.phi:
                    continue
                f = density_at(S, point, radius)
                exact = case in ("I", "III")
                ok = f == target if exact else f >= target
                findings.append(Finding(f"case {case}", "B" if ok else "violation", point, radius,
                                        {"density": f}))
    C = kurka_cn(d, n)
    for point, radius in ((Fraction(0), 1 - p.m), (p.m, 1 - p.m), (Fraction(1), Fraction(1))):
        f = density_at(C, point, radius)
        if point == 1:
            ok, kind = f <= d, "W"
        else:
            ok, kind = f >= target, "B"
        findings.append(Finding("boundary", kind if ok else "violation", point, radius,
                                {"density": f}))
    return VerificationReport(f"claim radii delta={d} N={n}", tuple(findings))


def _claim_cases(p: KurkaParams, shift: int, idx: int, k, l):
    """(point, case, radius) for the two endpoints of interval idx in period shift."""
    k, l = shift + k, shift + l
    if idx == 0:  # (k1, l1): case I at both ends
        yield k, "I", p.phi
        yield l, "I", p.phi
    elif idx == 1:  # (k2, l2): case III at k2, case II at l2
        yield k, "III", p.psi + p.phi
        yield l, "II", p.alpha
    else:  # (k3, l3): case II at k3, case III at l3
        yield k, "II", p.alpha
        yield l, "III", p.psi + p.phi


def minimal_counterexample_n(delta, n_max: int) -> Optional[int]:
    """Least N <= n_max for which C_N is a counterexample at delta."""
    from .verifier import is_counterexample

    d = Q(delta)
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    for n in range(1, n_max + 1):
        if kurka_body_measure(d, n) > 2 * d:
            continue  # the radius-1 test at the endpoint 1 already fails
        if is_counterexample(kurka_cn(d, n), d).passed:
            return n
    return None


# --------------------------------------------------------------------------
# earlier equal-interval layouts


def szenes_config(m, k: int, fill) -> Configuration:
    """k equal intervals filling the fraction ``fill`` of (m, 1), evenly spaced,
    the first starting at m and the last ending at 1."""
    m, fill = Q(m), Q(fill)
    if not 0 < m < 1:
        raise ValueError("m must lie in (0, 1)")
    if k < 1 or not 0 < fill <= 1:
        raise ValueError("need k >= 1 and fill in (0, 1]")
    if k == 1 and fill != 1:
        raise ValueError("a single interval must fill (m, 1) to start at m and end at 1")
    span = 1 - m
    length = fill * span / k
    gap = (span - k * length) / (k - 1) if k > 1 else Fraction(0)
    if k > 1 and gap <= 0:
        raise ValueError("infeasible layout: intervals would touch")
    ivs = [Interval(m + i * (length + gap), m + i * (length + gap) + length) for i in range(k)]
    return Configuration(ivs)


def cgo_config(m, k: int, fill, gap) -> Configuration:
    """szenes_config with a centred gap of relative width ``gap`` in each interval."""
    gap = Q(gap)
    if not 0 <= gap < 1:
        raise ValueError("gap must lie in [0, 1)")
    base = szenes_config(m, k, fill)
    if gap == 0:
        return base
    ivs = []
    for iv in base.body:
        half = iv.length * gap / 2
        ivs += [Interval(iv.left, iv.center - half), Interval(iv.center + half, iv.right)]
    return Configuration(ivs)


def good_set_example(delta):
    """The mirror-symmetric generator obtained from one period of S_1 shifted by -phi/2."""
    from .periodic import PeriodicSet

    p = kurka_params(delta)
    h = p.phi / 2
    return PeriodicSet([
        Interval(0, h),
        Interval(h + p.psi, h + p.psi + p.alpha),
        Interval(1 - h - p.psi - p.alpha, 1 - h - p.psi),
        Interval(1 - h, 1),
    ])
