from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from densitylab.constructions import (cgo_config, good_set_example, kurka_body_measure, kurka_cn,
                                      kurka_map, kurka_params, kurka_sn, lambda_threshold_n,
                                      minimal_counterexample_n, szenes_config, verify_claim_radii)
from densitylab.exact_core import zeta

F = Fraction
D = F(27, 100)
open_deltas = st.fractions(min_value=F(1, 100), max_value=F(49, 100), max_denominator=10**4)


def test_parameters_at_27_100():
    p = kurka_params(D)
    assert (p.phi, p.psi, p.alpha, p.beta, p.m) == (F(50, 181), F(27, 181), F(3121, 18100),
                                                    F(729, 9050), F(729, 5254))
    assert p.valid


@given(open_deltas)
def test_period_identities_at_any_delta(d):
    p = kurka_params(d)
    assert p.phi + 2 * p.psi + 2 * p.alpha + p.beta == 1
    assert p.phi + 2 * p.alpha == (1 - d) * (1 + 2 * d) / (1 + 3 * d)


@given(open_deltas)
def test_validity_window_matches_root(d):
    p = kurka_params(d)
    z = zeta(1, F(1, 10**12))
    if abs(d - z) > F(1, 10**10):
        assert p.above_root == (d > z)


def test_sn_layout():
    p = kurka_params(D)
    s1 = kurka_sn(D, 1)
    assert len(s1.intervals) == 4
    assert s1.measure == F(11242, 18100) + F(5000, 18100)
    s3 = kurka_sn(D, 3)
    assert len(s3.intervals) == 10
    assert s3.bounds() == (0, 3 + p.phi)
    assert s3.intervals[1].left == p.phi + p.psi
    assert s3.intervals[1].right == p.phi + p.psi + p.alpha


@pytest.mark.parametrize("n", [1, 3, 18])
def test_cn_endpoints_and_body_measure(n):
    p = kurka_params(D)
    C = kurka_cn(D, n)
    ends = C.endpoints()
    assert ends[0] == 0 and ends[1] == p.m and ends[-1] == 1
    scale, shift = kurka_map(D, n)
    assert shift == p.m and scale * (n + p.phi) + shift == 1
    body = C.measure_within(F(0), F(1))
    assert body == kurka_body_measure(D, n)
    assert body >= (1 - D) * (1 + 2 * D) / (1 + 3 * D + 4 * D * D)


def test_lambda_threshold_independent_scan():
    # oracle: measure the body of each C_N directly
    first = next(n for n in range(1, 101) if kurka_cn(D, n).measure_within(F(0), F(1)) <= 2 * D)
    assert lambda_threshold_n(D, 100) == first == 18


def test_claim_radii_short_family_fails_only_at_one():
    rep = verify_claim_radii(D, 3)
    assert [(f.label, f.point) for f in rep.violations] == [("boundary", 1)]


def test_claim_radii_report():
    rep = verify_claim_radii(D, 18)
    assert rep.passed
    by_case = {f.label for f in rep.findings}
    assert {"case I", "case II", "case III", "boundary"} <= by_case
    for f in rep.findings:
        if f.label in ("case I", "case III"):
            assert f.values["density"] == F(73, 100)


def test_minimal_counterexample_regression():
    assert minimal_counterexample_n(D, 100) == 18


def test_minimal_counterexample_other_deltas():
    assert minimal_counterexample_n(F(265, 1000), 200) is None
    assert minimal_counterexample_n(F(30, 100), 100) is not None


def test_szenes_and_cgo_layouts():
    C = szenes_config(F(1, 5), 4, F(1, 2))
    assert len(C.body.intervals) == 4
    assert C.endpoints()[1] == F(1, 5) and C.endpoints()[-1] == 1
    assert C.measure_within(F(0), F(1)) == F(2, 5)
    assert cgo_config(F(1, 5), 4, F(1, 2), 0) == C
    G = cgo_config(F(1, 5), 4, F(1, 2), F(1, 3))
    assert len(G.body.intervals) == 8
    assert all(F(1, 5) <= e <= 1 for e in G.endpoints()[1:])
    with pytest.raises(ValueError):
        szenes_config(F(1, 5), 1, F(1, 2))


def test_good_set_example():
    P = good_set_example(D)
    assert P.measure_G == F(5621, 9050) == kurka_params(D).period_measure
    assert P.is_symmetric
    assert P.measure_G <= 4 * D * D / (1 - 2 * D) == F(729, 1150)
