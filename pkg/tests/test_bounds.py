from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from densitylab.bounds import (ConditionCWitness, check_cl3, check_lemmac, condition_c_witness,
                               f_value, finite_cover, lemmaxy_oracle, lower_bound_constant,
                               run_cl3, run_lemmac, run_st_points, slack_from_measures, st_points)
from densitylab.constructions import good_set_example
from densitylab.density import triangle_check
from densitylab.intervals import Interval, IntervalSet, normalize
from densitylab.periodic import horizon

from .strategies import deltas, interval_sets

F = Fraction
D = F(27, 100)
Q4 = F(1, 4)


def S(*pairs):
    return IntervalSet([Interval(F(a), F(b)) for a, b in pairs])


@pytest.mark.parametrize("A,expected", [(S(), F(1, 2)), (S((0, 1)), F(-1, 2)), (S((0, F(1, 2))), 0)])
def test_f_value_examples(A, expected):
    assert f_value(A, 0, 1, Q4) == expected


@pytest.mark.parametrize("A,s,t", [(S((0, 1)), 1, 0), (S(), 0, 1), (S((0, F(1, 2))), F(1, 2), 0)])
def test_st_points_examples(A, s, t):
    res = st_points(A, 0, 1, Q4)
    assert (res.s, res.t) == (s, t)


@settings(max_examples=150, deadline=None)
@given(interval_sets(lo=0, hi=4), deltas, st.integers(0, 24), st.integers(1, 48))
def test_st_points_against_dense_sampling(A, d, p12, length12):
    p, q = F(p12, 12), F(p12 + length12, 12)
    res = st_points(A, p, q, d)
    grid = [p + F(k, 240) for k in range(20 * length12 + 1)]
    vals = [f_value(A, p, x, d) for x in grid]
    assert min(vals) >= res.f_min and max(vals) <= res.f_max
    # breakpoints lie on the 1/12 grid, so the sampled extremes are exact
    assert max(x for x, v in zip(grid, vals) if v == res.f_min) == res.s
    assert min(x for x, v in zip(grid, vals) if v == res.f_max) == res.t


@given(interval_sets(), deltas, st.integers(-60, 60), st.integers(0, 40), st.integers(0, 40))
def test_f_value_telescoping(A, d, p12, a, b):
    p = F(p12, 12)
    x1, x2 = p + F(a, 12), p + F(a + b, 12)
    lhs = f_value(A, p, x2, d) - f_value(A, p, x1, d)
    assert lhs == (1 - 2 * d) * (x2 - x1) - A.measure_within(x1, x2)


def test_lemmac_trivial_and_contract():
    full = S((-1, 3))
    rep = check_lemmac(full, 1, 2, D)
    # interior point: density 1 at all radii, hypothesis holds, conclusion trivial
    assert rep.passed and all(f.kind == "ok" for f in rep.findings)
    sparse = S((0, F(1, 10)))
    rep = check_lemmac(sparse, 1, 1, D)
    assert rep.findings[0].kind == "skip"
    assert rep.findings[0].values["reason"] == "hypothesis not met"


def test_cl3_trivial_and_boundary():
    rep = check_cl3(S((0, 1)), 0, F(1, 3), F(2, 3), 1, D)
    assert rep.passed and rep.findings[0].values["density"] == 1
    A = S((0, F(1, 2)), (F(2, 3), 1))
    rep = check_cl3(A, 0, 0, 1, 1, Q4)
    assert rep.findings[0].kind == "ok"
    assert rep.findings[0].values["density"] >= (1 - 2 * Q4) / (1 + 2 * Q4)


def test_property_runners_small():
    for run in (run_lemmac(1, 150), run_cl3(2, 150), run_st_points(3, 150)):
        assert run.ok, run


@pytest.fixture(scope="module")
def good():
    return good_set_example(D)


def test_condition_c_across_a_gap(good):
    G = good.G.intervals
    w, v = G[0].right - F(1, 100), G[1].left + F(1, 100)
    assert good.measure_within(w, v) <= (1 - D) / 2 * (v - w)
    res = condition_c_witness(good, w, v, D)
    assert isinstance(res, ConditionCWitness)
    assert triangle_check(good, res.outer.center, res.outer.radius, D)
    assert res.outer.left <= w and v <= res.outer.right
    for u, I_b, slack in res.per_u:
        assert slack >= 0
        assert slack == slack_from_measures(good, res.outer.center, I_b.center, u, v, D)
        assert triangle_check(good, I_b.center, I_b.radius, D)
    # u = w reproduces the outer inequality with v' = v
    assert res.per_u[0][0] == w


def test_condition_c_precondition_skip(good):
    G = good.G.intervals
    res = condition_c_witness(good, G[1].left, G[1].right, D)
    assert res.kind == "skip"


def test_lower_bound_constant():
    assert lower_bound_constant(D) == F(5621, 9050)


def test_lemmaxy_full_window():
    rep = lemmaxy_oracle(S((0, 5)), 0, 5, D)
    assert rep.status == "holds"
    concl = rep.findings[-1]
    assert concl.values["measure"] == 5


def test_lemmaxy_no_cover_is_not_a_violation():
    rep = lemmaxy_oracle(S((0, 1), (4, 5)), 0, 5, D)
    assert rep.status == "hypotheses-unmet"
    assert finite_cover(S((0, 1), (4, 5)), 0, 5, D) is None


def test_lemmaxy_dense_random_sets():
    import random

    rng = random.Random(5)
    for _ in range(10):
        # small holes in (0, 4): density stays near 1 at every scale
        holes = sorted(F(rng.randint(1, 95), 24) for _ in range(rng.randint(1, 4)))
        ivs, cur = [], F(0)
        for h in holes:
            if h > cur:
                ivs.append(Interval(cur, h))
            cur = max(cur, h + F(1, 96))
        ivs.append(Interval(cur, F(4)))
        H = normalize(ivs)
        rep = lemmaxy_oracle(H, 0, 4, D, seed=rng.randint(0, 99))
        assert rep.status in ("holds", "hypotheses-unmet")
        assert rep.status != "VIOLATION"


def test_lemmaxy_good_set_five_periods(good):
    W = horizon(good, D)
    H = normalize(good.components(-2 * W, 5 + 2 * W))
    rep = lemmaxy_oracle(H, 0, 5, D, core=(0, 5))
    assert rep.status == "holds"
    vals = rep.findings[-1].values
    assert vals["core_measure"] == vals["core_bound"] == 5 * lower_bound_constant(D)
    assert vals["boundary_correction"] == vals["measure"] - vals["core_measure"]
