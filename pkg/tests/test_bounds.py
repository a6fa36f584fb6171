from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cantorwaring.bounds import (
    RatioConditionViolated, check_conditions, g_alpha_1, integer_threshold, k_star_exp_bound,
    lower_bound_gap, profile, large_m_threshold, upper_bound_M,
)
from cantorwaring.cantor import CantorParams, TERNARY

QUARTER = CantorParams(F(1, 4))


def test_profile_examples():
    p4 = profile(TERNARY, 4)
    assert (p4.n_star, p4.k_star, p4.lower_bound, p4.target_k) == (2, 3, 16, 16)
    p1 = profile(TERNARY, 1)
    assert (p1.lower_bound, p1.target_k) == (2, 2)
    p6 = profile(TERNARY, 6)
    assert p6.k_star <= 6 and p6.a < 1


def test_condition_examples():
    rep = check_conditions(profile(TERNARY, 4), 13)
    assert rep.a1 and rep.a2prime and rep.a3 and rep.a4 and rep.l0 == 3
    assert not check_conditions(profile(TERNARY, 4), 2).a1
    prof = profile(QUARTER, 7)
    assert check_conditions(prof, 3 ** 7 - prof.k_star).certified
    with pytest.raises(ValueError):
        check_conditions(profile(TERNARY, 4), 1)


@pytest.mark.parametrize("m", range(4, 13))
def test_ternary_certification(m):
    prof = profile(TERNARY, m)
    assert check_conditions(prof, 2 ** m - prof.k_star).certified
    if m in (4, 5):
        rep = check_conditions(prof, 2 ** m - prof.k_star)
        assert (prof.n_star, prof.k_star, rep.l0) == (2, 3, 3)


@pytest.mark.parametrize("m", range(7, 13))
def test_quarter_certification(m):
    prof = profile(QUARTER, m)
    assert check_conditions(prof, 3 ** m - prof.k_star).certified


@given(st.sampled_from([F(1, 3), F(1, 4), F(2, 5), F(1, 5), F(3, 8)]),
       st.integers(1, 12), st.integers(2, 5000))
def test_a2prime_implies_a2(r, m, k):
    rep = check_conditions(profile(CantorParams(r), m), k)
    assert not rep.a2prime or rep.a2


def test_upper_bound_examples():
    rep1 = upper_bound_M(TERNARY, 1)
    assert rep1.integer_bound >= 2
    rep3 = upper_bound_M(TERNARY, 3)
    assert rep3.integer_bound >= 8 and rep3.bound.lo <= rep3.bound.hi
    rep = upper_bound_M(QUARTER, 2)
    assert rep.M.lo <= rep.M.hi and rep.integer_bound > 0


def test_threshold_examples():
    enc = large_m_threshold(QUARTER)
    assert 6 < enc.lo and enc.hi < 7 and enc.width <= F(1, 1000)
    assert F(615233, 100000) - F(1, 100000) < enc.lo
    assert integer_threshold(QUARTER) == 7
    assert large_m_threshold(TERNARY).hi < 13
    with pytest.raises(RatioConditionViolated):
        large_m_threshold(CantorParams(F(2, 5)))


def test_g_alpha_1():
    assert g_alpha_1(TERNARY) == 2
    assert g_alpha_1(QUARTER) == 3
    assert g_alpha_1(CantorParams(F(2, 5))) == 2


def test_lower_bound_gap_examples():
    assert lower_bound_gap(profile(TERNARY, 2), 3) == (F(1, 3), F(4, 9))
    assert lower_bound_gap(profile(TERNARY, 2), 4) is None
    assert lower_bound_gap(profile(TERNARY, 4), 15) == (F(15, 81), F(16, 81))


@given(st.sampled_from([F(1, 3), F(1, 4), F(2, 5), F(3, 10)]), st.integers(1, 8),
       st.integers(1, 400))
def test_gap_nonempty_iff_below_lower_bound(r, m, k):
    prof = profile(CantorParams(r), m)
    gap = lower_bound_gap(prof, k)
    assert (gap is not None) == (k < prof.lower_bound)
    if gap:
        assert gap[0] < gap[1]


@pytest.mark.parametrize("r", [F(1, 3), F(1, 4), F(2, 5)])
def test_k_star_exp_bound(r):
    p = CantorParams(r)
    cap = k_star_exp_bound(p)
    for m in range(2, 13):
        assert profile(p, m).k_star <= cap
