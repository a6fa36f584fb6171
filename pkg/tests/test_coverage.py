from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cantorwaring.cantor import CantorParams, TERNARY
from cantorwaring.coverage import (
    BudgetExceeded, CoverageSet, conjecture_probe, enumerate_image, enumerate_image_minkowski,
    gap_report, merge_intervals, slice_gap_check, three_power_epsilon, two_power_window,
    window_quantities,
)
from cantorwaring.powersum import PowerSumProblem


def image(k, m, n, r=F(1, 3)):
    return enumerate_image(PowerSumProblem(CantorParams(r), k, m), n)


def test_merge_intervals():
    assert merge_intervals([(2, 3), (0, 1), (1, F(3, 2))]) == [(0, F(3, 2)), (2, 3)]
    assert merge_intervals([]) == []


def test_enumeration_examples():
    assert image(1, 1, 1).intervals == ((0, F(1, 3)), (F(2, 3), 1))
    assert image(2, 1, 1).intervals == ((0, 2),)
    cov = image(2, 2, 2)
    assert (F(98, 81), F(100, 81)) in gap_report(cov).gaps
    with pytest.raises(BudgetExceeded):
        enumerate_image(PowerSumProblem(TERNARY, 4, 2), 6, budget=100)


def test_gap_report_examples():
    rep = gap_report(image(1, 1, 1))
    assert rep.gaps == ((F(1, 3), F(2, 3)),) and rep.sup_gap == F(1, 3)
    one = CoverageSet(((0, 1),), 1, 1, 0, TERNARY)
    assert gap_report(one).gaps == () and gap_report(one).sup_gap == 0
    measured, bound = slice_gap_check(TERNARY, 2, 2, 4)
    assert bound == F(1, 6) and measured <= bound


@pytest.mark.parametrize("l", [1, 2, 3])
@pytest.mark.parametrize("m", [2, 3, 4])
def test_slice_gap_bound(l, m):
    for n in range(l, 7):
        measured, bound = slice_gap_check(TERNARY, m, l, n)
        assert measured <= bound


def test_window_examples():
    assert two_power_window(TERNARY, 2, 2) == [(2, (F(98, 81), F(100, 81)))]
    assert window_quantities(TERNARY, 2, 2).R13 == F(10, 9)
    with pytest.raises(ValueError):
        window_quantities(TERNARY, 2, 1)
    with pytest.raises(ValueError):
        two_power_window(TERNARY, 1, 3)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_windows_accumulate_toward_two(m):
    wins = two_power_window(TERNARY, m, 8, cross_check_up_to=4)
    ns = [n for n, _ in wins]
    assert ns == list(range(ns[0], 9))
    lefts = [w[0] for _, w in wins]
    assert lefts == sorted(lefts) and all(x < 2 for x in lefts)
    assert 2 - lefts[-1] < F(1, 100)


def test_epsilon_examples():
    e1 = three_power_epsilon(1)
    assert (e1.n, e1.epsilon) == (1, 1)
    e2 = three_power_epsilon(2)
    assert (e2.n, e2.epsilon) == (2, F(17, 27))
    with pytest.raises(ValueError):
        three_power_epsilon(0)


def test_probe_examples():
    steinhaus = conjecture_probe(TERNARY, 1, [3], k=2)
    assert steinhaus.gaps_by_depth[3] == [] and "no obstruction" in steinhaus.verdict
    sq = conjecture_probe(TERNARY, 2, [3], k=4)
    assert sq.gaps_by_depth[3] == []
    p4 = conjecture_probe(TERNARY, 4, [1, 2], k=16)
    assert [n for n, _, _ in p4.trend()] == [1, 2]
    assert "counterexample" not in p4.verdict or "not a counterexample" in p4.verdict


@pytest.mark.parametrize("n", [2, 3, 4])
def test_small_k_gap_is_missed(n):
    assert not image(3, 2, n).meets_open(F(1, 3), F(4, 9))


GRID = [(k, m, n) for k in (1, 2, 3) for m in (1, 2, 3) for n in (1, 2, 3)]


@pytest.mark.parametrize("k,m,n", GRID)
def test_antichain_and_minkowski(k, m, n):
    for r in (F(1, 3), F(1, 4)):
        coarse, fine = image(k, m, n, r), image(k, m, n + 1, r)
        assert fine.subset_of(coarse)
        alt = enumerate_image_minkowski(PowerSumProblem(CantorParams(r), k, m), n)
        assert alt.intervals == coarse.intervals


@given(st.sampled_from([F(1, 3), F(1, 4), F(2, 5)]), st.integers(1, 6), st.integers(1, 3))
def test_lower_gap_invariant(r, m, n):
    # below (1/r - 1)^m summands the interval (k r^m, (1 - r)^m) is never reached
    p = CantorParams(r)
    for k in range(1, 4):
        if k < (1 / r - 1) ** m and k * r ** m < (1 - r) ** m:
            cov = enumerate_image(PowerSumProblem(p, k, m), n)
            assert not cov.meets_open(k * r ** m, (1 - r) ** m)
