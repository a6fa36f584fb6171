from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cantorwaring.cantor import (
    CantorParams, DepthCapExceeded, LevelInterval, SymbolWord, TERNARY, eval_prefix,
    left_endpoints, point_in_cantor, truncation_cover, words_of_length,
)

ratios = st.sampled_from([F(1, 3), F(1, 4), F(2, 5), F(1, 5), F(3, 7)])


def test_params():
    p = CantorParams.from_alpha(3)
    assert p.r == F(1, 3) and p.lam == 1 and p.alpha == 3
    with pytest.raises(ValueError):
        CantorParams(F(1, 2))
    with pytest.raises(ValueError):
        CantorParams(0)


@given(ratios)
def test_alpha_round_trip(r):
    p = CantorParams(r)
    assert CantorParams.from_alpha(p.alpha).r == r
    assert p.lam > 0 and p.alpha > 1


def test_left_endpoint_examples():
    assert left_endpoints(TERNARY, 0) == [0]
    assert left_endpoints(TERNARY, 1) == [0, F(2, 3)]
    assert left_endpoints(TERNARY, 2) == [0, F(2, 9), F(6, 9), F(8, 9)]
    with pytest.raises(DepthCapExceeded):
        left_endpoints(TERNARY, 21)


def test_eval_prefix_examples():
    assert eval_prefix(TERNARY, SymbolWord.parse("11")) == F(8, 9)
    assert eval_prefix(TERNARY, SymbolWord()) == 0
    assert eval_prefix(TERNARY, SymbolWord.parse("01")) == F(2, 9)
    assert eval_prefix(TERNARY, SymbolWord.parse("0101")) == F(20, 81)
    assert eval_prefix(TERNARY, SymbolWord.parse("(01)")) == F(1, 4)
    assert eval_prefix(TERNARY, SymbolWord.parse("(1)")) == 1


def test_truncation_cover_examples():
    assert [(i.lo, i.hi) for i in truncation_cover(TERNARY, 0)] == [(0, 1)]
    assert [(i.lo, i.hi) for i in truncation_cover(TERNARY, 1)] == [(0, F(1, 3)), (F(2, 3), 1)]
    assert [(i.lo, i.hi) for i in truncation_cover(TERNARY, 2)] == [
        (0, F(1, 9)), (F(2, 9), F(1, 3)), (F(2, 3), F(7, 9)), (F(8, 9), 1)]


@given(ratios, st.integers(0, 7))
def test_endpoint_identity_and_order(r, n):
    p = CantorParams(r)
    pts = left_endpoints(p, n)
    assert pts == sorted(pts) and len(set(pts)) == 2 ** n
    assert sorted(eval_prefix(p, w) for w in words_of_length(n)) == pts


@given(ratios, st.integers(0, 7))
def test_scaling_and_symmetry(r, n):
    p = CantorParams(r)
    here, nxt = set(left_endpoints(p, n)), set(left_endpoints(p, n + 1))
    for u in here:
        assert p.r * u in nxt
        assert (1 - p.r ** n) - u in here


@given(ratios, st.integers(0, 6))
def test_nesting_and_gaps(r, n):
    p = CantorParams(r)
    parents = truncation_cover(p, n)
    kids = truncation_cover(p, n + 1)
    for c in kids:
        assert sum(1 for q in parents if q.lo <= c.lo and c.hi <= q.hi) == 1
    for q in parents:
        c0, c1 = q.children(p)
        assert q.hi - q.lo == p.r ** n
        assert c1.lo - c0.hi == (1 - 2 * p.r) * p.r ** n
    gaps = {b.lo - a.hi for a, b in zip(parents, parents[1:])}
    assert gaps <= {(1 - 2 * p.r) * p.r ** j for j in range(n)}


@given(st.lists(st.integers(0, 1), max_size=12), st.integers(0, 1))
def test_append_bits(bits, b):
    w = SymbolWord(tuple(bits))
    u = eval_prefix(TERNARY, w)
    assert eval_prefix(TERNARY, w.extend(b)) == u + b * F(2, 3) * F(1, 3) ** len(bits)
    assert point_in_cantor(TERNARY, u, len(bits) + 3)
    assert LevelInterval.of(TERNARY, w).hi == eval_prefix(TERNARY, w.with_tail_ones())


def test_word_parse_round_trip():
    for s in ["", "0", "0110", "01(1)", "(01)", "1(10)"]:
        assert str(SymbolWord.parse(s)) == s
    assert SymbolWord.parse("01(0)") == SymbolWord.parse("01")
    with pytest.raises(ValueError):
        SymbolWord.parse("012")
