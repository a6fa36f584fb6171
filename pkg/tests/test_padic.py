from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cantorwaring.padic import (
    PadicCantorParams, PadicError, PadicInt, ResidueBudgetExceeded, base_gamma_digits,
    decompose_linear, decompose_power, linear_minimality_witness, residue_image,
    residue_lower_bound, valuation, word_value,
)

P33 = PadicCantorParams.make(3, 3)


def test_padic_int_basics():
    x = PadicInt.of(7, 3, 4)
    assert x.digits == (1, 2, 0, 0) and x.valuation == 0
    assert PadicInt.of(0, 3, 4).valuation is None
    assert PadicInt.of(18, 3, 4).valuation == 2
    half = PadicInt.of(F(1, 2), 3, 10)
    assert half * 2 == 1 and half.inverse() == 2
    with pytest.raises(PadicError):
        PadicInt.of(F(1, 3), 3, 5)
    with pytest.raises(PadicError):
        PadicInt.of(3, 3, 5).inverse()
    assert valuation(0, 5, 7) == 7


ints = st.integers(-10 ** 30, 10 ** 30)


@settings(max_examples=1000)
@given(st.sampled_from([2, 3, 5, 7]), ints, ints, ints)
def test_ring_laws(p, a, b, c):
    N = 20
    x, y, z = (PadicInt.of(v, p, N) for v in (a, b, c))
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0 and (x + y).value == (a + b) % p ** N


def test_params_validation():
    assert (P33.u, P33.G) == (1, 2)
    assert PadicCantorParams.make(2, 4).u == 2
    with pytest.raises(PadicError):
        PadicCantorParams.make(2, 2)      # 2|gamma|_2 = 1
    with pytest.raises(PadicError):
        PadicCantorParams.make(3, 4)      # not divisible by p
    with pytest.raises(PadicError):
        PadicCantorParams.make(4, 4)
    assert PadicCantorParams.make(3, (0, 2, 1, 1, 0, 2)).precision == 6


def test_base_gamma_examples():
    assert base_gamma_digits(1, P33, 4) == (1, 0, 0, 0)
    assert base_gamma_digits(7, P33, 4) == (1, 2, 0, 0)
    p36 = PadicCantorParams.make(3, 6)
    b = base_gamma_digits(5, p36, 12)
    assert b[0] == 2
    assert sum(d * 6 ** n for n, d in enumerate(b)) % 3 ** 12 == 5


@given(st.sampled_from([(3, 3), (3, 6), (2, 4), (5, 5), (3, 9), (2, 12), (5, 10)]),
       st.integers(0, 10 ** 40))
def test_base_gamma_round_trip(pg, x):
    params = PadicCantorParams.make(*pg, precision=24)
    b = base_gamma_digits(x, params)
    depth = params.u * len(b)
    assert all(0 <= d < params.p ** params.u for d in b)
    assert sum(d * params.gamma_mod(depth) ** n for n, d in enumerate(b)) % params.p ** depth \
        == x % params.p ** depth


def test_linear_examples():
    cert = decompose_linear(2, P33, 6)
    assert cert.size == 2 and cert.values() == [2, 0]
    zero = decompose_linear(0, P33, 6)
    assert zero.values() == [0, 0]
    assert linear_minimality_witness(PadicCantorParams.make(3, 9))
    assert linear_minimality_witness(P33)


@given(st.sampled_from([(3, 3), (3, 6), (2, 4), (5, 5), (3, 9)]), st.integers(0, 10 ** 40))
def test_linear_replay_and_count(pg, t):
    params = PadicCantorParams.make(*pg, precision=30)
    cert = decompose_linear(t, params)
    assert cert.replay() and cert.size == params.p ** params.u - 1
    assert sum(cert.values()) % params.p ** cert.congruence_depth == t % params.p ** cert.congruence_depth


def test_power_examples():
    cert = decompose_power(7, 2, P33, 30)
    assert cert.size == 4 and cert.replay() and cert.congruence_depth == 30
    assert sum(pow(x, 2, 9) for x in cert.values()) % 9 == 7
    zero = decompose_power(0, 3, P33, 12)
    assert zero.replay()
    p24 = PadicCantorParams.make(2, 4)
    c = decompose_power(1, 2, p24, 20)
    assert c.size == 34 and c.replay()
    with pytest.raises(PadicError):
        decompose_power(1, 1, P33, 10)
    with pytest.raises(PadicError):
        decompose_power(1, 2, p24, 3)


@given(st.sampled_from([(3, 3), (3, 6), (5, 5), (2, 4), (7, 7), (3, 9)]),
       st.integers(2, 12), st.integers(0, 10 ** 40))
def test_power_replay_and_count(pg, m, t):
    params = PadicCantorParams.make(*pg, precision=24)
    cert = decompose_power(t, m, params)
    assert cert.replay() and cert.size == params.power_bound(m)


def test_word_value():
    assert word_value(P33, (1,), 5) == 2
    assert word_value(P33, (0, 1), 5) == 6
    assert residue_image(P33, 2) == {0, 2, 6, 8}


def test_residue_bounds():
    assert residue_lower_bound(P33, 2, 2) == 4
    assert residue_lower_bound(P33, 1, 1) == 2
    assert residue_lower_bound(PadicCantorParams.make(5, 5), 2, 1) == 4
    with pytest.raises(ResidueBudgetExceeded):
        residue_lower_bound(P33, 2, 20, budget=1000)
