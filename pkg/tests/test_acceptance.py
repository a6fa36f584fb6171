"""The ten acceptance criteria, each timed against its runtime limit.

Every test prints one line ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
straight to the terminal (also when pytest captures output), then asserts.
"""
from fractions import Fraction as F
import math
import random
import time

import pytest

from cantorwaring.bounds import check_conditions, g_alpha_1, profile, large_m_threshold
from cantorwaring.cantor import CantorParams, TERNARY
from cantorwaring.coverage import enumerate_image, three_power_epsilon, two_power_window
from cantorwaring.dust import (
    decompose_complex, disk_grid, i_pow, angle_chain_holds, symmetry_map,
)
from cantorwaring.numerics import (
    arctan_scalar, certified_arctan, certified_exp, certified_log, exp_scalar, log_scalar, root_scalar,
)
from cantorwaring.padic import (
    PadicCantorParams, decompose_linear, decompose_power, residue_lower_bound,
)
from cantorwaring.powersum import PowerSumProblem, decompose, subdivision_ok

from test_powersum import connected_union_trials

THIRD = F(1, 3)
QUARTER = CantorParams(F(1, 4))


@pytest.fixture
def report(capsys):
    def emit(n, ok, elapsed, limit, detail):
        ok = ok and elapsed < limit
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail} "
                  f"({elapsed:.2f} s, limit {limit} s)")
        assert ok, f"criterion {n}: {detail}, {elapsed:.2f} s"
    return emit


def random_fraction(rng, hi):
    den = rng.randint(1, 10 ** 6)
    return F(rng.randint(0, hi * den), den)


def test_criterion_1_ternary_conditions(report):
    t0 = time.perf_counter()
    ok = True
    for m in range(4, 13):
        prof = profile(TERNARY, m)
        rep = check_conditions(prof, 2 ** m - prof.k_star)
        ok &= rep.a1 and rep.a2prime and rep.a3 and rep.a4
        if m in (4, 5):
            ok &= (prof.n_star, prof.k_star, rep.l0) == (2, 3, 3)
    report(1, ok, time.perf_counter() - t0, 1,
           "r=1/3, m=4..12: A1, A2', A3, A4 hold at k=2^m-k*; n*=2, k*=3, l0=3 at m=4,5")


def test_criterion_2_quarter_threshold(report):
    t0 = time.perf_counter()
    enc = large_m_threshold(QUARTER)
    prof = profile(QUARTER, 7)
    ok = 6 < enc.lo and enc.hi < 7 and enc.width <= F(1, 1000)
    ok &= check_conditions(prof, 3 ** 7 - prof.k_star).certified
    report(2, ok, time.perf_counter() - t0, 1,
           f"r=1/4 threshold in [{float(enc.lo):.5f}, {float(enc.hi):.5f}], m=7 certified")


def test_criterion_3_steinhaus(report):
    rng = random.Random(3)
    t0 = time.perf_counter()
    ok = g_alpha_1(TERNARY) == 2
    prob = PowerSumProblem(TERNARY, 2, 1)
    for _ in range(100):
        cert = decompose(prob, random_fraction(rng, 2), 40)
        good, err = cert.replay()
        ok &= good and err <= 2 * THIRD ** 40
    report(3, ok, time.perf_counter() - t0, 1,
           "g=2 and 100 targets in [0,2] replay within 2*3^-40")


def test_criterion_4_sixteen_fourth_powers(report):
    rng = random.Random(4)
    t0 = time.perf_counter()
    ok = True
    prob = PowerSumProblem(TERNARY, 16, 4)
    for _ in range(100):
        cert = decompose(prob, random_fraction(rng, 16), 40)
        good, err = cert.replay()
        ok &= good and err <= 64 * THIRD ** 40 and cert.residual_bound <= 64 * THIRD ** 40
    report(4, ok, time.perf_counter() - t0, 30,
           "k=16, m=4: 100 targets in [0,16] replay within 64*3^-40")


def test_criterion_5_small_k_gap(report):
    t0 = time.perf_counter()
    prob = PowerSumProblem(TERNARY, 3, 2)
    ok = all(not enumerate_image(prob, n).meets_open(THIRD, F(4, 9)) for n in (2, 3, 4))
    report(5, ok, time.perf_counter() - t0, 5,
           "k=3, m=2: level-2,3,4 images miss (1/3, 4/9)")


def test_criterion_6_two_power_windows(report):
    t0 = time.perf_counter()
    wins = two_power_window(TERNARY, 2, 2)
    ok = wins == [(2, (F(98, 81), F(100, 81)))]
    ok &= not enumerate_image(PowerSumProblem(TERNARY, 2, 2), 2).meets_open(F(98, 81), F(100, 81))
    for m in (2, 3, 4):
        rows = two_power_window(TERNARY, m, 8, cross_check_up_to=5)
        ns = [n for n, _ in rows]
        lefts = [w[0] for _, w in rows]
        ok &= bool(rows) and ns == list(range(ns[0], 9))
        ok &= all(a < b < 2 for a, b in zip(lefts, lefts[1:]))
    report(6, ok, time.perf_counter() - t0, 5,
           "window (98/81, 100/81) at n=2; m=2,3,4 windows at every n up to 8, rising to 2")


def test_criterion_7_three_powers(report):
    t0 = time.perf_counter()
    eps = [three_power_epsilon(m).epsilon for m in range(1, 33)]
    ok = all(e >= F(1, 2) for e in eps)
    report(7, ok, time.perf_counter() - t0, 5,
           f"m=1..32: epsilon >= 1/2 (min {float(min(eps)):.4f})")


def test_criterion_8_dust(report):
    t0 = time.perf_counter()
    ok = all(angle_chain_holds(TERNARY, n) for n in range(-1, 11))
    count = 0
    for m in (3, 4, 5, 6):
        for t in disk_grid(25):
            cert = decompose_complex(TERNARY, m, t, 20)
            good, _ = cert.replay()
            mirror = symmetry_map(cert)
            ok &= good and cert.size <= 2 ** (m + 8)
            ok &= mirror.replay()[0] and mirror.target == i_pow(m) * t.conj()
            ok &= symmetry_map(mirror) == cert
            count += 1
    report(8, ok and count == 100, time.perf_counter() - t0, 300,
           f"m=3..6: {count} disk targets replay within 2^(m+8) summands; "
           "angle chain n=-1..10; involution holds")


def test_criterion_9_padic(report):
    rng = random.Random(9)
    t0 = time.perf_counter()
    p33 = PadicCantorParams.make(3, 3, precision=30)
    ok = residue_lower_bound(p33, 2, 2) == 4
    for _ in range(1000):
        cert = decompose_power(rng.randrange(3 ** 30), 2, p33, 30)
        ok &= cert.size == 4 and cert.congruence_depth == 30 and cert.replay()
    for p, g in ((3, 3), (3, 6), (2, 4), (5, 5)):
        params = PadicCantorParams.make(p, g, precision=30)
        for _ in range(1000):
            cert = decompose_linear(rng.randrange(p ** 30), params)
            ok &= cert.size == p ** params.u - 1 and cert.replay()
    report(9, ok, time.perf_counter() - t0, 60,
           "G_3(2)=4 pinned by 1000 four-square certificates and the mod-9 bound; "
           "4000 linear certificates replay")


def test_criterion_10_properties(report):
    rng = random.Random(10)
    t0 = time.perf_counter()
    ok = True
    # criterion holds on every box along every decomposition trace
    for r, k, m in ((THIRD, 2, 1), (THIRD, 16, 4), (THIRD, 7, 2), (THIRD, 9, 3), (F(1, 4), 3, 1)):
        params = CantorParams(r)
        for _ in range(20):
            trace = []
            cert = decompose(PowerSumProblem(params, k, m), random_fraction(rng, k), 30,
                             trace=trace)
            ok &= cert.replay()[0]
            ok &= all(subdivision_ok(a, m) and subdivision_ok(b, m) for a, b in trace)
    # connected union of children for random admissible boxes
    ok &= connected_union_trials(200, seed=10) == 200
    # image of F_{n+1}^k inside image of F_n^k
    for r in (THIRD, F(1, 4), F(2, 5)):
        for k in (1, 2, 3):
            for m in (1, 2, 3):
                for n in (1, 2, 3):
                    prob = PowerSumProblem(CantorParams(r), k, m)
                    ok &= enumerate_image(prob, n + 1).subset_of(enumerate_image(prob, n))
    # enclosure soundness and nesting
    for _ in range(50):
        x = F(rng.randint(1, 300), rng.randint(1, 100))
        ex = certified_exp(x / 100, F(1, 10 ** 9))
        ok &= ex.lo - F(1, 10 ** 8) <= F(math.exp(x / 100)) <= ex.hi + F(1, 10 ** 8)
        at = certified_arctan(x, F(1, 10 ** 9))
        ok &= at.lo - F(1, 10 ** 12) <= F(math.atan(x)) <= at.hi + F(1, 10 ** 12)
        for s in (exp_scalar(x), log_scalar(x), arctan_scalar(x), root_scalar(x, 3)):
            prev = s.enclosure
            for _ in range(3):
                cur = s.refine()
                ok &= prev.lo <= cur.lo <= cur.hi <= prev.hi
                prev = cur
        lg = certified_log(x, F(1, 10 ** 8))
        ok &= lg.width <= F(1, 10 ** 8)
        ok &= lg.lo - F(1, 10 ** 12) <= F(math.log(x)) <= lg.hi + F(1, 10 ** 12)
    report(10, ok, time.perf_counter() - t0, 120,
           "trace criterion, 200 connected unions, antichain grid, enclosure nesting")
