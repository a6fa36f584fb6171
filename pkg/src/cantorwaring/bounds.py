"""Bound formulas and side conditions for sums of m-th powers on C_alpha.

Everything rational is exact. The two constants that are not (e to the power
1/(1-r), and the logarithms in the large-m threshold) are carried as
certified enclosures and only ever rounded outward.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cantor import CantorParams
from .numerics import (
    CertifiedScalar, RationalInterval, ceil_q, certified_log, exp_scalar, floor_log_base_r,
    floor_q, log_scalar,
)


@dataclass(frozen=True)
class BoundsProfile:
    params: CantorParams
    m: int
    n_star: int
    k_star: int
    a: Fraction
    b: Fraction
    lower_bound: Fraction
    target_k: int

    @property
    def r(self) -> Fraction:
        return self.params.r

    @property
    def lam(self) -> Fraction:
        return self.params.lam


def profile(params: CantorParams, m: int) -> BoundsProfile:
    if not isinstance(m, int) or m < 1:
        raise ValueError("m must be a positive integer")
    r, lam = params.r, params.lam
    n_star = floor_log_base_r(r, Fraction(1, m)) + 1
    k_star = floor_q(lam * (1 + r ** n_star / (1 - r)) ** (m - 1)) + 2
    a = k_star * (1 - r) ** m
    b = a * r ** m + (1 - r) ** m
    lower = (1 / r - 1) ** m
    return BoundsProfile(params, m, n_star, k_star, a, b, lower, ceil_q(lower))


@dataclass
class ConditionReport:
    k: int
    l0: Optional[int]
    m0: Optional[int]
    a1: bool
    a2: bool
    a2prime: bool
    a3: bool
    a4: bool
    degenerate: bool = False
    values: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        """A1, A2', A3 and A4 all hold: the inner size used by the sharp route."""
        return self.a1 and self.a2prime and self.a3 and self.a4

    def as_row(self) -> dict:
        return {"k": self.k, "l0": self.l0, "m0": self.m0, "A1": self.a1, "A2": self.a2,
                "A2'": self.a2prime, "A3": self.a3, "A4": self.a4, "degenerate": self.degenerate}


def check_conditions(prof: BoundsProfile, k: int) -> ConditionReport:
    if k < 2:
        raise ValueError("k must be at least 2")
    r, lam, m = prof.r, prof.lam, prof.m
    ks, a, b = prof.k_star, prof.a, prof.b
    a1_rhs = lam / (1 - r) ** (m - 1) + 1
    a1 = k >= ks and k >= a1_rhs
    a2_rhs = lam / ((1 - r) * r ** m) + a
    a2p_rhs = lam / ((1 - r) * r ** m) + b + 1 - ks
    a2 = k <= a2_rhs
    a2p = k <= a2p_rhs
    values = {"A1_rhs": a1_rhs, "A2_rhs": a2_rhs, "A2'_rhs": a2p_rhs}
    degenerate = False

    if k - a > 0:
        l0 = m + floor_log_base_r(r, (1 - r) * (k - a) / lam) + 1
        a3_lhs = (k - a) * r ** m + (1 - r + r ** l0) ** m
        a3_rhs = 2 * (1 - r) ** m
        a3 = a3_lhs >= a3_rhs
        values.update({"A3_lhs": a3_lhs, "A3_rhs": a3_rhs})
    else:
        l0, a3, degenerate = None, False, True

    kp = k + ks - 1
    if kp - b > 0:
        m0 = m + floor_log_base_r(r, (1 - r) * (kp - b) / lam) + 1
    else:
        m0, degenerate = None, True
    a4_lhs = (kp - b) * (1 + m * r / lam * (1 - r) ** m)
    a4_rhs = (1 / r - 1) ** m + a - b
    a4 = a4_lhs >= a4_rhs
    values.update({"A4_lhs": a4_lhs, "A4_rhs": a4_rhs})
    return ConditionReport(k, l0, m0, a1, a2, a2p, a3, a4, degenerate, values)


def g_alpha_1(params: CantorParams) -> int:
    return ceil_q(1 / params.r - 1)


def lower_bound_gap(prof: BoundsProfile, k: int):
    """The open interval (k r^m, (1-r)^m) missed by k summands, or None."""
    if k < 1:
        raise ValueError("k must be positive")
    if k < prof.lower_bound:
        return (k * prof.r ** prof.m, (1 - prof.r) ** prof.m)
    return None


def _e_scalar(params: CantorParams) -> CertifiedScalar:
    return exp_scalar(1 / (1 - params.r))


@dataclass(frozen=True)
class UpperBoundReport:
    M: RationalInterval
    bound: RationalInterval
    integer_bound: int


def upper_bound_M(params: CantorParams, m: int, bits: int = 40) -> UpperBoundReport:
    """Certified enclosure of M(r, m) and of the upper bound M + lam e^{1/(1-r)} + 3."""
    r, lam = params.r, params.lam
    E = _e_scalar(params).at(bits)
    c = E * lam + 2
    t1 = c * (1 - r) ** m + (1 / r - 1) ** m
    t3 = lam / (1 - r) ** (m - 1) + 1
    M = RationalInterval(max(t1.lo, c.lo, t3), max(t1.hi, c.hi, t3))
    bound = M + E * lam + 3
    return UpperBoundReport(M, bound, ceil_q(bound.hi))


def ratio_condition_holds(r: Fraction) -> bool:
    """r < (3 - sqrt 5)/2, i.e. (3 - 2r)^2 > 5 for r < 1/2."""
    return (3 - 2 * r) ** 2 > 5


class RatioConditionViolated(ValueError):
    pass


def large_m_threshold(params: CantorParams, target_width=Fraction(1, 10 ** 6)) -> RationalInterval:
    """Enclosure of the exponent beyond which G_alpha(m) = ceil((1/r - 1)^m)."""
    r, lam = params.r, params.lam
    if not ratio_condition_holds(r):
        raise RatioConditionViolated(f"r = {r} is not below (3 - sqrt 5)/2")
    E = _e_scalar(params)
    # numerator argument as a certified scalar, then log by monotonicity
    coeff = (2 - r) * (lam / r + 1 - r)
    denom = log_scalar((1 / r - 1) * (1 - r))
    bits = 16
    while True:
        e_iv = E.at(bits)
        arg = (e_iv * lam + 2) * coeff
        w = Fraction(1, 1 << bits)
        num = RationalInterval(certified_log(arg.lo, w).lo, certified_log(arg.hi, w).hi)
        res = num / denom.at(bits)
        if res.width <= target_width:
            return res
        bits += 16


def integer_threshold(params: CantorParams) -> int:
    return ceil_q(large_m_threshold(params).hi)


def k_star_exp_bound(params: CantorParams) -> int:
    """floor(lam e^{1/(1-r)}) + 2, an upper bound for k_* (certified)."""
    E = _e_scalar(params)
    enc = E.at(40) * params.lam
    lo, hi = floor_q(enc.lo), floor_q(enc.hi)
    while lo != hi:
        enc = E.refine(16) * params.lam
        lo, hi = floor_q(enc.lo), floor_q(enc.hi)
    return lo + 2


def certification_table(params: CantorParams, ms, k_of_m) -> list:
    rows = []
    for m in ms:
        prof = profile(params, m)
        k = k_of_m(prof)
        rep = check_conditions(prof, k)
        row = {"m": m, "n_star": prof.n_star, "k_star": prof.k_star}
        row.update(rep.as_row())
        rows.append(row)
    return rows
