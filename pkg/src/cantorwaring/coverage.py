"""Brute-force ground truth: images of f_{k,m} on F_n^k, gaps, and the
two- and three-summand constructions for the ternary set."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bounds import profile
from .cantor import CantorParams, SymbolWord, eval_prefix, left_endpoints
from .numerics import certified_compare, root_scalar
from .powersum import Box, PowerSumProblem, box_image, subdivision_ok

DEFAULT_BUDGET = 10 ** 7


class BudgetExceeded(RuntimeError):
    def __init__(self, needed: int, budget: int):
        super().__init__(f"enumeration needs {needed} boxes, budget is {budget}")
        self.needed, self.budget = needed, budget


def merge_intervals(intervals) -> list:
    """Sort and coalesce closed intervals; touching intervals merge."""
    out = []
    for lo, hi in sorted(intervals):
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return out


@dataclass(frozen=True)
class CoverageSet:
    intervals: tuple
    k: int
    m: int
    n: int
    params: CantorParams

    def contains(self, x) -> bool:
        return any(lo <= x <= hi for lo, hi in self.intervals)

    def meets_open(self, a, b) -> bool:
        """Does the union meet the open interval (a, b)?"""
        return any(lo < b and a < hi for lo, hi in self.intervals)

    def subset_of(self, other: "CoverageSet") -> bool:
        j = 0
        outer = other.intervals
        for lo, hi in self.intervals:
            while j < len(outer) and outer[j][1] < lo:
                j += 1
            if j == len(outer) or not (outer[j][0] <= lo and hi <= outer[j][1]):
                return False
        return True

    @property
    def lo(self):
        return self.intervals[0][0]

    @property
    def hi(self):
        return self.intervals[-1][1]


def multiset_count(n: int, k: int) -> int:
    return math.comb((1 << n) + k - 1, k)


def enumerate_image(problem: PowerSumProblem, n: int, budget: int = DEFAULT_BUDGET) -> CoverageSet:
    """Exact union of box images over all size-k multisets of level-n intervals."""
    need = multiset_count(n, problem.k)
    if need > budget:
        raise BudgetExceeded(need, budget)
    p, m = problem.params, problem.m
    w = p.r ** n
    lows = [u ** m for u in left_endpoints(p, n)]
    highs = [(u + w) ** m for u in left_endpoints(p, n)]
    idx = range(len(lows))
    pieces = []
    for combo in itertools.combinations_with_replacement(idx, problem.k):
        pieces.append((sum(lows[i] for i in combo), sum(highs[i] for i in combo)))
    return CoverageSet(tuple(merge_intervals(pieces)), problem.k, m, n, p)


def enumerate_image_minkowski(problem: PowerSumProblem, n: int) -> CoverageSet:
    """Same set, computed as a k-fold Minkowski sum of merged one-summand images."""
    p, m = problem.params, problem.m
    w = p.r ** n
    single = merge_intervals([(u ** m, (u + w) ** m) for u in left_endpoints(p, n)])
    acc = [(Fraction(0), Fraction(0))]
    for _ in range(problem.k):
        acc = merge_intervals([(a + c, b + d) for a, b in acc for c, d in single])
    return CoverageSet(tuple(acc), problem.k, m, n, p)


@dataclass(frozen=True)
class GapReport:
    gaps: tuple
    sup_gap: Fraction


def gap_report(cov) -> GapReport:
    ivs = cov.intervals if isinstance(cov, CoverageSet) else merge_intervals(cov)
    gaps = tuple((ivs[i][1], ivs[i + 1][0]) for i in range(len(ivs) - 1))
    sup = max((b - a for a, b in gaps), default=Fraction(0))
    return GapReport(gaps, sup)


def slice_power_image(params: CantorParams, m: int, l: int, n: int) -> list:
    """f_{1,m} of the level-n intervals inside [1-r, 1-r+r^l], merged."""
    if n < l:
        raise ValueError("depth must be at least the slice level")
    r = params.r
    w = r ** n
    out = []
    for i in range(1 << (n - l)):
        bits = (1,) + (0,) * (l - 1) + tuple((i >> (n - l - 1 - j)) & 1 for j in range(n - l))
        u = eval_prefix(params, SymbolWord(bits))
        out.append((u ** m, (u + w) ** m))
    return merge_intervals(out)


def slice_gap_check(params: CantorParams, m: int, l: int, n: int) -> tuple:
    """(measured sup gap, bound lam r^l / (1 - r)) for the powered slice at depth n."""
    rep = gap_report(slice_power_image(params, m, l, n))
    return rep.sup_gap, params.lam * params.r ** l / (1 - params.r)


# ---------------------------------------------------------------------------
# two summands: windows of [0, 2] missed near 2


@dataclass(frozen=True)
class WindowRow:
    n: int
    R13: Fraction
    R22: Fraction
    L23: Fraction

    @property
    def window(self) -> Optional[tuple]:
        if self.R13 < self.R22 < self.L23:
            return (self.R22, self.L23)
        return None


def window_quantities(params: CantorParams, m: int, n: int) -> WindowRow:
    """Endpoints built from the last three level-n intervals u1 < u2 < u3."""
    if n < 2:
        raise ValueError("the construction needs n >= 2")
    r = params.r
    w = r ** n
    u3 = 1 - w
    u2 = 1 - r ** (n - 1)
    u1 = 1 - r ** (n - 2) + r ** (n - 1) - w
    R13 = (u1 + w) ** m + 1
    R22 = 2 * (u2 + w) ** m
    L23 = u2 ** m + u3 ** m
    return WindowRow(n, R13, R22, L23)


def two_power_window(params: CantorParams, m: int, max_n: int, cross_check_up_to: int = 6,
                     budget: int = DEFAULT_BUDGET) -> list:
    """Windows (R22, L23) missed by two m-th powers, for 2 <= n <= max_n.

    Each emitted window is checked to be disjoint from the brute-force image
    at the same depth when that depth is at most ``cross_check_up_to``.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    out = []
    prob = PowerSumProblem(params, 2, m)
    for n in range(2, max_n + 1):
        row = window_quantities(params, m, n)
        win = row.window
        if win is None:
            continue
        if n <= cross_check_up_to:
            cov = enumerate_image(prob, n, budget)
            if cov.meets_open(*win):
                raise AssertionError(f"window at n={n} meets the level-{n} image")
        out.append((n, win))
    return out


# ---------------------------------------------------------------------------
# three summands near 3


@dataclass(frozen=True)
class EpsilonResult:
    m: int
    n: int
    epsilon: Fraction


def three_power_epsilon(m: int, cap: int = 64) -> EpsilonResult:
    """[3 - eps, 3] is covered by three m-th powers of ternary Cantor points."""
    if m < 1:
        raise ValueError("m must be positive")
    third = Fraction(1, 3)
    c = 1 - root_scalar(Fraction(1, 2), m)
    # n = floor(-log_3 c) + 1 is the least n with 3^-n < c
    n = 1
    while certified_compare(third ** n, c, cap) != "<":
        n += 1
    # exact cross-check: 3^-n < 1 - 2^(-1/m)  <=>  (1 - 3^-n)^m > 1/2
    if not (1 - third ** n) ** m > Fraction(1, 2):
        raise AssertionError("certified n disagrees with the exact power test")
    if n > 1 and (1 - third ** (n - 1)) ** m > Fraction(1, 2):
        raise AssertionError("n is not minimal")
    params = CantorParams(third)
    seed = Box.uniform(params, SymbolWord((1,) * n), 3)
    if not subdivision_ok(seed, m, strong=True):
        raise AssertionError("seed box fails the strong criterion")
    eps = 3 - 3 * (1 - third ** n) ** m
    if box_image(seed, m).lo != 3 - eps:
        raise AssertionError("seed image disagrees with epsilon")
    if eps < Fraction(1, 2):
        raise AssertionError(f"epsilon {eps} below 1/2 for m={m}")
    return EpsilonResult(m, n, eps)


# ---------------------------------------------------------------------------
# conjecture probe


@dataclass
class ProbeReport:
    params: CantorParams
    m: int
    k: int
    window: tuple
    gaps_by_depth: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        last = max(self.gaps_by_depth)
        gaps = self.gaps_by_depth[last]
        if not gaps:
            return f"no obstruction found at depth {last}"
        return (f"{len(gaps)} gap(s) in the window at depth {last}; finite-depth images "
                "over-approximate, so this is a trend, not a counterexample")

    def trend(self) -> list:
        return [(n, len(g), max((b - a for a, b in g), default=Fraction(0)))
                for n, g in sorted(self.gaps_by_depth.items())]


def conjecture_probe(params: CantorParams, m: int, depths, k: Optional[int] = None,
                     budget: int = DEFAULT_BUDGET) -> ProbeReport:
    """Gaps of the level-n image inside [k r^m, k] for k = ceil((1/r - 1)^m)."""
    prof = profile(params, m)
    k = prof.target_k if k is None else k
    lo, hi = k * params.r ** m, Fraction(k)
    rep = ProbeReport(params, m, k, (lo, hi))
    prob = PowerSumProblem(params, k, m)
    for n in depths:
        cov = enumerate_image(prob, n, budget)
        gaps = [(a, b) for a, b in gap_report(cov).gaps if a < hi and b > lo]
        rep.gaps_by_depth[n] = gaps
    return rep
