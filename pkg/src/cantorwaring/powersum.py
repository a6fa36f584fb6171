"""Images of f_{k,m} on boxes, the subdivision criterion, and the digit solver.

A box is a product of level-n intervals (the active coordinates) and of
fixed Cantor points (the frozen coordinates). Identical coordinates are kept
as one group with a multiplicity, so a box with thousands of coordinates
costs no more than its number of distinct words.

The solver is assembled from small realizers. Each realizer covers a closed
interval of targets with a fixed number of summands and can produce words
for any target inside it:

* ``SeedBox``       a box meeting the strong criterion, refined digit by digit
* ``ShiftFamily``   a realizer plus j extra coordinates pinned at 1 - r
* ``Scaled``        a realizer with l zero digits prepended (target times r^{lm})
* ``SliceSum``      one coordinate drawn from [1-r, 1-r+r^l] plus a realizer
* ``Union``         overlapping realizers
* ``LowerTail``     the infinite chain of slice sums accumulating at (1-r)^m
* ``ScaleCover``    [0, k] from a covered window by repeated scaling
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .bounds import BoundsProfile, check_conditions, g_alpha_1, profile
from .cantor import CantorParams, LevelInterval, SymbolWord, eval_prefix
from .numerics import Q, ceil_q


class SolverError(RuntimeError):
    """Internal failure of a construction whose success is a theorem."""


class TargetOutOfRange(ValueError):
    pass


class ParametersNotCertified(ValueError):
    pass


class NoSeedFound(ValueError):
    """Best-effort search found nothing at the searched depths (not a disproof)."""


class CriterionNotSatisfied(ValueError):
    pass


@dataclass(frozen=True)
class PowerSumProblem:
    params: CantorParams
    k: int
    m: int

    def __post_init__(self):
        if self.k < 1 or self.m < 1:
            raise ValueError("k and m must be positive")


ZERO_WORD = SymbolWord()
ONE_WORD = SymbolWord((1,))


# ---------------------------------------------------------------------------
# boxes


@dataclass(frozen=True)
class Group:
    word: SymbolWord
    count: int
    active: bool
    u: Optional[Fraction] = field(default=None, compare=False, repr=False)

    def value(self, params: CantorParams) -> Fraction:
        if self.u is None:
            object.__setattr__(self, "u", eval_prefix(params, self.word))
        return self.u


@dataclass(frozen=True)
class Box:
    params: CantorParams
    groups: tuple
    depth: int

    def __post_init__(self):
        for g in self.groups:
            if g.count < 1:
                raise ValueError("group multiplicity must be positive")
            if g.active and (g.word.period or len(g.word) != self.depth):
                raise ValueError("active coordinates must be level intervals at the box depth")

    @classmethod
    def uniform(cls, params, word, count, frozen=()) -> "Box":
        """``count`` active copies of the interval named by ``word``, plus frozen points."""
        word = word if isinstance(word, SymbolWord) else SymbolWord.parse(word)
        groups = [Group(word, count, True)]
        for w, c in frozen:
            w = w if isinstance(w, SymbolWord) else SymbolWord.parse(w)
            groups.append(Group(w, c, False))
        return cls(params, tuple(groups), len(word))

    @classmethod
    def from_endpoints(cls, params, words) -> "Box":
        words = [w if isinstance(w, SymbolWord) else SymbolWord.parse(w) for w in words]
        depth = len(words[0])
        merged = {}
        for w in words:
            merged[w] = merged.get(w, 0) + 1
        return cls(params, tuple(Group(w, c, True) for w, c in merged.items()), depth)

    @property
    def k(self) -> int:
        return sum(g.count for g in self.groups)

    @property
    def active_count(self) -> int:
        return sum(g.count for g in self.groups if g.active)

    @property
    def coords(self) -> list:
        out = []
        for g in self.groups:
            if g.active:
                iv = LevelInterval.of(self.params, g.word)
            else:
                c = eval_prefix(self.params, g.word)
                iv = LevelInterval(g.word, c, c)
            out.extend([iv] * g.count)
        return out

    def values(self):
        return [(g.value(self.params), g) for g in self.groups]


@dataclass(frozen=True)
class BoxImage:
    lo: Fraction
    hi: Fraction

    def __contains__(self, t):
        return self.lo <= t <= self.hi

    @property
    def width(self):
        return self.hi - self.lo


def box_image(box: Box, m: int) -> BoxImage:
    w = box.params.r ** box.depth
    lo = hi = Fraction(0)
    for u, g in box.values():
        lo += g.count * u ** m
        hi += g.count * ((u + w) if g.active else u) ** m
    return BoxImage(lo, hi)


def subdivision_ok(box: Box, m: int, strong: bool = True, count_frozen: bool = False) -> bool:
    """The subdivision criterion on the active coordinates.

    ``count_frozen`` adds frozen coordinates to the left-hand sum. That
    variant is not sound (frozen coordinates do not move between children,
    so they cancel in the overlap inequality) and is kept only so the
    difference can be demonstrated.
    """
    if box.k < 2:
        raise ValueError("criterion needs k >= 2")
    r, lam = box.params.r, box.params.lam
    act = [(u, g.count) for u, g in box.values() if g.active]
    if not act:
        return False
    u_max = max(u for u, _ in act)
    total = sum(c * u ** (m - 1) for u, c in act) - u_max ** (m - 1)
    if count_frozen:
        total += sum(g.count * u ** (m - 1) for u, g in box.values() if not g.active)
    reach = u_max + r ** box.depth
    if not strong:
        reach -= r ** (box.depth + 1)
    return total >= lam * reach ** (m - 1)


def children_images(box: Box, m: int):
    """All 2^A child boxes (A active coordinates, small A only) with their images."""
    r = box.params.r
    w = r ** box.depth
    act = []
    frozen = Fraction(0)
    for u, g in box.values():
        if g.active:
            act.extend([(u, g.word)] * g.count)
        else:
            frozen += g.count * u ** m
    out = []
    for v in itertools.product((0, 1), repeat=len(act)):
        lo = hi = frozen
        for (u, _), bit in zip(act, v):
            cu = u + bit * (1 - r) * w
            lo += cu ** m
            hi += (cu + w * r) ** m
        out.append((v, BoxImage(lo, hi)))
    return out


def _chain_layout(box: Box, m: int):
    """Active groups in chain order with integer m-th powers of the children's endpoints.

    Child endpoints at depth n+1 are integers over q^(n+1) (r = p/q), so the
    chain sums are kept as integers over q^((n+1)m); only the frozen part and
    the target stay rational.
    """
    r = box.params.r
    p, q = r.numerator, r.denominator
    n = box.depth
    Nq = q ** (n + 1)
    cw = p ** (n + 1)          # r^(n+1) * Nq
    step = (q - p) * p ** n    # (1 - r) r^n * Nq
    layout = []
    frozen_sum = Fraction(0)
    for u, g in box.values():
        if g.active:
            a0 = u.numerator * (Nq // u.denominator)
            a1 = a0 + step
            layout.append((g, u, u + Fraction(step, Nq), a0 ** m, a1 ** m,
                           (a0 + cw) ** m, (a1 + cw) ** m))
        else:
            frozen_sum += g.count * u ** m
    return layout, frozen_sum, Nq ** m


def _chain_image(layout, i):
    lo = hi = 0
    left = i
    for g, _, _, lo0, lo1, hi0, hi1 in layout:
        ones = min(left, g.count)
        zeros = g.count - ones
        left -= ones
        lo += ones * lo1 + zeros * lo0
        hi += ones * hi1 + zeros * hi0
    return lo, hi


def refine_target(box: Box, m: int, target, check="full") -> Box:
    """One digit of refinement: a child box whose image still contains ``target``.

    Children are searched along the monotone chain 0...0, 10...0, 110...0,
    ..., 1...1 of the active coordinates. Consecutive members differ in one
    coordinate, so under the criterion their images overlap; both endpoints
    increase along the chain, so the right member is found by bisection.

    ``check="full"`` verifies the criterion on parent and child, ``"child"``
    only on the child (the parent was verified when it was produced), and a
    false value skips both.
    """
    target = Q(target)
    if check == "full":
        img = box_image(box, m)
        if target not in img:
            raise TargetOutOfRange(f"target {target} outside box image [{img.lo}, {img.hi}]")
        if not subdivision_ok(box, m, strong=True):
            raise CriterionNotSatisfied("strong subdivision criterion fails for this box")
    layout, fsum, scale = _chain_layout(box, m)
    scaled_t = (target - fsum) * scale
    n_act = sum(entry[0].count for entry in layout)
    lo_i, hi_i = 0, n_act
    # largest i with chain-lo(i) <= target
    while lo_i < hi_i:
        mid = (lo_i + hi_i + 1) // 2
        if _chain_image(layout, mid)[0] <= scaled_t:
            lo_i = mid
        else:
            hi_i = mid - 1
    i = lo_i
    ilo, ihi = _chain_image(layout, i)
    clo, chi = fsum + Fraction(ilo, scale), fsum + Fraction(ihi, scale)
    if not clo <= target <= chi:
        raise SolverError(f"chain search failed at depth {box.depth}: target {target} not in "
                          f"[{clo}, {chi}]")
    groups = []
    left = i
    for g, u0, u1, *_ in layout:
        ones = min(left, g.count)
        left -= ones
        if ones:
            groups.append(Group(g.word.extend(1), ones, True, u1))
        if g.count - ones:
            groups.append(Group(g.word.extend(0), g.count - ones, True, u0))
    groups.extend(g for g in box.groups if not g.active)
    child = Box(box.params, tuple(groups), box.depth + 1)
    if check:
        if not subdivision_ok(child, m, strong=True):
            raise SolverError("criterion lost under refinement")
        if chi - clo > child.active_count * m * box.params.r ** child.depth:
            raise SolverError("image width exceeds the mean-value bound")
    return child


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class DecompositionCertificate:
    problem: PowerSumProblem
    target: Fraction
    entries: tuple  # (SymbolWord, multiplicity) pairs
    depth: int
    residual_bound: Fraction
    route: str = ""

    @property
    def words(self) -> list:
        out = []
        for w, c in self.entries:
            out.extend([w] * c)
        return out

    @property
    def values(self) -> list:
        return [eval_prefix(self.problem.params, w) for w in self.words]

    def power_sum(self) -> Fraction:
        p, m = self.problem.params, self.problem.m
        return sum((c * eval_prefix(p, w) ** m for w, c in self.entries), Fraction(0))

    def replay(self) -> tuple:
        """Exact check. Returns (ok, |sum - target|)."""
        p, m = self.problem.params, self.problem.m
        if sum(c for _, c in self.entries) != self.problem.k:
            return False, None
        err = abs(self.power_sum() - self.target)
        cap = Fraction(0)
        for w, c in self.entries:
            u = eval_prefix(p, w)
            cap += c * ((u + p.r ** len(w)) ** m - u ** m)
        ok = err <= self.residual_bound <= cap
        return ok, err


def _compact(entries):
    merged = {}
    order = []
    for w, c in entries:
        if c <= 0:
            continue
        if w not in merged:
            order.append(w)
            merged[w] = 0
        merged[w] += c
    return tuple((w, merged[w]) for w in order)


def scale_certificate(cert: DecompositionCertificate, l: int) -> DecompositionCertificate:
    if l < 0:
        raise ValueError("l must be nonnegative")
    if l == 0:
        return cert
    f = cert.problem.params.r ** (l * cert.problem.m)
    entries = tuple((w.prepend_zeros(l), c) for w, c in cert.entries)
    return DecompositionCertificate(cert.problem, cert.target * f, entries, cert.depth + l,
                                    cert.residual_bound * f, cert.route)


# ---------------------------------------------------------------------------
# realizers


@dataclass
class Assembly:
    entries: list
    residual: Fraction

    def pad(self, count: int, have: int) -> "Assembly":
        if have < count:
            self.entries.append((ZERO_WORD, count - have))
        return self


class Realizer:
    lo: Fraction
    hi: Fraction
    count: int

    def realize(self, t: Fraction, depth: int, trace=None) -> Assembly:
        raise NotImplementedError

    def covers(self, t) -> bool:
        return self.lo <= t <= self.hi


class SeedBox(Realizer):
    def __init__(self, box: Box, m: int, label: str = "seed"):
        if not subdivision_ok(box, m, strong=True):
            raise SolverError(f"seed box for {label} fails the strong criterion")
        self.box, self.m, self.label = box, m, label
        img = box_image(box, m)
        self.lo, self.hi, self.count = img.lo, img.hi, box.k

    def realize(self, t, depth, trace=None):
        box = self.box
        while box.depth < depth:
            # the parent was checked when it was created; only the child needs it
            child = refine_target(box, self.m, t, check="child")
            if trace is not None:
                trace.append((box, child))
            box = child
        img = box_image(box, self.m)
        if t not in img:
            raise SolverError("target escaped the refined box")
        return Assembly([(g.word, g.count) for g in box.groups], img.width)


class ShiftFamily(Realizer):
    """``base`` plus j coordinates at ``unit_word`` for j = 0..J, padded to a fixed count."""

    def __init__(self, base: Realizer, params: CantorParams, m: int, J: int,
                 unit_word: SymbolWord = ONE_WORD):
        self.base, self.J, self.unit_word = base, J, unit_word
        self.unit = eval_prefix(params, unit_word) ** m
        if J > 0 and base.hi - base.lo < self.unit:
            raise SolverError("shifted copies do not overlap")
        self.lo, self.hi = base.lo, base.hi + J * self.unit
        self.count = base.count + J

    def realize(self, t, depth, trace=None):
        j = max(0, ceil_q((t - self.base.hi) / self.unit))
        if j > self.J or t - j * self.unit < self.base.lo:
            raise SolverError("shift family does not reach the target")
        asm = self.base.realize(t - j * self.unit, depth, trace)
        if j:
            asm.entries.append((self.unit_word, j))
        return asm.pad(self.count, self.base.count + j)


class Scaled(Realizer):
    def __init__(self, inner: Realizer, params: CantorParams, m: int, l: int):
        self.inner, self.l = inner, l
        self.f = params.r ** (l * m)
        self.lo, self.hi, self.count = inner.lo * self.f, inner.hi * self.f, inner.count

    def realize(self, t, depth, trace=None):
        asm = self.inner.realize(t / self.f, depth, trace)
        asm.entries = [(w.prepend_zeros(self.l), c) for w, c in asm.entries]
        asm.residual *= self.f
        return asm


def find_slice_point(params: CantorParams, m: int, l: int, A: Fraction, B: Fraction,
                     max_depth: int = 400):
    """A point y of C_alpha in [1-r, 1-r+r^l] with A <= y^m <= B, as an exact word.

    Depth-first over the level tree of the slice, leftmost first. A node is
    accepted as soon as one of its endpoints (left endpoint: finite word;
    right endpoint: word followed by repeating ones) has its power in [A, B].
    """
    r = params.r
    start = SymbolWord((1,) + (0,) * (l - 1))
    stack = [start]
    while stack:
        w = stack.pop()
        if len(w) > max_depth:
            raise SolverError("slice search exceeded its depth limit")
        u = eval_prefix(params, w)
        v = u + r ** len(w)
        lo, hi = u ** m, v ** m
        if hi < A or lo > B:
            continue
        if A <= lo <= B:
            return w, u
        if A <= hi <= B:
            return w.with_tail_ones(), v
        stack.append(w.extend(1))
        stack.append(w.extend(0))
    return None


class SliceSum(Realizer):
    def __init__(self, inner: Realizer, params: CantorParams, m: int, l: int):
        r, lam = params.r, params.lam
        if l < 1:
            raise SolverError("slice level must be at least 1")
        gap = lam * r ** l / (1 - r)
        if gap > inner.hi - inner.lo:
            raise SolverError(f"slice gap bound {gap} exceeds the inner width")
        self.inner, self.params, self.m, self.l = inner, params, m, l
        self.lo = inner.lo + (1 - r) ** m
        self.hi = inner.hi + (1 - r + r ** l) ** m
        self.count = inner.count + 1

    def realize(self, t, depth, trace=None):
        found = find_slice_point(self.params, self.m, self.l, t - self.inner.hi, t - self.inner.lo)
        if found is None:
            raise SolverError("no slice point found although the gap bound holds")
        word, y = found
        asm = self.inner.realize(t - y ** self.m, depth, trace)
        asm.entries.append((word, 1))
        return asm


class Union(Realizer):
    def __init__(self, pieces, count: Optional[int] = None):
        self.pieces = sorted(pieces, key=lambda p: p.lo)
        reach = self.pieces[0].hi
        for p in self.pieces[1:]:
            if p.lo > reach:
                raise SolverError(f"pieces leave a hole ({reach}, {p.lo})")
            reach = max(reach, p.hi)
        self.lo, self.hi = self.pieces[0].lo, reach
        self.count = count if count is not None else max(p.count for p in self.pieces)
        if any(p.count > self.count for p in self.pieces):
            raise SolverError("piece uses more summands than the union allows")

    def realize(self, t, depth, trace=None):
        for p in self.pieces:
            if p.covers(t):
                return p.realize(t, depth, trace).pad(self.count, p.count)
        raise SolverError(f"no piece covers {t}")


class LowerTail(Realizer):
    """Targets in [(1-r)^m, k' r^m + (1-r+r^{m0})^m] via slice sums T_n, n = 0, 1, ..."""

    def __init__(self, inner: Realizer, params: CantorParams, m: int, m0: int):
        self.inner, self.params, self.m, self.m0 = inner, params, m, m0
        r = params.r
        self.base = (1 - r) ** m
        self.lo = self.base
        self.hi = inner.hi * r ** m + (1 - r + r ** m0) ** m
        self.count = inner.count + 1

    def piece(self, n: int) -> SliceSum:
        return SliceSum(Scaled(self.inner, self.params, self.m, n + 1), self.params, self.m,
                        self.m * n + self.m0)

    def realize(self, t, depth, trace=None):
        if t == self.base:
            return Assembly([(ONE_WORD, 1)], Fraction(0)).pad(self.count, 1)
        r, m = self.params.r, self.m
        n = 0
        while self.inner.lo * r ** (m * (n + 1)) + self.base > t:
            n += 1
        p = self.piece(n)
        if not p.covers(t):
            raise SolverError(f"tail piece T_{n} misses {t}")
        return p.realize(t, depth, trace).pad(self.count, p.count)


class ScaleCover(Realizer):
    """[0, k] from a realizer of [lo, k] with k r^m >= lo."""

    def __init__(self, core: Realizer, params: CantorParams, m: int, k: int):
        self.core, self.params, self.m = core, params, m
        if core.hi != k:
            raise SolverError("core must reach k")
        if core.hi * params.r ** m < core.lo:
            raise SolverError("scaled copies of the core do not overlap")
        self.lo, self.hi, self.count = Fraction(0), Fraction(k), k

    def realize(self, t, depth, trace=None):
        if t == 0:
            return Assembly([(ZERO_WORD, self.count)], Fraction(0))
        f = self.params.r ** self.m
        l, s = 0, t
        while s < self.core.lo:
            s /= f
            l += 1
        if l == 0:
            return self.core.realize(t, depth, trace).pad(self.count, self.core.count)
        return Scaled(self.core, self.params, self.m, l).realize(t, depth, trace).pad(
            self.count, self.core.count)


# ---------------------------------------------------------------------------
# plans


def _seed_word(n: int) -> SymbolWord:
    return SymbolWord((1,) + (0,) * (n - 1))


def full_range_plan(prof: BoundsProfile, K: int) -> Realizer:
    """[k_*(1-r)^m, K] with K summands, for K satisfying A1."""
    p, m, ks = prof.params, prof.m, prof.k_star
    rep_ok = K >= ks and K >= prof.lam / (1 - prof.r) ** (m - 1) + 1
    if not rep_ok:
        raise ParametersNotCertified(f"K = {K} fails A1")
    small = SeedBox(Box.uniform(p, _seed_word(prof.n_star), ks), m, "k_* seed")
    family = ShiftFamily(small, p, m, K - ks)
    full = SeedBox(Box.uniform(p, ONE_WORD, K), m, "full box")
    return Union([family, full], K)


def slice_plan(prof: BoundsProfile, k: int, kappa: int) -> Realizer:
    """[b, kappa] for k satisfying A1, A2, A3 and kappa >= k + k_* - 1."""
    rep = check_conditions(prof, k)
    if not (rep.a1 and rep.a2 and rep.a3):
        raise ParametersNotCertified(f"k = {k} fails A1/A2/A3")
    if kappa < k + prof.k_star - 1:
        raise ParametersNotCertified("kappa too small")
    p, m = prof.params, prof.m
    inner = Scaled(full_range_plan(prof, k), p, m, 1)
    sl = SliceSum(inner, p, m, rep.l0)
    if sl.hi < prof.a * prof.r ** m + 2 * (1 - prof.r) ** m:
        raise SolverError("slice piece too short for the shift family")
    fam = ShiftFamily(sl, p, m, prof.k_star - 2)
    return Union([fam, full_range_plan(prof, kappa)], kappa)


def lower_tail_plan(prof: BoundsProfile, k: int, kappa: int) -> Realizer:
    """[(1-r)^m, kappa] for k satisfying A1, A2', A3, A4 and kappa >= k + k_*."""
    rep = check_conditions(prof, k)
    if not rep.certified:
        raise ParametersNotCertified(f"k = {k} fails one of A1, A2', A3, A4")
    if kappa < k + prof.k_star:
        raise ParametersNotCertified("kappa too small")
    kp = k + prof.k_star - 1
    tail = LowerTail(slice_plan(prof, k, kp), prof.params, prof.m, rep.m0)
    big = slice_plan(prof, k, kappa)
    return Union([tail, big], kappa)


def scaled_window_plan(prof: BoundsProfile, kp: int, kappa: int) -> Realizer:
    """[a r^m, kappa] for kp >= k_* satisfying A1, r^m (kp - a) >= (1-r)^m, kappa >= kp + k_*."""
    p, m, r = prof.params, prof.m, prof.r
    if r ** m * (kp - prof.a) < (1 - r) ** m:
        raise ParametersNotCertified("scaled window too short")
    if kappa < kp + prof.k_star:
        raise ParametersNotCertified("kappa too small")
    part1 = ShiftFamily(Scaled(full_range_plan(prof, kp), p, m, 1), p, m, prof.k_star)
    part2 = full_range_plan(prof, kappa)
    return Union([part1, part2], kappa)


@dataclass
class Plan:
    realizer: Realizer
    route: str
    inner_k: Optional[int] = None


@lru_cache(maxsize=256)
def build_plan(params: CantorParams, k: int, m: int) -> Plan:
    """Pick a certified construction for [0, k] with k summands (m >= 2)."""
    if m < 2:
        raise ValueError("the power route needs m >= 2")
    prof = profile(params, m)
    r = params.r
    if k * r ** m >= (1 - r) ** m:
        for inner in range(k - prof.k_star, 1, -1):
            if check_conditions(prof, inner).certified:
                core = lower_tail_plan(prof, inner, k)
                return Plan(ScaleCover(core, params, m, k), "sharp", inner)
    for kp in range(prof.k_star, k - prof.k_star + 1):
        a1 = kp >= prof.lam / (1 - r) ** (m - 1) + 1
        if a1 and r ** m * (kp - prof.a) >= (1 - r) ** m:
            core = scaled_window_plan(prof, kp, k)
            return Plan(ScaleCover(core, params, m, k), "general", kp)
    raise ParametersNotCertified(
        f"no certified construction for k = {k}, m = {m}, {params}; try best_effort")


def certified_k_min(params: CantorParams, m: int, limit: int = 100000) -> Optional[int]:
    """Smallest k for which :func:`build_plan` finds a construction."""
    if m == 1:
        return g_alpha_1(params)
    for k in range(2, limit):
        try:
            build_plan(params, k, m)
            return k
        except ParametersNotCertified:
            continue
    return None


def _linear_realize(params: CantorParams, k: int, t: Fraction, depth: int, trace):
    """m = 1: shift the target into [k(1-r), k] by l copies of 1 - r, then drop them."""
    r = params.r
    if k * r < 1 - r:
        raise ParametersNotCertified(f"k = {k} is below ceil(1/r - 1)")
    l = max(0, ceil_q((k * (1 - r) - t) / (1 - r)))
    seed = SeedBox(Box.uniform(params, ONE_WORD, k), 1, "linear")
    s = t + l * (1 - r)
    if not seed.covers(s):
        raise SolverError("integer shift missed the seed window")
    asm = seed.realize(s, depth, trace)
    words = []
    for w, c in asm.entries:
        words.extend([w] * c)
    words = [w.flip_first() if i < l else w for i, w in enumerate(words)]
    return Assembly([(w, 1) for w in words], asm.residual)


def _best_effort(problem: PowerSumProblem, t: Fraction, depth: int, max_seed_depth: int,
                 budget: int, trace):
    p, k, m = problem.params, problem.k, problem.m
    spent = 0
    for n in range(1, max_seed_depth + 1):
        L = [SymbolWord(tuple((i >> (n - 1 - j)) & 1 for j in range(n))) for i in range(1 << n)]
        for active in range(k, 1, -1):
            for combo in itertools.combinations_with_replacement(L, active):
                spent += 1
                if spent > budget:
                    raise NoSeedFound(f"budget of {budget} seed boxes spent")
                box = Box.from_endpoints(p, combo)
                if active < k:
                    box = Box(p, box.groups + (Group(ZERO_WORD, k - active, False),), n)
                img = box_image(box, m)
                if t in img and subdivision_ok(box, m):
                    return SeedBox(box, m).realize(t, max(depth, n), trace)
    raise NoSeedFound(f"no admissible seed box found up to depth {max_seed_depth}")


def decompose(problem: PowerSumProblem, target, digits: int, mode: str = "certified",
              trace: Optional[list] = None, max_seed_depth: int = 4,
              budget: int = 10 ** 6) -> DecompositionCertificate:
    """Write ``target`` as a sum of k m-th powers of C_alpha points to ``digits`` digits."""
    t = Q(target)
    p, k, m = problem.params, problem.k, problem.m
    if digits < 1:
        raise ValueError("digits must be at least 1")
    if not 0 <= t <= k:
        raise TargetOutOfRange(f"target {t} outside [0, {k}]")
    if mode == "best_effort":
        asm = _best_effort(problem, t, digits, max_seed_depth, budget, trace)
        route = "best_effort"
    elif m == 1:
        asm = _linear_realize(p, k, t, digits, trace)
        route = "linear"
    else:
        plan = build_plan(p, k, m)
        asm = plan.realizer.realize(t, digits, trace)
        route = plan.route
    entries = _compact(asm.entries)
    if sum(c for _, c in entries) != k:
        raise SolverError(f"assembled {sum(c for _, c in entries)} summands, expected {k}")
    depth = max((len(w) for w, _ in entries), default=0)
    cert = DecompositionCertificate(problem, t, entries, depth, asm.residual, route)
    return cert
