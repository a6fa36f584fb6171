"""Sums of m-th powers on the Cantor dust W = C + iC.

Every summand is z = x + iy with x and y ternary Cantor points given by
words. The constructions use four groups of K summands each:

* a real group      z = x            contributes     [0, K]
* an axis group     z = i x          contributes i^m [0, K]
* segment groups    z = (1 + i r^n) x  or  (r^n + i) x,
                    contributing (1 + i r^n)^m [0, K] or (r^n + i)^m [0, K]

(r^n + i)^m is i^m times the conjugate of (1 + i r^n)^m, so a segment group
and its mirror, run with the same real coefficient, add up to a vector along
a fixed diagonal or axis that depends only on m mod 4. The driver places the
target in the cone spanned by these vectors with exact 2x2 arithmetic,
hands each real coefficient to the real solver, and lifts the words.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cantor import CantorParams, SymbolWord, eval_prefix
from .numerics import (
    CertifiedScalar, Q, RationalInterval, arctan_scalar, certified_compare, pi_scalar,
)
from .powersum import PowerSumProblem, SolverError, build_plan, decompose

ZERO = SymbolWord()


@dataclass(frozen=True)
class ComplexRational:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Q(self.re))
        object.__setattr__(self, "im", Q(self.im))

    @staticmethod
    def lift(z) -> "ComplexRational":
        return z if isinstance(z, ComplexRational) else ComplexRational(Q(z), Fraction(0))

    def __add__(self, o):
        o = ComplexRational.lift(o)
        return ComplexRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = ComplexRational.lift(o)
        return ComplexRational(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __mul__(self, o):
        o = ComplexRational.lift(o)
        return ComplexRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("nonnegative powers only")
        out, base = ComplexRational(Fraction(1)), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self):
        return ComplexRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __str__(self):
        return f"{self.re} + {self.im}i" if self.im >= 0 else f"{self.re} - {-self.im}i"

    @classmethod
    def parse(cls, text: str) -> "ComplexRational":
        """Accepts "a/b,c/d" or "a/b+c/d i" style input."""
        t = text.replace(" ", "")
        if "," in t:
            a, b = t.split(",")
            return cls(Fraction(a), Fraction(b))
        if t.endswith("i"):
            body = t[:-1]
            for idx in range(len(body) - 1, 0, -1):
                if body[idx] in "+-" and body[idx - 1] not in "/eE":
                    return cls(Fraction(body[:idx]), Fraction(body[idx:] or "1"))
            return cls(Fraction(0), Fraction(body))
        return cls(Fraction(t))


I = ComplexRational(Fraction(0), Fraction(1))


def i_pow(m: int) -> ComplexRational:
    return [ComplexRational(1), I, ComplexRational(-1), ComplexRational(0, -1)][m % 4]


@dataclass(frozen=True)
class RotationVector:
    n: int
    m: int
    value: ComplexRational


def rotation_vector(params: CantorParams, n: int, m: int) -> RotationVector:
    """(1 + i r^n)^m for n >= 0 and (r^|n| + i)^m for n < 0."""
    t = params.r ** abs(n)
    base = ComplexRational(1, t) if n >= 0 else ComplexRational(t, 1)
    return RotationVector(n, m, base ** m)


def theta_scalar(params: CantorParams, n: int) -> CertifiedScalar:
    """theta_n = arctan r^n (for n < 0 this is pi/2 - theta_|n|)."""
    if n >= 0:
        return arctan_scalar(params.r ** n)
    return pi_scalar() / 2 - arctan_scalar(params.r ** (-n))


def theta_enclosure(params: CantorParams, n: int, width) -> RationalInterval:
    s = theta_scalar(params, n)
    enc = s.enclosure
    for _ in range(64):
        if enc.width <= width:
            return enc
        enc = s.refine(16)
    raise ArithmeticError("theta enclosure did not reach the requested width")


def angle_chain_holds(params: CantorParams, n: int) -> bool:
    """theta_{n+1} < theta_n <= 3 theta_{n+1} - r^{3n+3}, decided by certified comparison."""
    a, b = theta_scalar(params, n + 1), theta_scalar(params, n)
    first = certified_compare(a, b) == "<"
    second = certified_compare(b, 3 * a - params.r ** (3 * n + 3)) == "<"
    return first and second


def angle_window(params: CantorParams, m: int, cap: Optional[int] = None) -> int:
    """The n0 >= 0 with m theta_{n0+1} <= pi/2 < m theta_{n0}."""
    cap = 4 * m if cap is None else cap
    half_pi = pi_scalar() / 2
    for n in range(cap + 1):
        upper = certified_compare(m * theta_scalar(params, n), half_pi) == ">"
        lower = certified_compare(m * theta_scalar(params, n + 1), half_pi) == "<"
        if upper and lower:
            return n
    raise SolverError(f"no angle window within {cap} indices")


def disk_cover_budget(m: int) -> int:
    if m < 3:
        raise ValueError("the disk covering needs m >= 3")
    if not Fraction(2 ** (m + 6)) * Fraction(2, 3) ** m / 100 > 1:
        raise AssertionError("radius inequality fails")
    return 2 ** (m + 8)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class DustCertificate:
    params: CantorParams
    m: int
    k: int
    target: ComplexRational
    summands: tuple  # ((xword, yword), multiplicity)
    residual_bound: Fraction
    route: dict = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return sum(c for _, c in self.summands)

    def power_sum(self) -> ComplexRational:
        total = ComplexRational()
        for (xw, yw), c in self.summands:
            z = ComplexRational(eval_prefix(self.params, xw), eval_prefix(self.params, yw))
            total = total + (z ** self.m) * c
        return total

    def replay(self) -> tuple:
        if self.size > self.k:
            return False, None
        err2 = (self.power_sum() - self.target).norm2()
        return err2 <= self.residual_bound ** 2, err2


def symmetry_map(cert: DustCertificate) -> DustCertificate:
    """z = x + iy -> y + ix on every summand; the sum becomes i^m conj(sum)."""
    summands = tuple(((yw, xw), c) for (xw, yw), c in cert.summands)
    target = i_pow(cert.m) * cert.target.conj()
    return DustCertificate(cert.params, cert.m, cert.k, target, summands, cert.residual_bound,
                           dict(cert.route, mirrored=not cert.route.get("mirrored", False)))


# ---------------------------------------------------------------------------
# the driver


class OutsideGuaranteedRegion(ValueError):
    pass


def _norm_upper(v: ComplexRational) -> Fraction:
    return abs(v.re) + abs(v.im)


def _segments(params, m, scan):
    for n in range(scan + 1):
        yield n, rotation_vector(params, n, m).value


def _best(cands, functional):
    """Candidate with functional(v) > 0 maximizing functional^2 / |v|^2 (ties: first)."""
    best, best_score = None, None
    for key, v in cands:
        f = functional(v)
        if f <= 0:
            continue
        score = f * f / v.norm2()
        if best_score is None or score > best_score:
            best, best_score = (key, v), score
    return best


class _Builder:
    def __init__(self, params, m, K, digits):
        self.params, self.m, self.K, self.digits = params, m, K, digits
        self.problem = PowerSumProblem(params, K, m)
        self.summands = []
        self.residual = Fraction(0)
        self.used = 0
        self.log = []

    def _real(self, c: Fraction):
        if not 0 <= c <= self.K:
            raise SolverError(f"real coefficient {c} outside [0, {self.K}]")
        return decompose(self.problem, c, self.digits)

    def group(self, kind: str, c: Fraction, n: int = 0):
        """Add one group of K summands whose m-th powers sum to c times its direction."""
        self.used += self.K
        if c == 0:
            self.summands.append(((ZERO, ZERO), self.K))
            return
        cert = self._real(c)
        scale = Fraction(1)
        for w, cnt in cert.entries:
            if kind == "real":
                pair = (w, ZERO)
            elif kind == "axis":
                pair = (ZERO, w)
            elif kind == "segment" and n >= 0:
                pair = (w, w.prepend_zeros(n))
            elif kind == "segment":
                pair = (w.prepend_zeros(-n), w)
            else:
                raise ValueError(kind)
            self.summands.append((pair, cnt))
        if kind == "segment":
            scale = _norm_upper(rotation_vector(self.params, n, self.m).value)
        self.residual += scale * cert.residual_bound
        self.log.append((kind, n, c))

    def pair(self, c: Fraction, n: int):
        self.group("segment", c, n)
        self.group("segment", c, -n)


def _pair_direction(params, m, functional, need: Fraction, K: int, scan: int):
    """Segment index n and coefficient c with c * functional(V_n + V_-n) = need."""
    seg = _best(((n, v + i_pow(m) * v.conj()) for n, v in _segments(params, m, scan)),
                functional)
    if seg is None:
        raise SolverError(f"no segment pair points the right way for m={m}")
    n, w = seg
    c = need / functional(w)
    if c > K:
        raise SolverError(f"pair coefficient {c} exceeds the group size {K}")
    return n, c


def guaranteed_radius(m: int, k: int) -> Fraction:
    """Half-width rho of the square rho*S the construction is claimed on (k/4 >= 2^m)."""
    return Fraction(k // 4) / 100 * Fraction(2, 3) ** m


def decompose_complex(params: CantorParams, m: int, target, digits: int,
                      k: Optional[int] = None) -> DustCertificate:
    if params.r != Fraction(1, 3):
        raise ValueError("the dust constructions are for the ternary set")
    if m < 3:
        raise ValueError("m must be at least 3")
    k = disk_cover_budget(m) if k is None else k
    K = k // 4
    if K < 2 ** m:
        raise ValueError("need k >= 4 * 2^m")
    # every group needs [0, K] = f_{K,m}(C^K) with a certified construction;
    # for m = 3 the smallest such K is 9, not 2^3
    build_plan(params, K, m)
    t = target if isinstance(target, ComplexRational) else ComplexRational.parse(str(target))
    rho = guaranteed_radius(m, k)
    in_disk = k == disk_cover_budget(m) and t.norm2() <= 1
    if not (in_disk or (abs(t.re) <= rho and abs(t.im) <= rho)):
        raise OutsideGuaranteedRegion(f"{t} outside the guaranteed region for k={k}")
    return _solve(params, m, t, digits, K, k)


def _solve(params, m, t, digits, K, k) -> DustCertificate:
    scan = 4 * m
    b = _Builder(params, m, K, digits)
    x, y = t.re, t.im
    res = m % 4
    route = {"residue": res}
    im_f = lambda v: v.im

    def upward_segment(amount):
        """A single segment group with positive imaginary part carrying ``amount``."""
        best = _best(_segments(params, m, scan), im_f)
        if best is None:
            raise SolverError("no segment points upward")
        n, v = best
        c = amount / v.im
        b.group("segment", c, n)
        route["up"] = n
        return v * c

    if res == 0:
        if y < 0:
            # i^m = 1 here, so mirroring a certificate for conj(t) gives t
            return symmetry_map(_solve(params, m, t.conj(), digits, K, k))
        used = upward_segment(y) if y > 0 else ComplexRational()
        if y == 0:
            b.group("segment", Fraction(0))
        xr = x - used.re
        if xr >= 0:
            b.group("real", xr)
            b.group("segment", Fraction(0))
            b.group("segment", Fraction(0))
        else:
            # a pair V_n + V_-n = 2 Re V_n points left
            n, c = _pair_direction(params, m, lambda w: -w.re, -xr, K, scan)
            b.pair(c, n)
            b.group("real", Fraction(0))
            route["pair"] = n
    elif res == 2:
        if y >= 0:
            used = upward_segment(y) if y > 0 else ComplexRational()
            if y == 0:
                b.group("segment", Fraction(0))
            xr = x - used.re
            b.group("segment", Fraction(0))
            b.group("segment", Fraction(0))
        else:
            # a pair V_n + V_-n = 2i Im V_n points down
            n, c = _pair_direction(params, m, lambda w: -w.im, -y, K, scan)
            b.pair(c, n)
            b.group("segment", Fraction(0))
            xr = x
            route["pair"] = n
        # i^m = -1: the axis group contributes negative reals
        if xr >= 0:
            b.group("real", xr)
        else:
            b.group("axis", -xr)
    else:
        # odd m: a pair adds along -(1+i) when m = 1 mod 4 and along (-1+i) when m = 3 mod 4
        if res == 1:
            need = max(Fraction(0), -x, -y)
            func = lambda w: -w.re
        else:
            need = max(Fraction(0), -x, y)
            func = lambda w: w.im
        if need > 0:
            n, c = _pair_direction(params, m, func, need, K, scan)
            b.pair(c, n)
            route["pair"] = n
        else:
            b.group("segment", Fraction(0))
            b.group("segment", Fraction(0))
        b.group("real", x + need)
        b.group("axis", y + need if res == 1 else need - y)
    if b.used != 4 * K:
        raise SolverError(f"assembled {b.used} summands, expected {4 * K}")
    route["groups"] = [(kind, n, str(c)) for kind, n, c in b.log]
    summands = _compact(b.summands)
    cert = DustCertificate(params, m, k, t, summands, b.residual, route)
    return cert


def _compact(items):
    merged, order = {}, []
    for key, c in items:
        if c <= 0:
            continue
        if key not in merged:
            merged[key] = 0
            order.append(key)
        merged[key] += c
    return tuple((key, merged[key]) for key in order)


def disk_grid(count: int, radius_den: int = 8) -> list:
    """``count`` rational points of the closed unit disk on a fixed grid, spread by stride."""
    pts = []
    for a in range(-radius_den, radius_den + 1):
        for c in range(-radius_den, radius_den + 1):
            z = ComplexRational(Fraction(a, radius_den), Fraction(c, radius_den))
            if z.norm2() <= 1:
                pts.append(z)
    stride = max(1, len(pts) // count)
    return pts[::stride][:count]
