"""Exact rationals, rational interval arithmetic and certified enclosures.

Every decision in the package goes through :class:`fractions.Fraction`; the
enclosures below only ever produce rational endpoints, so no floating point
enters a decision path.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

Rational = Fraction
Number = Union[int, Fraction]

DEFAULT_COMPARE_CAP = 64


class UndecidableComparison(ArithmeticError):
    """Raised when two enclosures still overlap after the refinement cap."""


def Q(x: Number | str) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction (never floats)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"refusing to convert {type(x).__name__} to an exact rational")


def floor_q(x: Fraction) -> int:
    return x.numerator // x.denominator


def ceil_q(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Q(self.lo))
        object.__setattr__(self, "hi", Q(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Number) -> "RationalInterval":
        x = Q(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, RationalInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    __contains__ = contains

    def intersect(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def overlaps(self, other: "RationalInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    @staticmethod
    def _lift(x) -> "RationalInterval":
        if isinstance(x, RationalInterval):
            return x
        return RationalInterval.point(x)

    def __add__(self, other):
        o = self._lift(other)
        return RationalInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._lift(other)
        return RationalInterval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RationalInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError(f"interval {self} contains zero")
        return RationalInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * self._lift(other).reciprocal()

    def __rtruediv__(self, other):
        return self._lift(other) * self.reciprocal()

    def __pow__(self, e: int):
        if not isinstance(e, int) or isinstance(e, bool):
            raise TypeError("only integer powers are exact")
        if e < 0:
            return (self ** (-e)).reciprocal()
        if e == 0:
            return RationalInterval.point(1)
        a, b = self.lo ** e, self.hi ** e
        if e % 2 == 1 or self.lo >= 0:
            return RationalInterval(min(a, b), max(a, b))
        if self.hi <= 0:
            return RationalInterval(b, a)
        return RationalInterval(Fraction(0), max(a, b))

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


# ---------------------------------------------------------------------------
# elementary enclosures


def _check_width(w) -> Fraction:
    w = Q(w)
    if w <= 0:
        raise ValueError("target_width must be positive")
    return w


def certified_exp(x: Number, target_width: Number) -> RationalInterval:
    """Enclose e**x for rational x >= 0 to the requested width.

    Taylor partial sum plus a Lagrange remainder, with e**x bounded by
    3**ceil(x) inside the remainder term.
    """
    x = Q(x)
    w = _check_width(target_width)
    if x < 0:
        raise ValueError("certified_exp needs x >= 0")
    if x == 0:
        return RationalInterval.point(1)
    growth = Fraction(3) ** ceil_q(x)
    partial = Fraction(0)
    term = Fraction(1)
    j = 0
    while True:
        partial += term
        j += 1
        term = term * x / j
        # remainder after terms 0..j-1 is at most e^x x^j / j!
        bound = growth * term
        if bound <= w and j > x:
            return RationalInterval(partial, partial + bound)


def certified_root(y: Number, m: int, target_width: Number) -> RationalInterval:
    """Enclose y**(1/m) by bisection on z**m = y with exact comparisons."""
    y = Q(y)
    w = _check_width(target_width)
    if y <= 0:
        raise ValueError("certified_root needs y > 0")
    if m < 1:
        raise ValueError("m must be a positive integer")
    if m == 1:
        return RationalInterval.point(y)
    if y == 1:
        return RationalInterval.point(1)
    lo, hi = (y, Fraction(1)) if y < 1 else (Fraction(1), y)
    # integer-guided start keeps the bisection short
    guess = _root_guess(y, m)
    if guess is not None:
        g_lo, g_hi = guess
        if g_lo ** m <= y <= g_hi ** m:
            lo, hi = g_lo, g_hi
    while hi - lo > w:
        mid = (lo + hi) / 2
        v = mid ** m
        if v == y:
            return RationalInterval.point(mid)
        if v < y:
            lo = mid
        else:
            hi = mid
    return RationalInterval(lo, hi)


def _root_guess(y: Fraction, m: int):
    # floor((y * 2**(m*b))**(1/m)) via integer root gives a 2**-b bracket
    b = 64
    scaled = y * (1 << (m * b))
    n = floor_q(scaled)
    r = _iroot(n, m)
    return Fraction(r, 1 << b), Fraction(r + 1, 1 << b)


def _iroot(n: int, m: int) -> int:
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + m - 1) // m)
    while True:
        y = ((m - 1) * x + n // x ** (m - 1)) // m
        if y >= x:
            break
        x = y
    while x ** m > n:
        x -= 1
    while (x + 1) ** m <= n:
        x += 1
    return x


@lru_cache(maxsize=None)
def _atanh_inv(n: int, bits: int) -> RationalInterval:
    """Enclose atanh(1/n) for integer n >= 2 within 2**-bits."""
    z = Fraction(1, n)
    z2 = z * z
    total = Fraction(0)
    power = z
    j = 0
    eps = Fraction(1, 1 << bits)
    while True:
        total += power / (2 * j + 1)
        j += 1
        power *= z2
        tail = power / ((2 * j + 1) * (1 - z2))
        if tail <= eps:
            return RationalInterval(total, total + tail)


def _atanh_enclosure(z: Fraction, eps: Fraction) -> RationalInterval:
    """atanh(z) for 0 <= z < 1, alternating-free positive series with geometric tail."""
    if z == 0:
        return RationalInterval.point(0)
    z2 = z * z
    total = Fraction(0)
    power = z
    j = 0
    while True:
        total += power / (2 * j + 1)
        j += 1
        power *= z2
        tail = power / ((2 * j + 1) * (1 - z2))
        if tail <= eps:
            return RationalInterval(total, total + tail)


def ln2_enclosure(bits: int) -> RationalInterval:
    # ln 2 = 2 atanh(1/3)
    return _atanh_inv(3, bits + 2) * 2


def certified_log(x: Number, target_width: Number) -> RationalInterval:
    """Enclose ln x for rational x > 0."""
    x = Q(x)
    w = _check_width(target_width)
    if x <= 0:
        raise ValueError("log needs x > 0")
    if x == 1:
        return RationalInterval.point(0)
    # x = 2**e * y with y in [3/4, 3/2)
    e = x.numerator.bit_length() - x.denominator.bit_length()
    y = x / Fraction(2) ** e
    while y >= Fraction(3, 2):
        y /= 2
        e += 1
    while y < Fraction(3, 4):
        y *= 2
        e -= 1
    bits = max(8, (1 / w).numerator.bit_length() - (1 / w).denominator.bit_length() + 4 + abs(e).bit_length())
    eps = Fraction(1, 1 << bits)
    z = (y - 1) / (y + 1)
    inner = _atanh_enclosure(abs(z), eps) * 2
    if z < 0:
        inner = -inner
    result = inner + ln2_enclosure(bits) * e if e else inner
    while result.width > w:
        bits *= 2
        eps = Fraction(1, 1 << bits)
        inner = _atanh_enclosure(abs(z), eps) * 2
        if z < 0:
            inner = -inner
        result = inner + ln2_enclosure(bits) * e if e else inner
    return result


def _arctan_small(x: Fraction, eps: Fraction) -> RationalInterval:
    """Alternating series for |x| <= 1/2; the tail is bounded by the next term."""
    if x == 0:
        return RationalInterval.point(0)
    sign = 1 if x > 0 else -1
    x = abs(x)
    x2 = x * x
    total = Fraction(0)
    power = x
    j = 0
    while True:
        total += (-1) ** j * power / (2 * j + 1)
        j += 1
        power *= x2
        nxt = power / (2 * j + 1)
        if nxt <= eps:
            # alternating with decreasing terms: the sum lies between S_j and S_j +/- next
            if j % 2 == 1:
                enc = RationalInterval(total - nxt, total)
            else:
                enc = RationalInterval(total, total + nxt)
            return enc if sign > 0 else -enc


@lru_cache(maxsize=None)
def pi_enclosure(bits: int) -> RationalInterval:
    """Machin: pi = 16 arctan(1/5) - 4 arctan(1/239)."""
    eps = Fraction(1, 1 << (bits + 6))
    return _arctan_small(Fraction(1, 5), eps) * 16 - _arctan_small(Fraction(1, 239), eps) * 4


def certified_arctan(x: Number, target_width: Number) -> RationalInterval:
    """Enclose arctan x for any rational x."""
    x = Q(x)
    w = _check_width(target_width)
    if x < 0:
        return -certified_arctan(-x, w)
    bits = max(8, (1 / w).numerator.bit_length() - (1 / w).denominator.bit_length() + 6)
    while True:
        enc = _arctan_nonneg(x, bits)
        if enc.width <= w:
            return enc
        bits *= 2


def _arctan_nonneg(x: Fraction, bits: int) -> RationalInterval:
    eps = Fraction(1, 1 << bits)
    if x > 1:
        # arctan x = pi/2 - arctan(1/x)
        return pi_enclosure(bits) / 2 - _arctan_nonneg(1 / x, bits)
    if x == 1:
        return pi_enclosure(bits) / 4
    if x > Fraction(1, 2):
        # arctan x = arctan(1/2) + arctan((x - 1/2) / (1 + x/2)), inner argument <= 1/3
        half = Fraction(1, 2)
        inner = (x - half) / (1 + x * half)
        return _arctan_small(half, eps) + _arctan_small(inner, eps)
    return _arctan_small(x, eps)


# ---------------------------------------------------------------------------
# certified scalars


def _bits_width(bits: int) -> Fraction:
    return Fraction(1, 1 << bits)


class CertifiedScalar:
    """A real number carried as a family of nested rational enclosures.

    ``_at(bits)`` must return an enclosure whose width shrinks as ``bits``
    grows; :meth:`refine` intersects successive answers, so the enclosures
    seen by callers are nested even if ``_at`` alone is not.
    """

    __slots__ = ("_at", "exact", "_current", "_bits", "label")

    def __init__(self, at: Callable[[int], RationalInterval], exact: Fraction | None = None,
                 label: str = "?"):
        self._at = at
        self.exact = exact
        self.label = label
        self._bits = 8
        self._current = at(self._bits)

    @classmethod
    def const(cls, q: Number) -> "CertifiedScalar":
        q = Q(q)
        point = RationalInterval.point(q)
        return cls(lambda bits: point, exact=q, label=str(q))

    @property
    def enclosure(self) -> RationalInterval:
        return self._current

    def at(self, bits: int) -> RationalInterval:
        return self._at(bits)

    def refine(self, step: int = 8) -> RationalInterval:
        self._bits += step
        new = self._at(self._bits)
        self._current = new.intersect(self._current)
        return self._current

    @staticmethod
    def lift(x) -> "CertifiedScalar":
        if isinstance(x, CertifiedScalar):
            return x
        return CertifiedScalar.const(x)

    def _binary(self, other, op, sym):
        o = CertifiedScalar.lift(other)
        exact = None
        if self.exact is not None and o.exact is not None:
            exact = op(self.exact, o.exact)
        a, b = self, o
        return CertifiedScalar(lambda bits: op(a._at(bits + 2), b._at(bits + 2)), exact,
                               f"({a.label}{sym}{b.label})")

    def __add__(self, other):
        return self._binary(other, lambda p, q: p + q, "+")

    def __radd__(self, other):
        return CertifiedScalar.lift(other) + self

    def __sub__(self, other):
        return self._binary(other, lambda p, q: p - q, "-")

    def __rsub__(self, other):
        return CertifiedScalar.lift(other) - self

    def __mul__(self, other):
        return self._binary(other, lambda p, q: p * q, "*")

    def __rmul__(self, other):
        return CertifiedScalar.lift(other) * self

    def __truediv__(self, other):
        return self._binary(other, lambda p, q: p / q, "/")

    def __rtruediv__(self, other):
        return CertifiedScalar.lift(other) / self

    def __neg__(self):
        a = self
        ex = -a.exact if a.exact is not None else None
        return CertifiedScalar(lambda bits: -a._at(bits), ex, f"-{a.label}")

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise TypeError("integer powers only")
        a = self
        ex = a.exact ** e if a.exact is not None else None
        return CertifiedScalar(lambda bits: a._at(bits + 2 * max(1, abs(e)).bit_length()) ** e, ex,
                               f"{a.label}^{e}")

    def __repr__(self):
        return f"CertifiedScalar({self.label} in {self._current})"


def exp_scalar(x: Number) -> CertifiedScalar:
    x = Q(x)
    if x == 0:
        return CertifiedScalar.const(1)
    return CertifiedScalar(lambda bits: certified_exp(x, _bits_width(bits)), label=f"exp({x})")


def root_scalar(y: Number, m: int) -> CertifiedScalar:
    y = Q(y)
    enc = certified_root(y, m, Fraction(1, 1 << 16))
    ex = enc.lo if enc.width == 0 else None
    return CertifiedScalar(lambda bits: certified_root(y, m, _bits_width(bits)), ex,
                           label=f"{y}^(1/{m})")


def log_scalar(x: Number) -> CertifiedScalar:
    x = Q(x)
    if x == 1:
        return CertifiedScalar.const(0)
    return CertifiedScalar(lambda bits: certified_log(x, _bits_width(bits)), label=f"log({x})")


def arctan_scalar(x: Number) -> CertifiedScalar:
    x = Q(x)
    if x == 0:
        return CertifiedScalar.const(0)
    return CertifiedScalar(lambda bits: certified_arctan(x, _bits_width(bits)), label=f"atan({x})")


def pi_scalar() -> CertifiedScalar:
    return CertifiedScalar(lambda bits: pi_enclosure(bits), label="pi")


def certified_compare(lhs, rhs, cap: int = DEFAULT_COMPARE_CAP) -> str:
    """Return '<', '>' or '=' for two certified expressions.

    '=' only comes back when both sides are exact rationals. Otherwise the
    difference is refined until its enclosure excludes zero, at most ``cap``
    times.
    """
    a = CertifiedScalar.lift(lhs)
    b = CertifiedScalar.lift(rhs)
    if a.exact is not None and b.exact is not None:
        return "<" if a.exact < b.exact else ">" if a.exact > b.exact else "="
    diff = a - b
    enc = diff.enclosure
    for _ in range(cap + 1):
        if enc.lo > 0:
            return ">"
        if enc.hi < 0:
            return "<"
        enc = diff.refine()
    raise UndecidableComparison(f"cannot separate {a.label} and {b.label} after {cap} refinements: {enc}")


def floor_log_base_r(r: Number, x: Number) -> int:
    """floor(log_r x) for 0 < r < 1: the integer j with r**(j+1) < x <= r**j."""
    r, x = Q(r), Q(x)
    if not 0 < r < 1:
        raise ValueError("base r must lie in (0, 1)")
    if x <= 0:
        raise ValueError("x must be positive")
    if x <= 1:
        # x <= r**j holds for j = 0; climb while it still holds one step further
        j = 0
        p = Fraction(1)
        while x <= p * r:
            p *= r
            j += 1
        return j
    j = 0
    p = Fraction(1)
    while p < x:
        p /= r
        j -= 1
    return j


def ceil_enclosure(iv: RationalInterval) -> int:
    """Sound integer upper bound: ceil of the enclosure's upper end."""
    return ceil_q(iv.hi)


def to_display(x: Fraction, digits: int = 12) -> str:
    """Human-readable decimal rendering; never used for decisions."""
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = floor_q(x * 10 ** digits)
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def isqrt_ceil_q(x: Fraction) -> Fraction:
    """A rational upper bound for sqrt(x), within a relative 2**-40."""
    if x < 0:
        raise ValueError("negative")
    if x == 0:
        return Fraction(0)
    enc = certified_root(x, 2, x / (1 << 40) if x < 1 else Fraction(1, 1 << 40))
    return enc.hi


__all__ = [
    "Rational", "Q", "RationalInterval", "CertifiedScalar", "UndecidableComparison",
    "certified_exp", "certified_root", "certified_log", "certified_arctan", "pi_enclosure",
    "exp_scalar", "root_scalar", "log_scalar", "arctan_scalar", "pi_scalar",
    "certified_compare", "floor_log_base_r", "floor_q", "ceil_q", "ceil_enclosure",
    "to_display", "isqrt_ceil_q", "DEFAULT_COMPARE_CAP",
]
