"""The middle-1/alpha Cantor set as a symbolic object.

A point is addressed by a binary word: bit 1 at position i (1-based) adds
(1 - r) r**(i-1). Words may end in a repeating block, which is how points
such as 1/4 in the ternary set, or the right endpoint of a level interval,
are written exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .numerics import Q

DEFAULT_DEPTH_CAP = 20


class DepthCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class CantorParams:
    r: Fraction

    def __post_init__(self):
        r = Q(self.r)
        object.__setattr__(self, "r", r)
        if not 0 < r < Fraction(1, 2):
            raise ValueError(f"contraction ratio must lie in (0, 1/2), got {r}")

    @classmethod
    def from_alpha(cls, alpha) -> "CantorParams":
        alpha = Q(alpha)
        if alpha <= 1:
            raise ValueError("alpha must exceed 1")
        return cls((1 - 1 / alpha) / 2)

    @property
    def alpha(self) -> Fraction:
        return 1 / (1 - 2 * self.r)

    @property
    def lam(self) -> Fraction:
        return 1 / self.r - 2

    def __str__(self):
        return f"r={self.r}"


TERNARY = CantorParams(Fraction(1, 3))


@dataclass(frozen=True)
class SymbolWord:
    """A finite address, optionally followed by a block repeated forever."""

    bits: tuple = ()
    period: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        object.__setattr__(self, "period", tuple(int(b) for b in self.period))
        for b in self.bits + self.period:
            if b not in (0, 1):
                raise ValueError("address bits must be 0 or 1")
        if self.period and not any(self.period):
            # an all-zero tail is the implicit default
            object.__setattr__(self, "period", ())

    @classmethod
    def parse(cls, text: str) -> "SymbolWord":
        """Parse "0110" or "01(1)" (bits in parentheses repeat)."""
        text = text.strip()
        if "(" in text:
            head, _, rest = text.partition("(")
            if not rest.endswith(")"):
                raise ValueError(f"bad periodic word {text!r}")
            return cls(tuple(head), tuple(rest[:-1]))
        return cls(tuple(text))

    def __str__(self):
        s = "".join(map(str, self.bits))
        if self.period:
            s += "(" + "".join(map(str, self.period)) + ")"
        return s

    def __len__(self):
        return len(self.bits)

    @property
    def exact(self) -> bool:
        """True when the word names one point rather than a level interval."""
        return bool(self.period)

    def extend(self, bit: int) -> "SymbolWord":
        if self.period:
            raise ValueError("cannot extend a word with an infinite tail")
        return SymbolWord(self.bits + (bit,))

    def prepend_zeros(self, l: int) -> "SymbolWord":
        return SymbolWord((0,) * l + self.bits, self.period)

    def flip_first(self) -> "SymbolWord":
        if not self.bits or self.bits[0] != 1:
            raise ValueError("first bit is not 1")
        return SymbolWord((0,) + self.bits[1:], self.period)

    def with_tail_ones(self) -> "SymbolWord":
        """The right endpoint of the level interval named by this word."""
        return SymbolWord(self.bits, (1,))


def eval_prefix(params: CantorParams, word: SymbolWord) -> Fraction:
    """Exact value of the point (finite word: zero tail) named by ``word``."""
    p, q = params.r.numerator, params.r.denominator
    # u = (q - p) * sum b_i p^(i-1) q^(n-i) / q^n, accumulated in integers
    num, pw = 0, 1
    for b in word.bits:
        num = num * q + (pw if b else 0)
        pw *= p
    n = len(word.bits)
    total = Fraction((q - p) * num, q ** n) if n else Fraction(0)
    if word.period:
        r = params.r
        lp = len(word.period)
        bnum, bpw = 0, 1
        for b in word.period:
            bnum = bnum * q + (bpw if b else 0)
            bpw *= p
        block = Fraction((q - p) * bnum, q ** lp)
        total += r ** n * block / (1 - r ** lp)
    return total


@dataclass(frozen=True)
class LevelInterval:
    word: SymbolWord
    lo: Fraction
    hi: Fraction

    @classmethod
    def of(cls, params: CantorParams, word: SymbolWord) -> "LevelInterval":
        if word.period:
            raise ValueError("level intervals are named by finite words")
        u = eval_prefix(params, word)
        return cls(word, u, u + params.r ** len(word))

    @property
    def depth(self) -> int:
        return len(self.word)

    def children(self, params: CantorParams):
        r = params.r
        w = self.hi - self.lo
        c0 = LevelInterval(self.word.extend(0), self.lo, self.lo + w * r)
        c1 = LevelInterval(self.word.extend(1), self.lo + (1 - r) * w, self.hi)
        return c0, c1

    def __contains__(self, x):
        return self.lo <= x <= self.hi


def _check_cap(n: int, cap: int):
    if n < 0:
        raise ValueError("depth must be nonnegative")
    if n > cap:
        raise DepthCapExceeded(f"depth {n} exceeds cap {cap}")


def words_of_length(n: int) -> Iterator[SymbolWord]:
    for i in range(1 << n):
        yield SymbolWord(tuple((i >> (n - 1 - j)) & 1 for j in range(n)))


def left_endpoints(params: CantorParams, n: int, cap: int = DEFAULT_DEPTH_CAP) -> list:
    _check_cap(n, cap)
    pts = [Fraction(0)]
    for _ in range(n):
        # L_{j+1} = r L_j  union  (1 - r) + r L_j
        pts = [params.r * u for u in pts] + [1 - params.r + params.r * u for u in pts]
    return pts


def truncation_cover(params: CantorParams, n: int, cap: int = DEFAULT_DEPTH_CAP) -> list:
    _check_cap(n, cap)
    level = [LevelInterval(SymbolWord(), Fraction(0), Fraction(1))]
    for _ in range(n):
        nxt = []
        for iv in level:
            nxt.extend(iv.children(params))
        level = nxt
    return level


def point_in_cantor(params: CantorParams, x: Fraction, depth: int) -> bool:
    """Necessary test: x lies in F_depth (the level-depth approximation)."""
    x = Q(x)
    if not 0 <= x <= 1:
        return False
    lo, w = Fraction(0), Fraction(1)
    r = params.r
    for _ in range(depth):
        if x <= lo + w * r:
            w *= r
        elif x >= lo + (1 - r) * w:
            lo += (1 - r) * w
            w *= r
        else:
            return False
    return True
