"""Truncated p-adic integers and Waring-type decompositions on the p-adic
Cantor set C_gamma = { sum a_n gamma^n : a_n in {0, gamma - 1} }.

Everything is integer arithmetic modulo p^N. An element of C_gamma is stored
as its selection word w, meaning x = sum over w_n = 1 of (gamma - 1) gamma^n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

DEFAULT_PRECISION = 32


class PadicError(ValueError):
    pass


class ResidueBudgetExceeded(RuntimeError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def valuation(x: int, p: int, cap: int) -> int:
    """v_p(x) for x taken mod p^cap; returns cap when x vanishes there."""
    x %= p ** cap
    if x == 0:
        return cap
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _reduce(x, p: int, N: int) -> int:
    """An int, a Fraction with p-free denominator, or a digit vector, reduced mod p^N."""
    mod = p ** N
    if isinstance(x, PadicInt):
        if x.p != p:
            raise PadicError("prime mismatch")
        if x.N < N:
            raise PadicError(f"value known mod {p}^{x.N} only, need {p}^{N}")
        return x.value % mod
    if isinstance(x, (list, tuple)):
        if len(x) < N:
            raise PadicError(f"digit vector of length {len(x)} is shorter than {N}")
        if any(not 0 <= d < p for d in x):
            raise PadicError("digits must lie in 0..p-1")
        return sum(d * p ** i for i, d in enumerate(x[:N]))
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise PadicError(f"{x} is not a {p}-adic integer")
        return x.numerator * pow(x.denominator, -1, mod) % mod
    if isinstance(x, int):
        return x % mod
    raise TypeError(f"cannot read {type(x).__name__} as a p-adic integer")


@dataclass(frozen=True)
class PadicInt:
    p: int
    N: int
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % (self.p ** self.N))

    @classmethod
    def of(cls, x, p: int, N: int) -> "PadicInt":
        return cls(p, N, _reduce(x, p, N))

    @property
    def modulus(self) -> int:
        return self.p ** self.N

    @property
    def digits(self) -> tuple:
        out, v = [], self.value
        for _ in range(self.N):
            v, d = divmod(v, self.p)
            out.append(d)
        return tuple(out)

    @property
    def valuation(self) -> Optional[int]:
        """Index of the first nonzero digit; None when every digit is zero."""
        v = valuation(self.value, self.p, self.N)
        return None if v == self.N else v

    def _other(self, o) -> int:
        if isinstance(o, PadicInt):
            if o.p != self.p:
                raise PadicError("prime mismatch")
        return _reduce(o, self.p, self.N) if not isinstance(o, PadicInt) else o.value

    def _n(self, o) -> int:
        return min(self.N, o.N) if isinstance(o, PadicInt) else self.N

    def __add__(self, o):
        return PadicInt(self.p, self._n(o), self.value + self._other(o))

    __radd__ = __add__

    def __sub__(self, o):
        return PadicInt(self.p, self._n(o), self.value - self._other(o))

    def __rsub__(self, o):
        return PadicInt(self.p, self._n(o), self._other(o) - self.value)

    def __neg__(self):
        return PadicInt(self.p, self.N, -self.value)

    def __mul__(self, o):
        return PadicInt(self.p, self._n(o), self.value * self._other(o))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return PadicInt(self.p, self.N, pow(self.value, e, self.modulus))

    def inverse(self) -> "PadicInt":
        if self.value % self.p == 0:
            raise PadicError("not a unit")
        return PadicInt(self.p, self.N, pow(self.value, -1, self.modulus))

    def __eq__(self, o):
        if isinstance(o, PadicInt):
            n = min(self.N, o.N)
            return self.p == o.p and (self.value - o.value) % self.p ** n == 0
        try:
            return (self.value - _reduce(o, self.p, self.N)) % self.modulus == 0
        except (TypeError, PadicError):
            return NotImplemented

    def __hash__(self):
        return hash((self.p, self.N, self.value))

    def __str__(self):
        return " ".join(map(str, self.digits)) + f" (base {self.p})"


Number = Union[int, Fraction, Sequence[int], PadicInt]


@dataclass(frozen=True)
class PadicCantorParams:
    p: int
    gamma: object  # int, Fraction or digit vector, as given
    u: int
    precision: int

    @classmethod
    def make(cls, p: int, gamma: Number, precision: int = DEFAULT_PRECISION) -> "PadicCantorParams":
        if not _is_prime(p):
            raise PadicError(f"{p} is not prime")
        if isinstance(gamma, (list, tuple)):
            gamma = tuple(int(d) for d in gamma)
            precision = min(precision, len(gamma))
        elif isinstance(gamma, PadicInt):
            precision = min(precision, gamma.N)
            gamma = gamma.digits
        elif not isinstance(gamma, (int, Fraction)):
            raise TypeError("gamma must be an int, a Fraction or a digit vector")
        g = _reduce(gamma, p, precision)
        u = valuation(g, p, precision)
        if u == 0:
            raise PadicError("gamma must be divisible by p")
        if u >= precision:
            raise PadicError("gamma vanishes at this precision")
        if p ** u <= 2:
            raise PadicError("need 2|gamma|_p < 1, i.e. p^u > 2")
        return cls(p, gamma, u, precision)

    def gamma_mod(self, N: int) -> int:
        return _reduce(self.gamma, self.p, N)

    def gamma1_mod(self, N: int) -> int:
        """The unit part gamma / p^u, known mod p^(precision - u)."""
        if N + self.u > self._gamma_cap():
            raise PadicError("gamma is not known to enough digits")
        return self.gamma_mod(N + self.u) // self.p ** self.u % self.p ** N

    def _gamma_cap(self) -> int:
        return len(self.gamma) if isinstance(self.gamma, tuple) else 10 ** 9

    @property
    def G(self) -> int:
        """The linear Waring number p^u - 1."""
        return self.p ** self.u - 1

    def power_bound(self, m: int) -> int:
        v = valuation(m, self.p, m.bit_length() + 1)
        if self.p == 2:
            return 2 ** (2 * self.u + v) - 1 + 2 ** self.u - 1
        return self.p ** (self.u + v) - 1 + self.p ** self.u - 1


def word_value(params: PadicCantorParams, word: Sequence[int], N: int) -> int:
    """sum_{w_n = 1} (gamma - 1) gamma^n mod p^N."""
    mod = params.p ** N
    g = params.gamma_mod(N)
    out, gp = 0, (g - 1) % mod
    for bit in word:
        if bit:
            out += gp
        gp = gp * g % mod
    return out % mod


def base_gamma_digits(x: Number, params: PadicCantorParams, N: Optional[int] = None) -> tuple:
    """Digits b_n in 0..p^u - 1 with sum b_n gamma^n = x mod p^(u * len)."""
    p, u = params.p, params.u
    N = params.precision if N is None else N
    pu = p ** u
    prec = N
    cur = _reduce(x, p, N)
    out = []
    while prec >= u:
        b = cur % pu
        out.append(b)
        prec -= u
        if prec == 0:
            break
        mod = p ** prec
        g1 = params.gamma1_mod(prec)
        cur = (cur - b) // pu * pow(g1, -1, mod) % mod
    return tuple(out)


@dataclass(frozen=True)
class PadicCertificate:
    params: PadicCantorParams
    target: PadicInt
    m: int
    summands: tuple  # selection words, one per summand
    congruence_depth: int
    y_count: int = 0

    @property
    def size(self) -> int:
        return len(self.summands)

    def values(self) -> list:
        return [word_value(self.params, w, self.congruence_depth) for w in self.summands]

    def replay(self) -> bool:
        mod = self.params.p ** self.congruence_depth
        total = sum(pow(x, self.m, mod) for x in self.values()) % mod
        return total == self.target.value % mod


def decompose_linear(target: Number, params: PadicCantorParams,
                     N: Optional[int] = None) -> PadicCertificate:
    """target as a sum of exactly p^u - 1 elements of C_gamma."""
    p, u = params.p, params.u
    N = (target.N if isinstance(target, PadicInt) else params.precision) if N is None else N
    N = min(N, params.precision)
    t = PadicInt.of(target, p, N)
    mod = p ** N
    x = t.value * pow(params.gamma_mod(N) - 1, -1, mod) % mod
    b = base_gamma_digits(x, params, N)
    layers = tuple(tuple(1 if bn >= i else 0 for bn in b) for i in range(1, params.G + 1))
    cert = PadicCertificate(params, t, 1, layers, u * len(b))
    if not cert.replay():
        raise AssertionError("linear decomposition failed its replay")
    return cert


def linear_minimality_witness(params: PadicCantorParams) -> bool:
    """(p^u - 1)(gamma - 1) is not a sum of p^u - 2 elements of C_gamma, checked mod p^u."""
    p, u = params.p, params.u
    mod = p ** u
    g1 = (params.gamma_mod(u) - 1) % mod
    # C_gamma mod p^u is {0, gamma - 1}
    sums = {0}
    for _ in range(params.G - 1):
        sums = {(s + c) % mod for s in sums for c in (0, g1)}
    return (params.G * g1) % mod not in sums


def _binom_valuation_ok(p, m, u, v, N):
    """v_p(C(m, j)) + u j N >= v + u(N + 1) for 2 <= j <= m."""
    for j in range(2, m + 1):
        vb = valuation(math.comb(m, j), p, 4 * m.bit_length() + 64)
        if vb + u * j * N < v + u * (N + 1):
            return False
    return True


def decompose_power(target: Number, m: int, params: PadicCantorParams,
                    N: Optional[int] = None) -> PadicCertificate:
    """target as a sum of m-th powers of C_gamma elements, congruent mod p^N.

    The y summands are fixed once from the base case; the x summands gain one
    (gamma - 1) gamma^n digit per induction step.
    """
    if m < 2:
        raise PadicError("m must be at least 2 (use decompose_linear for m = 1)")
    p, u = params.p, params.u
    N = (target.N if isinstance(target, PadicInt) else params.precision) if N is None else N
    N = min(N, params.precision)
    t = PadicInt.of(target, p, N)
    v = valuation(m, p, m.bit_length() + 1)
    m1 = m // p ** v
    base_n = 2 if p == 2 else 1
    base_depth = u * base_n + v
    if N < base_depth:
        raise PadicError(f"truncation {N} is shorter than the base case depth {base_depth}")
    mod = p ** N
    g = params.gamma_mod(N)
    gm = pow(g - 1, m, mod)
    pu = p ** u

    n_y = p ** base_depth - 1
    # base case: x summands are gamma - 1, y summands are k0 copies of gamma - 1
    mb = p ** base_depth
    k0 = (t.value - (pu - 1) * gm) * pow(gm, -1, mb) % mb
    ys = [(1,)] * k0 + [()] * (n_y - k0)
    xs = [[1] + [0] * (base_n - 1) for _ in range(pu - 1)]
    xvals = [(g - 1) % mod] * (pu - 1)
    rem = (t.value - k0 * gm) % mod      # x - sum y^m, fixed from now on

    step = base_n
    while u * step + v < N:
        depth, nxt = u * step + v, min(N, u * (step + 1) + v)
        resid = (rem - sum(pow(z, m, mod) for z in xvals)) % mod
        if resid % p ** depth:
            raise AssertionError(f"congruence lost at step {step}")
        if not _binom_valuation_ok(p, m, u, v, step):
            raise AssertionError(f"valuation inequality fails at step {step}")
        unit = m1 * gm * pow(params.gamma1_mod(u), step, pu) % pu
        k1 = (resid // p ** depth) * pow(unit, -1, pu) % pu
        inc = (g - 1) * pow(g, step, mod) % mod
        for i in range(pu - 1):
            xs[i].append(1 if i < k1 else 0)
            if i < k1:
                xvals[i] = (xvals[i] + inc) % mod
        step += 1
        check = (rem - sum(pow(z, m, mod) for z in xvals)) % p ** nxt
        if check:
            raise AssertionError(f"step {step - 1} did not lift the congruence")

    depth = min(N, u * step + v)
    summands = tuple(ys) + tuple(tuple(w) for w in xs)
    cert = PadicCertificate(params, t, m, summands, depth, y_count=n_y)
    if cert.size != params.power_bound(m):
        raise AssertionError("summand count differs from the bound")
    if not cert.replay():
        raise AssertionError("power decomposition failed its replay")
    return cert


def residue_image(params: PadicCantorParams, j: int, budget: int = 10 ** 6) -> set:
    """C_gamma mod p^j, from all selection words of length ceil(j/u)."""
    L = -(-j // params.u)
    if 2 ** L > budget:
        raise ResidueBudgetExceeded(f"2^{L} words exceed budget {budget}")
    mod = params.p ** j
    g = params.gamma_mod(j)
    pieces = [(g - 1) * pow(g, n, mod) % mod for n in range(L)]
    out = {0}
    for piece in pieces:
        out |= {(s + piece) % mod for s in out}
    return out


def residue_lower_bound(params: PadicCantorParams, m: int, j: int, budget: int = 10 ** 6) -> int:
    """Least t whose t-fold sumset of m-th powers of C_gamma covers Z/p^j.

    Any k that works over Z_p works mod p^j, so this t is a lower bound for
    the Waring number of C_gamma.
    """
    mod = params.p ** j
    if mod > budget:
        raise ResidueBudgetExceeded(f"p^j = {mod} exceeds budget {budget}")
    powers = {pow(x, m, mod) for x in residue_image(params, j, budget)}
    reach, t = {0}, 0
    while len(reach) < mod:
        grown = {(s + q) % mod for s in reach for q in powers}
        t += 1
        if grown == reach:
            raise PadicError(f"m-th powers of C_gamma never cover Z/{mod}")
        reach = grown
    return t
