"""Exact integer, rational and polynomial helpers.

Everything here is exact: Python ints for integers, ``fractions.Fraction``
for rationals.  No floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Rational = Fraction

QR_TABLE_LIMIT = 10_000


def isqrt(v: int) -> int:
    if v < 0:
        raise ValueError(f"isqrt of negative number {v}")
    return math.isqrt(v)


def is_perfect_square(v: int) -> tuple[bool, int | None]:
    """Return ``(True, root)`` when ``v`` is a square, else ``(False, None)``."""
    if v < 0:
        return False, None
    r = math.isqrt(v)
    if r * r == v:
        return True, r
    return False, None


def qadic_valuation(v: int, q: int) -> int:
    if v == 0:
        raise ValueError("valuation of 0 is infinite")
    if q < 2:
        raise ValueError("base must be >= 2")
    v = abs(v)
    e = 0
    while v % q == 0:
        v //= q
        e += 1
    return e


def binom_half(a_num: int, k: int) -> Fraction:
    """Generalized binomial coefficient (a_num/2 choose k)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    top = Fraction(a_num, 2)
    num = Fraction(1)
    for i in range(k):
        num *= top - i
    return num / math.factorial(k)


def trial_factor(n: int) -> dict[int, int]:
    """Prime factorization by trial division (n up to ~10^12 is fine)."""
    if n < 1:
        raise ValueError("factor of nonpositive number")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_below(limit: int) -> list[int]:
    """All primes p < limit (sieve of Eratosthenes)."""
    if limit <= 2:
        return []
    s = bytearray([1]) * limit
    s[0] = s[1] = 0
    for i in range(2, math.isqrt(limit - 1) + 1):
        if s[i]:
            s[i * i :: i] = bytes(len(range(i * i, limit, i)))
    return [i for i, f in enumerate(s) if f]


def mult_order(q: int, p: int) -> int:
    """Least d >= 1 with q^d = 1 (mod p), for p prime not dividing q."""
    if q % p == 0:
        raise ValueError(f"{p} divides {q}: order undefined")
    if p == 2:
        return 1
    d = p - 1
    for ell in trial_factor(p - 1):
        while d % ell == 0 and pow(q, d // ell, p) == 1:
            d //= ell
    return d


@lru_cache(maxsize=4096)
def qr_table(p: int) -> bytes:
    """Byte table: entry a is 1 iff a is a square mod p (0 included)."""
    t = bytearray(p)
    for x in range(p // 2 + 1):
        t[x * x % p] = 1
    return bytes(t)


def is_qr_mod(a: int, p: int) -> bool:
    a %= p
    if a == 0:
        return True
    if p < QR_TABLE_LIMIT:
        return bool(qr_table(p)[a])
    return pow(a, (p - 1) // 2, p) == 1


def largest_prime_at_most(n: int) -> int | None:
    while n >= 2:
        if is_prime(n):
            return n
        n -= 1
    return None


class RationalPoly:
    """Dense little-endian polynomial with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int | Fraction] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: RationalPoly) -> RationalPoly:
        n = max(len(self), len(other))
        return RationalPoly(self[i] + other[i] for i in range(n))

    def __sub__(self, other: RationalPoly) -> RationalPoly:
        n = max(len(self), len(other))
        return RationalPoly(self[i] - other[i] for i in range(n))

    def __neg__(self) -> RationalPoly:
        return RationalPoly(-c for c in self.coeffs)

    def __mul__(self, other: RationalPoly | int | Fraction) -> RationalPoly:
        if not isinstance(other, RationalPoly):
            return RationalPoly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __call__(self, x: int | Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def series(self, order: int) -> list[Fraction]:
        return [self[i] for i in range(order)]

    def __repr__(self) -> str:
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "RationalPoly(" + (" + ".join(terms) or "0") + ")"


def series_mul(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> list[Fraction]:
    """Truncated product of two power series, first ``order`` coefficients."""
    out = [Fraction(0)] * order
    for i, x in enumerate(a[:order]):
        if x:
            for j in range(min(len(b), order - i)):
                out[i + j] += x * b[j]
    return out
