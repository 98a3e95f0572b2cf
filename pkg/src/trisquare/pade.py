"""Pade approximants to (1+x)^(1/2) and the q-bounds built from them.

P_{n1,n2} has degree n1, Q_{n1,n2} degree n2, and P - (1+x)^(1/2) Q
vanishes to order n1+n2+1 at x = 0.  All coefficients are exact Fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exactmath import (
    RationalPoly,
    binom_half,
    is_prime,
    largest_prime_at_most,
    primes_below,
    series_mul,
)


class PadeConsistencyError(RuntimeError):
    """An identity that must hold by construction failed."""


@dataclass(frozen=True)
class PadePair:
    n1: int
    n2: int
    P: RationalPoly
    Q: RationalPoly


@lru_cache(maxsize=None)
def pade_P(n1: int, n2: int) -> RationalPoly:
    if n1 < 0 or n2 < 0:
        raise ValueError("indices must be nonnegative")
    return RationalPoly(
        binom_half(2 * n2 + 1, k) * math.comb(n1 + n2 - k, n2) for k in range(n1 + 1)
    )


@lru_cache(maxsize=None)
def pade_Q(n1: int, n2: int) -> RationalPoly:
    if n1 < 0 or n2 < 0:
        raise ValueError("indices must be nonnegative")
    return RationalPoly(
        binom_half(2 * n1 - 1, k) * math.comb(n1 + n2 - k, n1) for k in range(n2 + 1)
    )


def pade_pair(n1: int, n2: int) -> PadePair:
    return PadePair(n1, n2, pade_P(n1, n2), pade_Q(n1, n2))


def sqrt_series(order: int) -> list[Fraction]:
    """First ``order`` coefficients of (1+x)^(1/2)."""
    return [binom_half(1, k) for k in range(order)]


def remainder_series(n1: int, n2: int, order: int) -> list[Fraction]:
    """First ``order`` coefficients of P - (1+x)^(1/2) Q."""
    if order <= n1 + n2 + 1:
        raise ValueError("order must exceed n1+n2+1")
    P, Q = pade_P(n1, n2), pade_Q(n1, n2)
    prod = series_mul(list(Q.coeffs), sqrt_series(order), order)
    return [P[i] - prod[i] for i in range(order)]


def gamma_half(n: int) -> Fraction:
    """Gamma(n + 1/2) / sqrt(pi), exact, for any integer n."""
    r = Fraction(1)
    if n >= 0:
        for i in range(n):
            r *= Fraction(2 * i + 1, 2)
    else:
        for i in range(-n):
            r /= Fraction(-2 * i - 1, 2)
    return r


def _pochhammer(a: Fraction, k: int) -> Fraction:
    r = Fraction(1)
    for i in range(k):
        r *= a + i
    return r


def remainder_closed_form(n1: int, n2: int, order: int) -> list[Fraction]:
    """Remainder series from the Gamma / 2F1 closed form.

    E(x) = (-1)^(n2+1) G(n2+3/2) / (G(1/2-n1) G(n1+n2+2)) * 2F1(n1+1/2, n2+1; n1+n2+2; -x).
    Independent of the series product in ``remainder_series``.
    """
    lead = (-1) ** (n2 + 1) * gamma_half(n2 + 1) / (gamma_half(-n1) * math.factorial(n1 + n2 + 1))
    a, b, c = Fraction(2 * n1 + 1, 2), Fraction(n2 + 1), Fraction(n1 + n2 + 2)
    start = n1 + n2 + 1
    out = [Fraction(0)] * order
    for i in range(start, order):
        k = i - start
        out[i] = lead * (-1) ** k * _pochhammer(a, k) * _pochhammer(b, k) / (
            math.factorial(k) * _pochhammer(c, k)
        )
    return out


def cross_product(n1: int, n2: int) -> RationalPoly:
    return pade_P(n1 + 1, n2) * pade_Q(n1, n2 + 1) - pade_P(n1, n2 + 1) * pade_Q(n1 + 1, n2)


def cross_constant(n1: int, n2: int) -> Fraction:
    """Coefficient c with P_{n1+1,n2} Q_{n1,n2+1} - P_{n1,n2+1} Q_{n1+1,n2} = c x^(n1+n2+2)."""
    poly = cross_product(n1, n2)
    d = n1 + n2 + 2
    support = [i for i, c in enumerate(poly.coeffs) if c]
    if support != [d]:
        raise PadeConsistencyError(f"cross product for ({n1},{n2}) has support {support}")
    return poly[d]


def cross_constant_closed_form(n1: int, n2: int) -> Fraction:
    """The Gamma-function expression for c, with the sign convention as published.

    Exact arithmetic gives the negative of this value; compare magnitudes.
    """
    return (
        (-1) ** (n2 + 1)
        * (2 * n1 - 2 * n2 - 1)
        * gamma_half(n2 + 1)
        / (2 * math.factorial(n1 + 1) * math.factorial(n2 + 1) * gamma_half(-n1))
    )


# ------------------------------------------------------- parameter choice


@dataclass(frozen=True)
class ParamSelection:
    m: int
    n: int
    delta: int
    Delta1: int
    Delta2: int
    n1: int
    n2: int

    @property
    def cover(self) -> int:
        """(n1+n2+1) m - n, the q-adic excess used by the divisibility test."""
        return (self.n1 + self.n2 + 1) * self.m - self.n


def _frac_part(x: Fraction) -> Fraction:
    return x - math.floor(x)


def select_params(m: int, n: int, delta: int) -> ParamSelection:
    if m < 4 or n < 10 * m - 10 or delta not in (0, 1):
        raise ValueError(f"parameters out of domain: m={m}, n={n}, delta={delta}")
    f = _frac_part(Fraction(n, 4 * m))
    Delta1 = int(
        Fraction(0) <= f <= Fraction(1, 4)
        or Fraction(1, 3) <= f <= Fraction(1, 2)
        or Fraction(2, 3) <= f <= Fraction(3, 4)
    )
    Delta2 = int(f > 0)
    n1 = (3 * n) // (4 * m) + delta - Delta1
    n2 = n // (4 * m) - delta + Delta2
    return ParamSelection(m, n, delta, Delta1, Delta2, n1, n2)


def exponent_bound(sel: ParamSelection) -> Fraction:
    """mu = max{n1(m+1), n2(m+1) + n1 - n2 + n/2}."""
    m, n, n1, n2 = sel.m, sel.n, sel.n1, sel.n2
    return max(Fraction(n1 * (m + 1)), Fraction(n2 * (m + 1) + n1 - n2) + Fraction(n, 2))


def exponent_bound_rhs(m: int, n: int) -> Fraction:
    return Fraction(3 * n, 4) + Fraction(3 * n, 4 * m) + m - Fraction(5, 4)


def lemma1_check(n1: int, n2: int, x: int | Fraction) -> bool:
    """Both archimedean bounds on |P(x)| and |Q(x)|, by exact evaluation."""
    x = Fraction(x)
    if abs(x) < 16:
        raise ValueError("requires |x| >= 16")
    ax = abs(x)
    okP = abs(pade_P(n1, n2)(x)) <= 2 * ax**n1
    okQ = abs(pade_Q(n1, n2)(x)) <= Fraction(2) ** (n1 + n2 - 1) * (1 + ax / 2) ** n2
    return okP and okQ


def divisibility_criterion(sel: ParamSelection, q: int) -> bool:
    """True iff q^((n1+n2+1)m - n) divides binom(n1+n2, n2)^2."""
    e = sel.cover
    if e <= 0:
        raise ValueError("requires (n1+n2+1) m > n")
    return math.comb(sel.n1 + sel.n2, sel.n2) ** 2 % q**e == 0


# ---------------------------------------------------------------- q bounds


def _largest_base_below(exp: int, target: int) -> int:
    """Largest integer q >= 1 with q**exp < target (exp >= 1, target >= 2)."""
    lo, hi = 1, 2
    while hi**exp < target:
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**exp < target:
            lo = mid
        else:
            hi = mid
    return lo


def crude_bound(m: int, n: int) -> int | None:
    """Largest q with q < 3^((6n+8m)/(mn-3n-4m^2+5m)); None when the denominator is <= 0."""
    D = m * n - 3 * n - 4 * m * m + 5 * m
    if D <= 0:
        return None
    return _largest_base_below(D, 3 ** (6 * n + 8 * m))


def pair_bound(sel: ParamSelection) -> int | None:
    """Largest q with q^(n - mu) < 9^n1, or None when mu >= n."""
    gap2 = 2 * sel.n - 2 * exponent_bound(sel)  # integer: mu is a half-integer
    if gap2 <= 0:
        return None
    return _largest_base_below(int(gap2), 3 ** (4 * sel.n1))


@dataclass(frozen=True)
class QBoundReport:
    m: int
    n: int
    mu: Fraction
    q_max: int | None  # None means unbounded
    refined: bool
    q_crude: int | None = None
    q_refined: int | None = None
    exempt_primes: tuple[int, ...] = field(default_factory=tuple)

    def allows(self, q: int) -> bool:
        return self.q_max is None or q <= self.q_max

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "mu": str(self.mu),
            "q_max": "unbounded" if self.q_max is None else str(self.q_max),
            "refined": self.refined,
            "q_crude": None if self.q_crude is None else str(self.q_crude),
            "q_refined": None if self.q_refined is None else str(self.q_refined),
            "exempt_primes": list(self.exempt_primes),
        }


def _binom_valuation(a: int, b: int, p: int) -> int:
    """Exponent of p in binom(a, b), by Legendre's formula."""

    def fact_val(x: int) -> int:
        v = 0
        while x:
            x //= p
            v += x
        return v

    return fact_val(a) - fact_val(b) - fact_val(a - b)


def refined_bound(m: int, n: int) -> tuple[int | None, tuple[int, ...], int]:
    """Refined bound from the divisibility test.

    Returns (bound, exempt_primes, delta).  When (n1+n2+1)m > n, any prime q
    for which the divisibility fails for both pairs gets the sharper of the two
    bounds; primes in ``exempt_primes`` do not.  When (n1+n2+1)m = n only one
    pair is guaranteed, so the weaker bound is taken and nothing is exempt.
    """
    sels = [select_params(m, n, d) for d in (0, 1)]
    bounds = [pair_bound(s) for s in sels]
    e = sels[0].cover
    if e > 0:
        finite = [(b, s.delta) for b, s in zip(bounds, sels) if b is not None]
        if not finite:
            return None, (), 0
        b, d = min(finite)
        exempt = set()
        for s in sels:
            for p in primes_below(s.n1 + s.n2 + 1):
                if 2 * _binom_valuation(s.n1 + s.n2, s.n2, p) >= e:
                    exempt.add(p)
        return b, tuple(sorted(exempt)), d
    if any(b is None for b in bounds):
        return None, (), 0
    b, d = max((b, s.delta) for b, s in zip(bounds, sels))
    return b, (), d


REFINE_M = 4


def bound_q(m: int, n: int) -> QBoundReport:
    if m < 4 or n < 10 * m - 10:
        raise ValueError("requires m >= 4 and n >= 10m - 10")
    q_crude = crude_bound(m, n)
    q_refined, exempt, d = refined_bound(m, n)
    mu = exponent_bound(select_params(m, n, d))
    # the divisibility refinement is only worth its cost where the crude
    # exponent is weak, i.e. m = 4; elsewhere the crude bound is reported
    if q_refined is not None and (m == REFINE_M or q_crude is None):
        q_max = max((q_refined,) + exempt)
        return QBoundReport(m, n, mu, q_max, True, q_crude, q_refined, exempt)
    return QBoundReport(m, n, mu, q_crude, False, q_crude, q_refined, exempt)


def primes_allowed(m: int, n: int, q_min: int = 3) -> list[int]:
    rep = bound_q(m, n)
    if rep.q_max is None:
        raise ValueError(f"no bound on q for (m, n) = ({m}, {n})")
    return [q for q in range(q_min, rep.q_max + 1) if is_prime(q)]


def _next_prime(q: int) -> int:
    while not is_prime(q):
        q += 1
    return q


@dataclass(frozen=True)
class FeasibleRange:
    m: int
    q_min: int
    n_lo: int | None
    n_hi: int | None
    q_bound: int | None  # largest q_max over the range; None if some n is unbounded
    tail_unbounded: bool  # the large-n limit of the closed form still allows q_min

    @property
    def q_top(self) -> int | None:
        """Largest prime allowed anywhere in the range."""
        if self.q_bound is None or self.n_lo is None:
            return None
        return largest_prime_at_most(self.q_bound)


def feasible_range(m: int, q_min: int = 5, n_cap: int = 10_000, first_only: bool = False) -> FeasibleRange:
    """n-range in which some prime q >= q_min passes bound_q.

    The closed-form exponent decreases in n, so once the crude bound drops
    below q_min (and the limit does not allow q_min) the scan stops.
    """
    p_min = _next_prime(q_min)
    tail = q_min ** (m - 3) < 3**6
    n_lo = n_hi = None
    q_bound: int | None = 0
    for n in range(10 * m - 10, n_cap + 1):
        rep = bound_q(m, n)
        if rep.q_max is None or rep.q_max >= p_min:
            n_lo = n if n_lo is None else n_lo
            n_hi = n
            if rep.q_max is None or q_bound is None:
                q_bound = None
            else:
                q_bound = max(q_bound, rep.q_max)
            if first_only:
                break
        elif rep.q_crude is not None and not tail:
            break
    return FeasibleRange(m, q_min, n_lo, n_hi, q_bound if n_lo is not None else None, tail)


def max_feasible_m(q_min: int, m_cap: int = 60) -> int:
    """Largest m >= 4 for which some n >= 10m-10 leaves a prime q >= q_min."""
    best = 3
    for m in range(4, m_cap + 1):
        if feasible_range(m, q_min, n_cap=40 * m, first_only=True).n_lo is not None:
            best = m
    return best
