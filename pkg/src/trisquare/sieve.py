"""Local sieve over (t, M, N, n0) for Y^2 = t^2 + M q^m + N q^n with n = n0 (mod 3).

A tuple is eliminated when, for every residue class of n modulo
lcm(L, 3) compatible with n0, some auxiliary prime p (with ord_p(q) | L)
makes the right-hand side a non-residue.  Classes are intersected across
primes, so a tuple can die even if no single prime kills it on its own.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .exactmath import is_prime, primes_below

DEFAULT_L = 300
DEFAULT_PRIME_CAP = 10**6


class Status(enum.Enum):
    SURVIVOR = "SURVIVOR"
    ELIMINATED = "ELIMINATED"
    UNAVOIDABLE = "UNAVOIDABLE"


@dataclass(frozen=True)
class SieveTuple:
    t: int
    M: int
    N: int
    n0: int
    status: Status = Status.SURVIVOR
    prime: int | None = None  # eliminating prime
    case: str | None = None  # which unavoidable identity

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.t, self.M, self.N, self.n0)

    def to_dict(self) -> dict:
        d = {"t": self.t, "M": self.M, "N": self.N, "n0": self.n0, "status": self.status.value}
        if self.prime is not None:
            d["prime"] = self.prime
        if self.case is not None:
            d["case"] = self.case
        return d


def _unavoidable_case(q: int, m: int, t: int, M: int, N: int, n0: int) -> str | None:
    for Y0 in range(1, q):
        if max(t * t, Y0 * Y0, 2 * t * Y0) >= q:
            break
        if abs(M) == 2 * t * Y0 and N == Y0 * Y0 and n0 == (2 * m) % 3:
            return "case1"
        if m % 2 == 0 and M == Y0 * Y0 and N == 2 * t * Y0 and n0 == (m // 2) % 3:
            return "case2"
    if M == -N and n0 == m % 3:
        return "case3"
    return None


def enumerate_tuples(q: int, m: int) -> list[SieveTuple]:
    if q % 2 == 0 or not is_prime(q):
        raise ValueError("q must be an odd prime")
    if m < 1:
        raise ValueError("m must be positive")
    out = []
    t = 1
    while t * t <= q - 1:
        for M in range(-(q - 1), q):
            if M == 0:
                continue
            for N in range(1, q):
                for n0 in range(3):
                    case = _unavoidable_case(q, m, t, M, N, n0)
                    status = Status.UNAVOIDABLE if case else Status.SURVIVOR
                    out.append(SieveTuple(t, M, N, n0, status, None, case))
        t += 1
    return out


@lru_cache(maxsize=64)
def sieve_primes(q: int, L: int, cap: int = DEFAULT_PRIME_CAP) -> tuple[int, ...]:
    """Odd primes p < cap, p != q, whose multiplicative order of q divides L."""
    return tuple(p for p in primes_below(cap) if p > 2 and q % p and pow(q, L, p) == 1)


@lru_cache(maxsize=64)
def _prime_tables(q: int, m: int, L: int, cap: int):
    primes = np.array(sieve_primes(q, L, cap), dtype=np.int64)
    period = math.lcm(L, 3)
    r = np.arange(period)
    qpow = np.empty((len(primes), period), dtype=np.int64)
    qm = np.empty(len(primes), dtype=np.int64)
    tables = []
    offsets = np.zeros(len(primes), dtype=np.int64)
    off = 0
    for j, p in enumerate(primes.tolist()):
        qpow[j] = [pow(q, int(x), p) for x in r]
        qm[j] = pow(q, m, p)
        tab = np.zeros(p, dtype=np.uint8)
        x = np.arange(p // 2 + 1, dtype=np.int64)
        tab[(x * x) % p] = 1
        tables.append(tab)
        offsets[j] = off
        off += p
    flat = np.concatenate(tables) if tables else np.zeros(0, dtype=np.uint8)
    return primes, qpow, qm, flat, offsets, period


def eliminating_primes(
    q: int, m: int, tuples: list[SieveTuple], L: int = DEFAULT_L, cap: int = DEFAULT_PRIME_CAP
) -> list[int]:
    """For each tuple, the prime at which its class set became empty, or 0."""
    primes, qpow, qm, flat, offsets, period = _prime_tables(q, m, L, cap)
    if len(primes) == 0:
        raise ValueError(f"no sieve primes below {cap} with order dividing L={L}; try a larger L")
    if not tuples:
        return []
    t2 = np.array([s.t * s.t for s in tuples], dtype=np.int64)
    M = np.array([s.M for s in tuples], dtype=np.int64)
    N = np.array([s.N for s in tuples], dtype=np.int64)
    n0 = np.array([s.n0 for s in tuples], dtype=np.int64)
    base = (t2[:, None] + M[:, None] * qm[None, :]) % primes[None, :]
    base = np.ascontiguousarray(base)
    killer = _kernels.sieve_kernel(base, N, n0, primes, qpow, flat, offsets, period)
    return [int(k) for k in killer]


def sieve_tuples(
    q: int, m: int, L: int = DEFAULT_L, cap: int = DEFAULT_PRIME_CAP
) -> list[SieveTuple]:
    tuples = enumerate_tuples(q, m)
    todo = [s for s in tuples if s.status is Status.SURVIVOR]
    killers = dict(zip((s.key for s in todo), eliminating_primes(q, m, todo, L, cap)))
    out = []
    for s in tuples:
        p = killers.get(s.key, 0)
        if p:
            out.append(SieveTuple(s.t, s.M, s.N, s.n0, Status.ELIMINATED, p, None))
        else:
            out.append(s)
    return out


def survivors(tuples: list[SieveTuple]) -> list[SieveTuple]:
    return [s for s in tuples if s.status is not Status.ELIMINATED]


def dumps(tuples: list[SieveTuple]) -> str:
    return json.dumps([s.to_dict() for s in tuples])
