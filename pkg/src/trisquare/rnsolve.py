"""Bounded Ramanujan-Nagell solving, Y^2 = c + N q^n, and the Mordell transform.

Completeness is only ever claimed for 1 <= n <= n_max (or V <= V_max).
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactmath import is_perfect_square, is_qr_mod, mult_order

DEFAULT_NMAX = 50


@dataclass(frozen=True)
class RNInstance:
    c: int  # t^2 + M q^m
    N: int
    q: int
    n_max: int = DEFAULT_NMAX


@dataclass(frozen=True)
class RNSolution:
    Y: int
    n: int

    def to_dict(self) -> dict:
        return {"Y": str(self.Y), "n": self.n}


def hensel_filter(inst: RNInstance, p: int) -> set[int]:
    """Residues r mod ord_p(q) for which c + N q^n can be a square mod p when n = r."""
    if p == 2 or (2 * inst.q * inst.N) % p == 0:
        raise ValueError(f"filter prime {p} must not divide 2qN")
    d = mult_order(inst.q, p)
    return {r for r in range(d) if is_qr_mod(inst.c + inst.N * pow(inst.q, r, p), p)}


def solve_rn(inst: RNInstance, filter_primes: tuple[int, ...] = ()) -> list[RNSolution]:
    if inst.N < 1 or inst.n_max < 1:
        raise ValueError("need N >= 1 and n_max >= 1")
    filters = []
    for p in filter_primes:
        filters.append((mult_order(inst.q, p), hensel_filter(inst, p)))
    out = []
    qn = 1
    for n in range(1, inst.n_max + 1):
        qn *= inst.q
        if any(n % d not in ok for d, ok in filters):
            continue
        sq, Y = is_perfect_square(inst.c + inst.N * qn)
        if sq and Y >= 1:
            out.append(RNSolution(Y, n))
    return out


@dataclass(frozen=True)
class MordellInstance:
    k: int
    n0: int
    U: int | None = None
    V: int | None = None

    def on_curve(self) -> bool:
        return self.U is not None and self.U**2 == self.V**3 + self.k


def mordell_transform(
    t: int, M: int, N: int, m: int, n0: int, q: int, Y: int | None = None, n: int | None = None
) -> MordellInstance:
    """k = N^2 q^(2 n0) (t^2 + M q^m); with a solution (Y, n), U = N q^n0 Y and V = q^((n+2n0)/3) N."""
    if n0 not in (0, 1, 2):
        raise ValueError("n0 must be 0, 1 or 2")
    k = N * N * q ** (2 * n0) * (t * t + M * q**m)
    if Y is None:
        return MordellInstance(k, n0)
    if n is None or n % 3 != n0:
        raise ValueError("solution exponent must be congruent to n0 mod 3")
    inst = MordellInstance(k, n0, N * q**n0 * Y, q ** ((n + 2 * n0) // 3) * N)
    if not inst.on_curve():
        raise ArithmeticError("transformed point is not on the curve")
    return inst


def icbrt(v: int) -> int:
    """floor(cbrt(v)) for v >= 0."""
    if v < 0:
        raise ValueError("negative")
    if v < 2:
        return v
    x = 1 << ((v.bit_length() + 2) // 3)
    while True:
        y = (2 * x + v // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x**3 > v:
        x -= 1
    while (x + 1) ** 3 <= v:
        x += 1
    return x


def mordell_scan(k: int, V_max: int) -> list[tuple[int, int]]:
    """Integer points (U >= 0, V) on U^2 = V^3 + k with V <= V_max.

    For k <= 0 the scan starts at V = 1; for k > 0 it also covers
    -ceil(k^(1/3)) <= V <= 0.
    """
    if V_max < 1:
        raise ValueError("V_max must be >= 1")
    if k > 0:
        c = icbrt(k)
        lo = -(c if c**3 == k else c + 1)
    else:
        lo = 1
    pts = []
    for V in range(lo, V_max + 1):
        sq, U = is_perfect_square(V**3 + k)
        if sq:
            pts.append((U, V))
    return pts
