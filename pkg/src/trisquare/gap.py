"""q-adic witnesses for the exponent gap and the congruences they satisfy.

For a solution with q an odd prime and n >= 2m, write
Y = q^m Y0 + (-1)^delta t.  Then

    2tY        = kappa  q^{2m} + (-1)^delta (M q^m + 2t^2)
    8t^3 Y     = kappa1 q^{3m} + (-1)^delta (8t^4 + 4t^2 M q^m - M^2 q^{2m})      (n > 3m)
    16t^5 Y    = kappa2 q^{4m} + (-1)^delta (16t^6 + 8t^4 M q^m - 2t^2 M^2 q^{2m} + M^3 q^{3m})   (n >= 4m)
    (-1)^delta 8 kappa2 t^2 + 5 M^4 = upsilon q^m                               (n >= 6m)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .exactmath import is_prime
from .families import Family, ThreeDigitSolution, classify


class WitnessUnavailable(ValueError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class GapVerdict(enum.Enum):
    FAMILY_F1 = "FAMILY_F1"
    SMALL_M = "SMALL_M"
    GAP_OK = "GAP_OK"
    VIOLATION = "VIOLATION"


@dataclass(frozen=True)
class GapWitness:
    delta: int
    Y0: int
    kappa: int
    kappa1: int | None = None
    kappa2: int | None = None
    upsilon: int | None = None

    def to_dict(self) -> dict:
        return {k: (None if v is None else str(v)) for k, v in self.__dict__.items()}


def _exact_div(a: int, b: int, what: str) -> int:
    quo, rem = divmod(a, b)
    if rem:
        raise ArithmeticError(f"{what} is not integral")
    return quo


def select_delta(sol: ThreeDigitSolution) -> int:
    """delta with t = (-1)^delta Y (mod q^m)."""
    qm = sol.q**sol.m
    if (sol.Y - sol.t) % qm == 0:
        return 0
    if (sol.Y + sol.t) % qm == 0:
        return 1
    raise ArithmeticError("Y is not congruent to +-t modulo q^m")


def extract_witness(sol: ThreeDigitSolution) -> GapWitness:
    q, Y, t, M, N, m, n = sol.astuple()
    if q % 2 == 0 or not is_prime(q):
        raise ValueError("witness extraction needs an odd prime base")
    if M == 0:
        raise WitnessUnavailable("M_ZERO")
    if n < 2 * m:
        raise ValueError("witness extraction needs n >= 2m")
    delta = select_delta(sol)
    s = -1 if delta else 1
    qm = q**m
    Y0 = (Y - s * t) // qm
    rest = 2 * t * Y - s * (M * qm + 2 * t * t)
    if rest == 0:
        raise WitnessUnavailable("FAMILY_F1")
    kappa = _exact_div(rest, qm * qm, "kappa")
    lhs = 4 * t * t * N * q ** (n - 2 * m)
    if lhs != (kappa * qm + s * M) ** 2 + kappa * s * 4 * t * t:
        raise ArithmeticError("square identity fails")
    kappa1 = kappa2 = upsilon = None
    if n > 3 * m:
        kappa1 = _exact_div(
            8 * t**3 * Y - s * (8 * t**4 + 4 * t * t * M * qm - M * M * qm * qm), qm**3, "kappa1"
        )
    if n >= 4 * m:
        kappa2 = _exact_div(
            16 * t**5 * Y
            - s * (16 * t**6 + 8 * t**4 * M * qm - 2 * t * t * M * M * qm**2 + M**3 * qm**3),
            qm**4,
            "kappa2",
        )
    if n >= 6 * m and kappa2 is not None:
        upsilon = _exact_div(s * 8 * kappa2 * t * t + 5 * M**4, qm, "upsilon")
    return GapWitness(delta, Y0, kappa, kappa1, kappa2, upsilon)


def recompose(w: GapWitness, sol: ThreeDigitSolution) -> bool:
    """Plug the witness back into its defining identities."""
    q, Y, t, M, N, m, n = sol.astuple()
    s = -1 if w.delta else 1
    qm = q**m
    ok = Y == qm * w.Y0 + s * t
    ok &= 2 * t * Y == w.kappa * qm * qm + s * (M * qm + 2 * t * t)
    ok &= 4 * t * t * N * q ** (n - 2 * m) == (w.kappa * qm + s * M) ** 2 + w.kappa * s * 4 * t * t
    if w.kappa2 is not None:
        lhs = 256 * t**10 * N * q ** (n - 4 * m)
        k2 = w.kappa2
        rhs = (
            k2 * k2 * qm**4
            + s * (32 * k2 * t**6 + 16 * k2 * t**4 * M * qm - 4 * k2 * t * t * M * M * qm**2 + 2 * k2 * M**3 * qm**3)
            + 20 * t**4 * M**4
            - 4 * t * t * M**5 * qm
            + M**6 * qm**2
        )
        ok &= lhs == rhs
    if w.upsilon is not None:
        ok &= s * 8 * w.kappa2 * t * t + 5 * M**4 == w.upsilon * qm
    return bool(ok)


def verify_gap_lemma(sol: ThreeDigitSolution) -> GapVerdict:
    if classify(sol).family is Family.F1_SQUARE_PLUS:
        return GapVerdict.FAMILY_F1
    if sol.m <= 3:
        return GapVerdict.SMALL_M
    if sol.n >= 10 * sol.m - 10:
        return GapVerdict.GAP_OK
    return GapVerdict.VIOLATION


@dataclass(frozen=True)
class CongruenceReport:
    upsilon_nonzero: bool
    kappa2_relation: bool  # (-1)^delta 8 kappa2 t^2 + 5 M^4 = 0 mod q^m
    upsilon_relation: bool  # 5 upsilon + (-1)^delta 28 kappa2 M = 0 mod q^m
    upsilon_class_ok: bool  # 2 upsilon t^2 = 7 M^5 mod q^(m - [q == 5])
    class_modulus: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def check_congruences(w: GapWitness, sol: ThreeDigitSolution) -> CongruenceReport:
    if w.kappa2 is None or w.upsilon is None:
        raise ValueError("kappa2 and upsilon must be defined")
    q, t, M, m = sol.q, sol.t, sol.M, sol.m
    s = -1 if w.delta else 1
    qm = q**m
    mod_b = q ** (m - (1 if q == 5 else 0))
    return CongruenceReport(
        upsilon_nonzero=w.upsilon != 0,
        kappa2_relation=(s * 8 * w.kappa2 * t * t + 5 * M**4) % qm == 0,
        upsilon_relation=(5 * w.upsilon + s * 28 * w.kappa2 * M) % qm == 0,
        upsilon_class_ok=(2 * w.upsilon * t * t - 7 * M**5) % mod_b == 0,
        class_modulus=mod_b,
    )


def upsilon_class(q: int, t: int, M: int, m: int) -> int:
    """The residue of upsilon forced by 2 upsilon t^2 = 7 M^5 modulo q^(m - [q == 5])."""
    mod = q ** (m - (1 if q == 5 else 0))
    return 7 * M**5 * pow(2 * t * t, -1, mod) % mod


def synthetic_witnesses(q: int, t: int, M: int, m: int, delta: int, kappa2_limit: int):
    """Pairs (kappa2, upsilon) with |kappa2| < limit satisfying both the
    defining relation for upsilon and the mod q^m relation between them.

    Used to exercise the congruence machinery where no real solution exists.
    """
    s = -1 if delta else 1
    qm = q**m
    for k2 in range(-kappa2_limit + 1, kappa2_limit):
        v, rem = divmod(s * 8 * k2 * t * t + 5 * M**4, qm)
        if rem == 0 and v != 0 and (5 * v + s * 28 * k2 * M) % qm == 0:
            yield k2, v


def small_m_profile(sols) -> dict[int, int]:
    """How often each m <= 3 occurs among non-F1 solutions.

    Reported over a corpus to see whether m <= 2 would already suffice; it is
    a statistic, not a claim.
    """
    counts: dict[int, int] = {}
    for s in sols:
        if s.M != 0 and s.m <= 3 and verify_gap_lemma(s) is GapVerdict.SMALL_M:
            counts[s.m] = counts.get(s.m, 0) + 1
    return dict(sorted(counts.items()))
