"""Polynomial solution families, the sporadic corpus, and classification.

A solution is a tuple (q, Y, t, M, N, m, n) with

    Y^2 = t^2 + M q^m + N q^n,   |M|, N, t^2 <= q - 1,   1 <= m < n.

Tuples with M = 0 are stored with m = 0.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .exactmath import is_perfect_square, is_prime


class InvalidSolution(ValueError):
    pass


class SideConditionError(ValueError):
    pass


class CorpusCorruptionError(RuntimeError):
    pass


@dataclass(frozen=True)
class ThreeDigitSolution:
    q: int
    Y: int
    t: int
    M: int
    N: int
    m: int
    n: int

    def __post_init__(self):
        q, Y, t, M, N, m, n = self.astuple()
        if q < 2:
            raise InvalidSolution("base must be >= 2")
        if Y < 1 or t < 1 or N < 1:
            raise InvalidSolution("Y, t, N must be positive")
        if abs(M) > q - 1 or N > q - 1 or t * t > q - 1:
            raise InvalidSolution("digit bounds |M|, N, t^2 <= q-1 violated")
        if M == 0:
            if m != 0 or n < 1:
                raise InvalidSolution("M = 0 requires m = 0 and n >= 1")
        elif not 1 <= m < n:
            raise InvalidSolution("need 1 <= m < n")
        if is_prime(q) and t % q == 0:
            raise InvalidSolution("t must be coprime to q")
        if Y * Y != t * t + M * q**m + N * q**n:
            raise InvalidSolution(f"Y^2 != t^2 + M q^m + N q^n for {self.astuple()}")

    def astuple(self) -> tuple[int, ...]:
        return (self.q, self.Y, self.t, self.M, self.N, self.m, self.n)

    @property
    def C(self) -> int:
        return self.t * self.t

    def sort_key(self) -> tuple[int, int, int, int]:
        return (self.q, self.m, self.n, self.Y)

    def to_dict(self) -> dict:
        return {k: str(v) if k == "Y" else v for k, v in zip("q Y t M N m n".split(), self.astuple())}

    @classmethod
    def from_dict(cls, d: dict) -> ThreeDigitSolution:
        return cls(*(int(d[k]) for k in "q Y t M N m n".split()))


class Family(enum.Enum):
    F1_SQUARE_PLUS = "F1_SQUARE_PLUS"
    F2_Q2_MINUS_T = "F2_Q2_MINUS_T"
    F3_KAPPA1 = "F3_KAPPA1"
    F4_KAPPA2 = "F4_KAPPA2"
    F5_M_ZERO = "F5_M_ZERO"
    F6_R2PLUS1 = "F6_R2PLUS1"
    F7_64R2PLUS1 = "F7_64R2PLUS1"
    SPORADIC_KNOWN = "SPORADIC_KNOWN"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class FamilyTag:
    family: Family
    params: dict = field(default_factory=dict, hash=False)

    def to_dict(self) -> dict:
        return {"family": self.family.value, "params": self.params}


def _sign(delta: int) -> int:
    return -1 if delta else 1


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise SideConditionError(what)


def _build(q, Y, t, M, N, m, n) -> ThreeDigitSolution:
    try:
        return ThreeDigitSolution(q, Y, t, M, N, m, n)
    except InvalidSolution as exc:
        raise SideConditionError(str(exc)) from exc


def _gen_f1(q, t, Y0, m, delta):
    _require(max(t * t, Y0 * Y0, 2 * t * Y0) < q, "max{t^2, Y0^2, 2 t Y0} < q")
    _require(m >= 1 and Y0 >= 1, "m >= 1 and Y0 >= 1")
    s = _sign(delta)
    return _build(q, q**m * Y0 + s * t, t, s * 2 * t * Y0, Y0 * Y0, m, 2 * m)


def _gen_f2(q, t):
    _require(t * t <= q - 1, "t^2 <= q-1")
    return _build(q, q * q - t, t, q - 2 * t, q - 1, 2, 3)


def _gen_f3(q, t, q0, delta):
    _require(t * t < q and q0 * q0 < q and q0 >= 1, "t, q0 < sqrt(q)")
    s = _sign(delta)
    return _build(q, q0 * q + s * t, t, s * (2 * t * q0 - q), q0 * q0 + s, 1, 2)


def _gen_f4(q, t, q0, delta):
    s = _sign(delta)
    _require(q < 2 * t * q0 < 3 * q, "q/2 < t q0 < 3q/2")
    _require(t * t < q, "t < sqrt(q)")
    _require(q0 >= 1 and q0 * q0 < q - 2 * s, "q0 < sqrt(q - 2(-1)^delta)")
    return _build(q, q0 * q + s * t, t, s * 2 * (t * q0 - q), q0 * q0 + 2 * s, 1, 2)


def _gen_f5(q, t):
    _require(t * t <= q - 1 and 2 * t < q, "t^2 <= q-1")
    return _build(q, q - t, t, 0, q - 2 * t, 0, 1)


def _gen_f6(r):
    q = r * r + 1
    _require(r >= 2 and r % 2 == 0, "r even")
    _require(is_prime(q), "q = r^2 + 1 prime")
    Y = r * (r**6 + 5 * r**4 + 7 * r**2 + 5) // 2
    return _build(q, Y, r, r * r - 1, (r * r + 4) // 4, 2, 6)


def _gen_f7(r):
    q = 64 * r * r + 1
    _require(r >= 1, "r >= 1")
    _require(is_prime(q), "q = 64 r^2 + 1 prime")
    Y = r * (32768 * r**4 + 1280 * r**2 + 15)
    return _build(q, Y, 3 * r, -(40 * r * r + 1), 1, 1, 5)


_GENERATORS = {
    Family.F1_SQUARE_PLUS: _gen_f1,
    Family.F2_Q2_MINUS_T: _gen_f2,
    Family.F3_KAPPA1: _gen_f3,
    Family.F4_KAPPA2: _gen_f4,
    Family.F5_M_ZERO: _gen_f5,
    Family.F6_R2PLUS1: _gen_f6,
    Family.F7_64R2PLUS1: _gen_f7,
}


def generate(tag: FamilyTag) -> ThreeDigitSolution:
    if tag.family is Family.SPORADIC_KNOWN:
        entries = sporadic_corpus()
        return entries[tag.params["index"]].solution
    if tag.family is Family.UNKNOWN:
        raise ValueError("UNKNOWN has no generator")
    return _GENERATORS[tag.family](**tag.params)


# ------------------------------------------------------------ classification


def _try(family: Family, sol: ThreeDigitSolution, **params) -> FamilyTag | None:
    try:
        if _GENERATORS[family](**params) == sol:
            return FamilyTag(family, params)
    except SideConditionError:
        pass
    return None


def _candidates(sol: ThreeDigitSolution) -> list[FamilyTag]:
    q, Y, t, M, N, m, n = sol.astuple()
    out: list[FamilyTag | None] = []
    if M != 0 and n == 2 * m:
        sq, Y0 = is_perfect_square(N)
        if sq:
            for delta in (0, 1):
                out.append(_try(Family.F1_SQUARE_PLUS, sol, q=q, t=t, Y0=Y0, m=m, delta=delta))
    if (m, n) == (2, 3):
        out.append(_try(Family.F2_Q2_MINUS_T, sol, q=q, t=t))
    if (m, n) == (1, 2):
        for delta in (0, 1):
            q0, rem = divmod(Y - _sign(delta) * t, q)
            if rem == 0 and q0 >= 1:
                out.append(_try(Family.F3_KAPPA1, sol, q=q, t=t, q0=q0, delta=delta))
                out.append(_try(Family.F4_KAPPA2, sol, q=q, t=t, q0=q0, delta=delta))
    if M == 0:
        out.append(_try(Family.F5_M_ZERO, sol, q=q, t=t))
    if (m, n) == (2, 6):
        out.append(_try(Family.F6_R2PLUS1, sol, r=t))
    if (m, n) == (1, 5) and t % 3 == 0:
        out.append(_try(Family.F7_64R2PLUS1, sol, r=t // 3))
    return [c for c in out if c is not None]


def classify(sol: ThreeDigitSolution) -> FamilyTag:
    found = _candidates(sol)
    if len(found) > 1:
        raise AssertionError(f"solution matches several families: {found}")
    if found:
        return found[0]
    for i, e in enumerate(sporadic_corpus()):
        if e.solution == sol:
            return FamilyTag(Family.SPORADIC_KNOWN, {"index": i})
    return FamilyTag(Family.UNKNOWN, {})


# ------------------------------------------------------------------- corpus


@dataclass(frozen=True)
class CorpusEntry:
    kind: str
    q: int
    Y: int
    C: int
    M: int
    N: int
    m: int
    n: int
    t: int | None

    @property
    def c_nonsquare(self) -> bool:
        return self.t is None

    @property
    def solution(self) -> ThreeDigitSolution | None:
        if self.t is None:
            return None
        return ThreeDigitSolution(self.q, self.Y, self.t, self.M, self.N, self.m, self.n)

    def verify(self) -> None:
        q = self.q
        if self.Y * self.Y != self.C + self.M * q**self.m + self.N * q**self.n:
            raise CorpusCorruptionError(f"identity fails for Y={self.Y}, q={q}")
        if not (0 < self.C < q and abs(self.M) < q and 0 < self.N < q):
            raise CorpusCorruptionError(f"digit bounds fail for Y={self.Y}, q={q}")
        sq, root = is_perfect_square(self.C)
        if self.t is None:
            if sq:
                raise CorpusCorruptionError(f"constant {self.C} is a square but no t given")
        elif not (sq and root == self.t):
            raise CorpusCorruptionError(f"t={self.t} does not match constant {self.C}")
        else:
            self.solution  # noqa: B018  (re-runs ThreeDigitSolution validation)


def load_corpus(text: str) -> list[CorpusEntry]:
    entries = []
    for raw in json.loads(text):
        e = CorpusEntry(
            kind=raw["kind"],
            q=int(raw["q"]),
            Y=int(raw["Y"]),
            C=int(raw["C"]),
            M=int(raw["M"]),
            N=int(raw["N"]),
            m=int(raw["m"]),
            n=int(raw["n"]),
            t=None if raw.get("t") is None else int(raw["t"]),
        )
        try:
            e.verify()
        except InvalidSolution as exc:
            raise CorpusCorruptionError(str(exc)) from exc
        entries.append(e)
    return entries


@lru_cache(maxsize=1)
def _corpus() -> tuple[CorpusEntry, ...]:
    text = resources.files("trisquare").joinpath("data/sporadic.json").read_text(encoding="utf-8")
    return tuple(load_corpus(text))


def sporadic_corpus() -> list[CorpusEntry]:
    return list(_corpus())
