"""Decomposition of sparse squares, the bounded three-digit pipeline, and
verification of the small-base classification."""

from __future__ import annotations

import csv
import enum
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import IO, Iterable

from . import digits
from .exactmath import is_perfect_square, is_prime
from .families import Family, FamilyTag, ThreeDigitSolution, classify
from .rnsolve import RNInstance, solve_rn
from .sieve import DEFAULT_L, Status, sieve_tuples

# ----------------------------------------------------------- decomposition


class DecompStatus(enum.Enum):
    OK = "OK"
    DEGENERATE = "DEGENERATE"
    C_NONSQUARE = "C_NONSQUARE"
    NOT_THREE_DIGIT = "NOT_THREE_DIGIT"


@dataclass(frozen=True)
class Decomposition:
    y: int
    q: int
    status: DecompStatus
    digits: tuple[tuple[int, int], ...]  # (position, digit) of y^2
    solution: ThreeDigitSolution | None = None

    def to_dict(self) -> dict:
        d = {
            "y": str(self.y),
            "q": self.q,
            "status": self.status.value,
            "square_digits": [list(x) for x in self.digits],
        }
        if self.solution is not None:
            d["solution"] = self.solution.to_dict()
        return d


def decompose(y: int, q: int) -> Decomposition:
    if q < 2:
        raise ValueError("q must be >= 2")
    if y < 1 or y % q == 0:
        raise ValueError("y must be positive and coprime to q")
    nz = tuple(digits.expand(y * y, q).nonzero())
    if len(nz) > 3:
        return Decomposition(y, q, DecompStatus.NOT_THREE_DIGIT, nz)
    if len(nz) < 3:
        return Decomposition(y, q, DecompStatus.DEGENERATE, nz)
    (p0, C), (m, M), (n, N) = nz
    if p0 != 0:
        # only possible for composite q: q does not divide y but does divide y^2
        return Decomposition(y, q, DecompStatus.DEGENERATE, nz)
    sq, t = is_perfect_square(C)
    if not sq:
        return Decomposition(y, q, DecompStatus.C_NONSQUARE, nz)
    return Decomposition(y, q, DecompStatus.OK, nz, ThreeDigitSolution(q, y, t, M, N, m, n))


# ---------------------------------------------------------------- pipeline


@dataclass(frozen=True)
class ClassifiedSolution:
    solution: ThreeDigitSolution
    tag: FamilyTag

    def to_dict(self) -> dict:
        return {**self.solution.to_dict(), **self.tag.to_dict()}


class SieveUnsoundError(RuntimeError):
    pass


def _lift(q: int, t: int, M: int, N: int, m: int, Y: int, n: int) -> ThreeDigitSolution | None:
    if n > m:
        return ThreeDigitSolution(q, Y, t, M, N, m, n)
    if n < m and M >= 1:
        return ThreeDigitSolution(q, Y, t, N, M, n, m)
    return None


def _pipeline_one_m(q: int, m: int, n_max: int, L: int) -> list[ThreeDigitSolution]:
    tuples = sieve_tuples(q, m, L)
    alive: dict[tuple[int, int, int], set[int]] = {}
    for s in tuples:
        if s.status is not Status.ELIMINATED:
            alive.setdefault((s.t, s.M, s.N), set()).add(s.n0)
    out = []
    for (t, M, N), n0s in sorted(alive.items()):
        for sol in solve_rn(RNInstance(t * t + M * q**m, N, q, n_max)):
            if sol.n % 3 not in n0s:
                raise SieveUnsoundError(f"solution {(t, M, N, m, sol.n)} lies in an eliminated class")
            lifted = _lift(q, t, M, N, m, sol.Y, sol.n)
            if lifted is not None:
                out.append(lifted)
    return out


def pipeline_theorem2(
    q: int, m_range: Iterable[int], n_max: int, L: int = DEFAULT_L, workers: int | None = None
) -> list[ClassifiedSolution]:
    if q % 2 == 0 or not is_prime(q):
        raise ValueError("q must be an odd prime")
    ms = sorted(set(m_range))
    workers = workers or digits.worker_count()
    if workers > 1 and len(ms) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda m: _pipeline_one_m(q, m, n_max, L), ms))
    else:
        parts = [_pipeline_one_m(q, m, n_max, L) for m in ms]
    uniq = {s.astuple(): s for part in parts for s in part}
    sols = sorted(uniq.values(), key=ThreeDigitSolution.sort_key)
    return [ClassifiedSolution(s, classify(s)) for s in sols]


# --------------------------------------------------- small-base classification

EXCEPTIONAL = {
    2: (1, 5, 7, 23),
    3: (1, 5, 8, 13),
    5: (1, 4, 8, 9, 12, 16, 23, 24, 56, 177),
    8: (92, 111, 124, 126, 158, 188, 316, 444, 479, 508, 10837),
}

B3 = {
    2: (7, 23),
    3: (13,),
    4: (23, 30, 31, 46, 62, 111, 222),
    5: (56, 177),
    8: (92, 111, 124, 126, 158, 188, 316, 444, 479, 508, 10837),
    16: (
        364, 444, 446, 500, 504, 508, 574, 628, 680, 760, 812, 888, 924, 958,
        1012, 1016, 1020, 1022, 1784, 2296, 3832, 3966, 4088, 10837, 15864, 43348,
    ),
}

_Q4_BASE = (1, 7, 15, 23, 31, 111)
_Q16_BASE = (111, 125, 126, 127)
_Q16_PAIRS = ((1, 3), (2, 3), (3, 8), (2, 12), (4, 12), (8, 12))


def _pairs(rs: Iterable[int]) -> tuple[tuple[int, int], ...]:
    rs = tuple(rs)
    return tuple(product(rs, rs))


def _shape(n: int, q: int, pairs: Iterable[tuple[int, int]]) -> tuple[int, int, int] | None:
    """(r, b, s) with n = r q^b + s, b >= 0, or None."""
    for r, s in pairs:
        v, b = n - s, 0
        if v < r:
            continue
        while v % q == 0 and v // q >= r:
            if v == r:
                break
            v //= q
            b += 1
        if v == r:
            return (r, b, s)
    return None


_SHAPES = {
    2: ((1, 1),),
    3: ((1, 1),),
    4: ((1, 1), (2, 1)),
    5: ((1, 1), (2, 1), (1, 2)),
    8: _pairs((1, 2, 4)),
    16: _pairs((1, 2, 4, 8)) + _Q16_PAIRS + tuple((s, r) for r, s in _Q16_PAIRS),
}


def explain_small_base(n: int, q: int, literal: bool = False) -> str | None:
    """Name the clause of the small-base classification covering n, if any."""
    if q in EXCEPTIONAL and n in EXCEPTIONAL[q]:
        return "exceptional"
    if q == 8 and n <= 63:
        return "small"
    if q in (2, 3, 5, 8):
        hit = _shape(n, q, _SHAPES[q])
        return None if hit is None else "r*q^b+s:%d,%d,%d" % hit
    if q == 4:
        mults = (1, 2)
    elif q == 16:
        if not literal and n in B3[16]:
            return "exceptional"
        mults = (1, 2, 4)
    else:
        raise ValueError(f"no classification for base {q}")
    small = 100 if literal else q * q - 1
    for c in mults:
        if n % c:
            continue
        t = n // c
        if q == 4 and t in _Q4_BASE:
            return f"{c}*t:listed"
        if q == 16 and (t <= small or t in _Q16_BASE):
            return f"{c}*t:small"
        hit = _shape(t, q, _SHAPES[q])
        if hit is not None:
            return f"{c}*t:r*q^b+s:%d,%d,%d" % hit
    return None


@dataclass
class VerificationReport:
    q: int
    bound: int
    expected_exceptional_set: list[int]
    found_exceptional: list[int]
    family_members: list[tuple[int, str]] = field(default_factory=list)
    discrepancies: list[str] = field(default_factory=list)

    @property
    def passes(self) -> bool:
        return not self.discrepancies

    def to_dict(self) -> dict:
        d = asdict(self)
        d["family_members"] = [[str(n), tag] for n, tag in self.family_members]
        d["passes"] = self.passes
        return d


def verify_theorem1(q: int, bound: int, literal: bool = False, **kw) -> VerificationReport:
    if q not in _SHAPES:
        raise ValueError("q must be one of 2, 3, 4, 5, 8, 16")
    expected = [n for n in (EXCEPTIONAL.get(q) or B3[q]) if n <= bound]
    found_exc, members, bad = [], [], []
    hits = digits.find_sparse_squares(q, 3, bound, **kw)
    seen = set()
    for h in hits:
        seen.add(h.n)
        why = explain_small_base(h.n, q, literal)
        if why is None:
            bad.append(f"unexplained {h.n}")
        elif why == "exceptional":
            found_exc.append(h.n)
        else:
            members.append((h.n, why))
    for n in expected:
        if n not in seen:
            bad.append(f"missing {n}")
    return VerificationReport(q, bound, expected, found_exc, members, bad)


def compute_B3(q: int, bound: int, **kw) -> list[int]:
    return [h.n for h in digits.find_sparse_squares(q, 3, bound, **kw) if h.N_q_of_square == 3 and h.N_q_of_n >= 3]


# ------------------------------------------------------------ config, output


@dataclass
class RunConfig:
    q: int
    mode: str
    bound: int | None = None
    k: int = 3
    m_from: int | None = None
    m_to: int | None = None
    n_max: int | None = None
    L: int = DEFAULT_L
    chunk_size: int = digits.DEFAULT_CHUNK
    output: str | None = None

    def __post_init__(self):
        if self.mode not in ("search", "pipeline", "verify"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode in ("search", "verify") and self.bound is None:
            raise ValueError(f"{self.mode} needs bound")
        if self.mode == "pipeline" and None in (self.m_from, self.m_to, self.n_max):
            raise ValueError("pipeline needs m_from, m_to and n_max")
        for name in ("q", "bound", "k", "m_from", "m_to", "n_max", "L", "chunk_size"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def from_file(cls, path: str, **overrides) -> RunConfig:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        raw.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**raw)


def _reverified(rec: dict) -> dict:
    ThreeDigitSolution.from_dict(rec)  # raises if the identity fails
    return rec


def write_jsonl(records: Iterable[ClassifiedSolution], fh: IO[str]) -> int:
    n = 0
    for r in records:
        fh.write(json.dumps(_reverified(r.to_dict()), ensure_ascii=False) + "\n")
        n += 1
    return n


def csv_summary(records: Iterable[ClassifiedSolution]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["q", "Y", "t", "M", "N", "m", "n", "family"])
    for r in records:
        _reverified(r.solution.to_dict())
        w.writerow([*r.solution.astuple(), r.tag.family.value])
    return buf.getvalue()


def is_unknown_large_m(r: ClassifiedSolution) -> bool:
    return r.tag.family is Family.UNKNOWN and r.solution.m >= 4
