"""Base-q expansions, digit statistics, and exhaustive sparse-square search."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from . import _kernels

DEFAULT_CHUNK = 1 << 20


@dataclass(frozen=True)
class BaseQExpansion:
    base: int
    digits: tuple[int, ...]  # little-endian

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be >= 2")
        if any(not 0 <= d < self.base for d in self.digits):
            raise ValueError("digit out of range")
        if self.digits and self.digits[-1] == 0:
            raise ValueError("leading zero digit")

    @property
    def value(self) -> int:
        v = 0
        for d in reversed(self.digits):
            v = v * self.base + d
        return v

    def nonzero(self) -> list[tuple[int, int]]:
        """(position, digit) pairs for the nonzero digits, low to high."""
        return [(i, d) for i, d in enumerate(self.digits) if d]


@dataclass(frozen=True)
class DigitStats:
    nonzero_count: int
    digit_sum: int


def expand(v: int, q: int) -> BaseQExpansion:
    if q < 2:
        raise ValueError("base must be >= 2")
    if v < 0:
        raise ValueError("expansion of a negative number")
    out = []
    while v:
        v, r = divmod(v, q)
        out.append(r)
    return BaseQExpansion(q, tuple(out))


def stats(e: BaseQExpansion) -> DigitStats:
    return DigitStats(sum(1 for d in e.digits if d), sum(e.digits))


def nonzero_count(v: int, q: int) -> int:
    c = 0
    while v:
        v, r = divmod(v, q)
        if r:
            c += 1
    return c


@dataclass(frozen=True)
class SparseSquareHit:
    n: int
    square_expansion: BaseQExpansion
    N_q_of_n: int
    N_q_of_square: int

    @property
    def q(self) -> int:
        return self.square_expansion.base

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": str(self.n),
                "q": self.q,
                "square_digits": [[i, d] for i, d in self.square_expansion.nonzero()],
            }
        )


def _make_hit(n: int, q: int) -> SparseSquareHit:
    e = expand(n * n, q)
    return SparseSquareHit(n, e, nonzero_count(n, q), stats(e).nonzero_count)


def _scan_python(lo: int, hi: int, q: int, k: int) -> list[int]:
    return [n for n in range(lo, hi) if n % q and nonzero_count(n * n, q) <= k]


def _scan_chunk(lo: int, hi: int, q: int, k: int) -> list[int]:
    if hi - 1 <= _kernels.INT64_SQRT_MAX:
        return [int(x) for x in _kernels.scan_sparse_squares(lo, hi, q, k)]
    split = max(lo, _kernels.INT64_SQRT_MAX + 1)
    head = _scan_chunk(lo, split, q, k) if split > lo else []
    return head + _scan_python(split, hi, q, k)


def _chunks(start: int, stop: int, size: int) -> Iterator[tuple[int, int]]:
    for lo in range(start, stop, size):
        yield lo, min(lo + size, stop)


def worker_count() -> int:
    raw = os.environ.get("TRISQUARE_THREADS")
    if raw:
        return max(1, int(raw))
    return 1


def find_sparse_squares(
    q: int, k: int, bound: int, chunk_size: int = DEFAULT_CHUNK, workers: int | None = None
) -> list[SparseSquareHit]:
    """All n <= bound, n not divisible by q, whose square has at most k nonzero digits."""
    if q < 2 or k < 1:
        raise ValueError("need q >= 2 and k >= 1")
    if bound < 1:
        return []
    workers = workers or worker_count()
    ranges = list(_chunks(1, bound + 1, chunk_size))
    if workers > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda r: _scan_chunk(r[0], r[1], q, k), ranges))
    else:
        parts = [_scan_chunk(lo, hi, q, k) for lo, hi in ranges]
    ns = sorted(n for part in parts for n in part)
    hits = [_make_hit(n, q) for n in ns]
    # the kernel only filters; the exact count is authoritative
    return [h for h in hits if h.N_q_of_square <= k]


def compute_Bkj(q: int, k: int, j: int, bound: int, **kw) -> list[int]:
    """Members of B_{k,j}(q) up to bound: N_q(n) = j and N_q(n^2) = k."""
    if k < 1 or j < 1:
        raise ValueError("need k >= 1 and j >= 1")
    return [
        h.n for h in find_sparse_squares(q, k, bound, **kw) if h.N_q_of_square == k and h.N_q_of_n == j
    ]
