"""Compare the numba and numpy kernels on the digit scan and the sieve.

    python3 benchmarks/bench_kernels.py [--bound 4000000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from trisquare import _kernels
from trisquare.sieve import Status, _prime_tables, enumerate_tuples


def _time(fn, repeat):
    fn()  # warm-up (and JIT compile)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _sieve_args(q, m, L, cap):
    primes, qpow, qm, flat, offsets, period = _prime_tables(q, m, L, cap)
    ts = [s for s in enumerate_tuples(q, m) if s.status is Status.SURVIVOR]
    t2 = np.array([s.t**2 for s in ts])
    M = np.array([s.M for s in ts])
    base = np.ascontiguousarray((t2[:, None] + M[:, None] * qm[None, :]) % primes[None, :])
    N = np.array([s.N for s in ts], dtype=np.int64)
    n0 = np.array([s.n0 for s in ts], dtype=np.int64)
    return base, N, n0, primes, qpow, flat, offsets, period


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--bound", type=int, default=4_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--q", type=int, default=5)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba unavailable; only the numpy path can run")

    rows = []
    t_np, a = _time(lambda: _kernels.scan_sparse_squares_numpy(1, args.bound, args.q, 3), args.repeat)
    row = ["scan", f"q={args.q} n<{args.bound}", t_np]
    if _kernels.HAVE_NUMBA:
        t_nb, b = _time(lambda: _kernels.scan_sparse_squares_numba(1, args.bound, args.q, 3), args.repeat)
        assert a.tolist() == b.tolist()
        row.append(t_nb)
    rows.append(row)

    sargs = _sieve_args(args.q, 5, 300, 10**6)
    t_np, a = _time(lambda: _kernels.sieve_numpy(*sargs), args.repeat)
    row = ["sieve", f"q={args.q} m=5 L=300", t_np]
    if _kernels.HAVE_NUMBA:
        t_nb, b = _time(lambda: _kernels.sieve_numba(*sargs), args.repeat)
        assert a.tolist() == b.tolist()
        row.append(t_nb)
    rows.append(row)

    print(f"{'kernel':<8}{'case':<24}{'numpy s':>10}{'numba s':>10}{'speedup':>9}")
    for r in rows:
        nb = f"{r[3]:10.4f}{r[2] / r[3]:8.1f}x" if len(r) > 3 else ""
        print(f"{r[0]:<8}{r[1]:<24}{r[2]:10.4f}{nb}")


if __name__ == "__main__":
    main()
