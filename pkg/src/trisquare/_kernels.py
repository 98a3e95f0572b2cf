"""Hot loops: digit-count scans over n^2 and the residue-class sieve.

Each kernel exists twice, a numba ``@njit`` version and a vectorized numpy
version with identical output.  Set ``TRISQUARE_NO_NUMBA=1`` to force the
numpy path (also used when numba is not importable).
"""

from __future__ import annotations

import os

import numpy as np

# n*n must fit in int64
INT64_SQRT_MAX = 3_037_000_499

_DISABLED = os.environ.get("TRISQUARE_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError("numba disabled by TRISQUARE_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------- scan n^2


def scan_sparse_squares_numpy(lo: int, hi: int, q: int, k: int) -> np.ndarray:
    n = np.arange(lo, hi, dtype=np.int64)
    n = n[n % q != 0]
    v = n * n
    count = np.zeros(n.shape, dtype=np.int64)
    while True:
        live = v > 0
        if not live.any():
            break
        count += (v % q != 0)
        v //= q
        # drop rows already over the limit
        keep = count <= k
        if not keep.all():
            n, v, count = n[keep], v[keep], count[keep]
    return n


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _scan_nb(lo, hi, q, k, out):
        c = 0
        for n in range(lo, hi):
            if n % q == 0:
                continue
            v = n * n
            nz = 0
            while v > 0:
                if v % q != 0:
                    nz += 1
                    if nz > k:
                        break
                v //= q
            if nz <= k:
                out[c] = n
                c += 1
        return c

    def scan_sparse_squares_numba(lo: int, hi: int, q: int, k: int) -> np.ndarray:
        out = np.empty(max(hi - lo, 0), dtype=np.int64)
        c = _scan_nb(np.int64(lo), np.int64(hi), np.int64(q), np.int64(k), out)
        return out[:c].copy()

    scan_sparse_squares = scan_sparse_squares_numba
else:
    scan_sparse_squares = scan_sparse_squares_numpy


# ------------------------------------------------------------------- sieve


def sieve_numpy(base, nvals, n0, primes, qpow, qr_flat, qr_off, period):
    """Return, per tuple, the prime that emptied its class set, or 0 (survivor).

    base[i, j]  = (t^2 + M q^m) mod p_j for tuple i
    qpow[j, r]  = q^r mod p_j, r < period
    qr_flat[qr_off[j] + a] = 1 iff a is a square mod p_j
    """
    T = base.shape[0]
    r = np.arange(period)
    alive = (r[None, :] % 3) == n0[:, None]
    killer = np.zeros(T, dtype=np.int64)
    for j in range(len(primes)):
        p = primes[j]
        vals = (base[:, j, None] + nvals[:, None] * qpow[j][None, :]) % p
        alive &= qr_flat[qr_off[j] + vals].astype(bool)
        dead = (~alive.any(axis=1)) & (killer == 0)
        killer[dead] = p
    return killer


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _sieve_nb(base, nvals, n0, primes, qpow, qr_flat, qr_off, period):
        T = base.shape[0]
        killer = np.zeros(T, dtype=np.int64)
        alive = np.empty(period, dtype=np.bool_)
        for i in range(T):
            left = 0
            for r in range(period):
                alive[r] = (r % 3) == n0[i]
                if alive[r]:
                    left += 1
            for j in range(primes.shape[0]):
                p = primes[j]
                b = base[i, j]
                nv = nvals[i]
                for r in range(period):
                    if alive[r]:
                        a = (b + nv * qpow[j, r]) % p
                        if qr_flat[qr_off[j] + a] == 0:
                            alive[r] = False
                            left -= 1
                if left == 0:
                    killer[i] = p
                    break
        return killer

    def sieve_numba(base, nvals, n0, primes, qpow, qr_flat, qr_off, period):
        return _sieve_nb(base, nvals, n0, primes, qpow, qr_flat, qr_off, np.int64(period))

    sieve_kernel = sieve_numba
else:
    sieve_kernel = sieve_numpy
