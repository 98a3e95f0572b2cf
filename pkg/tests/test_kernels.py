import os
import subprocess
import sys

import numpy as np
import pytest

from trisquare import _kernels
from trisquare.digits import nonzero_count
from trisquare.sieve import _prime_tables, enumerate_tuples


def _brute(lo, hi, q, k):
    return [n for n in range(lo, hi) if n % q and nonzero_count(n * n, q) <= k]


@pytest.mark.parametrize("q, k", [(2, 3), (3, 3), (5, 2), (8, 3), (16, 4), (11, 3)])
def test_scan_numpy_matches_brute(q, k):
    got = _kernels.scan_sparse_squares_numpy(1, 5000, q, k).tolist()
    assert got == _brute(1, 5000, q, k)


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba unavailable")
@pytest.mark.parametrize("q, k", [(2, 3), (5, 3), (16, 3)])
def test_scan_backends_agree(q, k):
    lo, hi = 10**6, 10**6 + 50000
    a = _kernels.scan_sparse_squares_numpy(lo, hi, q, k)
    b = _kernels.scan_sparse_squares_numba(lo, hi, q, k)
    assert a.tolist() == b.tolist()


def _sieve_inputs(q, m, L):
    primes, qpow, qm, flat, offsets, period = _prime_tables(q, m, L, 10**4)
    ts = enumerate_tuples(q, m)
    t2 = np.array([s.t**2 for s in ts])
    M = np.array([s.M for s in ts])
    base = np.ascontiguousarray((t2[:, None] + M[:, None] * qm[None, :]) % primes[None, :])
    N = np.array([s.N for s in ts], dtype=np.int64)
    n0 = np.array([s.n0 for s in ts], dtype=np.int64)
    return base, N, n0, primes, qpow, flat, offsets, period


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba unavailable")
@pytest.mark.parametrize("q, m", [(5, 5), (3, 6), (7, 4)])
def test_sieve_backends_agree(q, m):
    args = _sieve_inputs(q, m, 300)
    assert _kernels.sieve_numpy(*args).tolist() == _kernels.sieve_numba(*args).tolist()


def test_env_flag_selects_numpy():
    env = dict(os.environ, TRISQUARE_NO_NUMBA="1")
    code = (
        "from trisquare import _kernels as k; from trisquare.sieve import sieve_tuples, survivors;"
        "print(k.backend(), len(survivors(sieve_tuples(5, 5))))"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "15"]
