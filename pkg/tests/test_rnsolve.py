import pytest
from hypothesis import given, settings, strategies as st

from trisquare.exactmath import is_perfect_square
from trisquare.rnsolve import (
    RNInstance,
    RNSolution,
    hensel_filter,
    icbrt,
    mordell_scan,
    mordell_transform,
    solve_rn,
)


def test_solve_examples():
    assert RNSolution(56, 1) in solve_rn(RNInstance(3126, 2, 5, 50))
    assert solve_rn(RNInstance(-312499, 4, 5, 50)) == [RNSolution(1, 7), RNSolution(156249, 14)]
    assert solve_rn(RNInstance(6251, 1, 5, 50)) == [RNSolution(3126, 10)]


def _oracle(c, N, q, n_max):
    out = []
    for n in range(1, n_max + 1):
        v = c + N * q**n
        sq, r = is_perfect_square(v)
        if sq and r >= 1:
            out.append((r, n))
    return out


@settings(max_examples=200)
@given(st.integers(2, 31), st.integers(1, 30), st.integers(-10**6, 10**6), st.integers(1, 40))
def test_solve_matches_oracle(q, N, c, n_max):
    got = [(s.Y, s.n) for s in solve_rn(RNInstance(c, N, q, n_max))]
    assert got == _oracle(c, N, q, n_max)


def test_hensel_example():
    assert hensel_filter(RNInstance(6251, 1, 5), 3) == {0, 1}
    with pytest.raises(ValueError):
        hensel_filter(RNInstance(6251, 3, 5), 3)
    with pytest.raises(ValueError):
        hensel_filter(RNInstance(6251, 1, 5), 5)


@settings(max_examples=100)
@given(st.integers(-10**5, 10**5), st.integers(1, 4), st.sampled_from([3, 7, 11, 13, 31]))
def test_filter_is_sound(c, N, p):
    inst = RNInstance(c, N, 5, 40)
    if N % p == 0:
        return
    assert solve_rn(inst, (p,)) == solve_rn(inst)


def test_mordell_transform_example():
    inst = mordell_transform(1, 2, 1, 1, 2, 5, Y=56, n=5)
    assert (inst.k, inst.U, inst.V) == (6875, 1400, 125)
    assert 1400**2 == 125**3 + 6875 == 1_960_000
    plain = mordell_transform(1, 2, 1, 1, 0, 5)
    assert plain.k == 11 and plain.U is None
    with pytest.raises(ValueError):
        mordell_transform(1, 2, 1, 1, 1, 5, Y=56, n=5)


def test_mordell_k_bound_q3():
    worst = max(
        abs(mordell_transform(1, M, N, m, n0, 3).k)
        for M in (-2, -1, 1, 2) for N in (1, 2) for n0 in range(3) for m in range(1, 8)
    )
    assert worst <= 324 * (1 + 2 * 3**7) <= 1417500


def test_mordell_scan_examples():
    assert (1400, 125) in mordell_scan(6875, 10**3)
    assert mordell_scan(0, 10) == [(1, 1), (8, 4), (27, 9)]
    # k > 0 also admits V <= 0
    pts = mordell_scan(9, 10)
    assert (1, -2) in pts and (3, 0) in pts


@given(st.integers(0, 10**40))
def test_icbrt(v):
    r = icbrt(v)
    assert r**3 <= v < (r + 1) ** 3
