import pytest
from hypothesis import given, strategies as st

from trisquare.families import Family, FamilyTag, ThreeDigitSolution, generate, sporadic_corpus
from trisquare.gap import (
    GapVerdict,
    GapWitness,
    WitnessUnavailable,
    check_congruences,
    extract_witness,
    recompose,
    synthetic_witnesses,
    upsilon_class,
    verify_gap_lemma,
)

S56 = ThreeDigitSolution(5, 56, 1, 2, 1, 1, 5)
S3126 = ThreeDigitSolution(5, 3126, 1, 2, 1, 5, 10)
S559 = ThreeDigitSolution(5, 559, 1, -4, 4, 1, 7)


def test_witness_56():
    w = extract_witness(S56)
    assert (w.delta, w.Y0, w.kappa) == (0, 11, 4)
    assert 4 * 1 * 1 * 5**3 == 500 == (4 * 5 + 2) ** 2 + 16
    assert recompose(w, S56)


def test_witness_family_f1():
    with pytest.raises(WitnessUnavailable) as exc:
        extract_witness(S3126)
    assert exc.value.reason == "FAMILY_F1"


def test_witness_559():
    w = extract_witness(S559)
    assert (w.delta, w.Y0, w.kappa) == (1, 112, 44)
    assert 2 * 559 == 44 * 25 - (-20 + 2)
    assert w.kappa1 is not None and w.kappa2 is not None and w.upsilon is not None
    assert recompose(w, S559)


def test_witness_m_zero():
    with pytest.raises(WitnessUnavailable) as exc:
        extract_witness(generate(FamilyTag(Family.F5_M_ZERO, dict(q=7, t=1))))
    assert exc.value.reason == "M_ZERO"


def test_thresholds_leave_fields_absent():
    # m = 1, n = 5: past 4m but short of 6m
    w = extract_witness(S56)
    assert w.kappa1 is not None and w.kappa2 is not None and w.upsilon is None
    s = ThreeDigitSolution(7, 1815, 2, 1, 4, 2, 7)
    w = extract_witness(s)
    assert w.kappa1 is not None and w.kappa2 is None and w.upsilon is None


def test_witness_determinism():
    assert extract_witness(S559) == extract_witness(S559)


def test_verdicts():
    assert verify_gap_lemma(S56) is GapVerdict.SMALL_M
    assert verify_gap_lemma(S3126) is GapVerdict.FAMILY_F1


def test_corpus_witnesses_recompose():
    for e in sporadic_corpus():
        s = e.solution
        if s is None or s.q % 2 == 0 or s.n < 2 * s.m:
            continue
        w = extract_witness(s)
        assert recompose(w, s)
        assert verify_gap_lemma(s) is not GapVerdict.VIOLATION


def test_zero_upsilon_flagged():
    w = GapWitness(delta=0, Y0=1, kappa=1, kappa2=0, upsilon=0)
    rep = check_congruences(w, S56)
    assert rep.upsilon_nonzero is False


@pytest.mark.parametrize("M, classes", [(1, {37, 44}), (-1, {37, 44}), (2, {31, 50}), (-2, {31, 50})])
def test_q3_upsilon_classes(M, classes):
    assert upsilon_class(3, 1, M, 4) in classes
    seen = 0
    for delta in (0, 1):
        for k2, u in synthetic_witnesses(3, 1, M, 4, delta, 3000):
            seen += 1
            assert u % 81 in classes and u != 0
    assert seen > 0


@given(
    st.sampled_from([(3, 6), (3, 7), (5, 4), (5, 5), (7, 4), (11, 3), (13, 3)]),
    st.integers(1, 5),
    st.integers(1, 12),
    st.integers(0, 1),
)
def test_kappa2_lower_bound(qm, upsilon, M, delta):
    # kappa2 from the defining relation 8 s kappa2 t^2 + 5 M^4 = upsilon q^m, t = 1
    q, m = qm
    if M > q - 1 or q**m < 375:
        return
    s = -1 if delta else 1
    num = upsilon * q**m - 5 * M**4
    if num % 8:
        return
    k2 = s * num // 8
    assert abs(k2) > q ** (m - 1) / 30


def test_small_m_profile():
    from trisquare.gap import small_m_profile

    sols = [S56, S559, S3126, ThreeDigitSolution(7, 1815, 2, 1, 4, 2, 7)]
    assert small_m_profile(sols) == {1: 2, 2: 1}
