import json

import pytest
from hypothesis import given, strategies as st

from trisquare.exactmath import is_prime
from trisquare.families import (
    CorpusCorruptionError,
    Family,
    FamilyTag,
    InvalidSolution,
    SideConditionError,
    ThreeDigitSolution,
    classify,
    generate,
    load_corpus,
    sporadic_corpus,
)


def test_generate_examples():
    s = generate(FamilyTag(Family.F1_SQUARE_PLUS, dict(q=5, t=1, Y0=1, m=5, delta=0)))
    assert s.astuple() == (5, 3126, 1, 2, 1, 5, 10)
    s = generate(FamilyTag(Family.F6_R2PLUS1, dict(r=2)))
    assert s.astuple() == (5, 177, 2, 3, 2, 2, 6) and s.Y**2 == 31329
    s = generate(FamilyTag(Family.F2_Q2_MINUS_T, dict(q=7, t=1)))
    assert s.astuple() == (7, 48, 1, 5, 6, 2, 3)
    s = generate(FamilyTag(Family.F7_64R2PLUS1, dict(r=2)))
    assert (s.q, s.Y) == (257, 1058846)


def test_side_conditions_named():
    with pytest.raises(SideConditionError, match="prime"):
        generate(FamilyTag(Family.F6_R2PLUS1, dict(r=8)))
    with pytest.raises(SideConditionError, match="2 t Y0"):
        generate(FamilyTag(Family.F1_SQUARE_PLUS, dict(q=5, t=1, Y0=3, m=3, delta=0)))
    with pytest.raises(ValueError):
        generate(FamilyTag(Family.UNKNOWN))


def test_solution_validation():
    with pytest.raises(InvalidSolution):
        ThreeDigitSolution(5, 57, 1, 2, 1, 1, 5)
    with pytest.raises(InvalidSolution):
        ThreeDigitSolution(5, 56, 1, 2, 1, 5, 1)
    with pytest.raises(InvalidSolution):
        ThreeDigitSolution(5, 3, 1, 0, 4, 1, 1)


def test_classify_examples():
    tag = classify(ThreeDigitSolution(5, 3126, 1, 2, 1, 5, 10))
    assert tag.family is Family.F1_SQUARE_PLUS and tag.params["Y0"] == 1 and tag.params["delta"] == 0
    tag = classify(ThreeDigitSolution(311, 430683365, 9, -51, 205, 1, 6))
    assert tag.family is Family.SPORADIC_KNOWN
    assert classify(ThreeDigitSolution(5, 56, 1, 2, 1, 1, 5)).family is Family.UNKNOWN


def _grid():
    primes = [q for q in range(3, 200) if is_prime(q)]
    for q in primes:
        for t in range(1, q):
            if t * t > q - 1:
                break
            yield FamilyTag(Family.F2_Q2_MINUS_T, dict(q=q, t=t))
            yield FamilyTag(Family.F5_M_ZERO, dict(q=q, t=t))
            for d in (0, 1):
                for Y0 in range(1, q):
                    for m in (1, 2, 3, 5):
                        yield FamilyTag(Family.F1_SQUARE_PLUS, dict(q=q, t=t, Y0=Y0, m=m, delta=d))
                for q0 in range(1, q):
                    yield FamilyTag(Family.F3_KAPPA1, dict(q=q, t=t, q0=q0, delta=d))
                    yield FamilyTag(Family.F4_KAPPA2, dict(q=q, t=t, q0=q0, delta=d))
    for r in range(1, 15):
        yield FamilyTag(Family.F6_R2PLUS1, dict(r=r))
        yield FamilyTag(Family.F7_64R2PLUS1, dict(r=r))


def test_round_trip_grid():
    made = 0
    for tag in _grid():
        try:
            sol = generate(tag)
        except SideConditionError:
            continue
        made += 1
        assert sol.Y**2 == sol.t**2 + sol.M * sol.q**sol.m + sol.N * sol.q**sol.n
        back = classify(sol)
        assert back.family is tag.family and back.params == tag.params
        if tag.family is Family.F1_SQUARE_PLUS:
            assert sol.n == 2 * sol.m
        if tag.family in (Family.F3_KAPPA1, Family.F4_KAPPA2):
            assert (sol.m, sol.n) == (1, 2)
        if tag.family is Family.F2_Q2_MINUS_T:
            assert (sol.m, sol.n) == (2, 3)
    assert made > 1000


def test_corpus_contents():
    sols = {e.solution.astuple() for e in sporadic_corpus() if e.solution is not None}
    assert (5, 559, 1, -4, 4, 1, 7) in sols
    assert (7, 1815, 2, 1, 4, 2, 7) in sols
    assert (673, 6342918641, 25, -97, 433, 1, 6) in sols
    flagged = [e for e in sporadic_corpus() if e.c_nonsquare]
    assert {(e.q, e.Y) for e in flagged} == {(23, 45454), (131, 9730060), (367, 32330691)}
    assert len(sporadic_corpus()) == 10


def test_corpus_entries_are_not_family_members():
    for i, e in enumerate(sporadic_corpus()):
        if e.solution is not None:
            assert classify(e.solution) == FamilyTag(Family.SPORADIC_KNOWN, {"index": i})
            assert generate(FamilyTag(Family.SPORADIC_KNOWN, {"index": i})) == e.solution


def test_corrupt_corpus_detected():
    from importlib import resources

    raw = json.loads(resources.files("trisquare").joinpath("data/sporadic.json").read_text())
    assert len(load_corpus(json.dumps(raw))) == 10
    raw[0]["Y"] = str(int(raw[0]["Y"]) + 1)
    with pytest.raises(CorpusCorruptionError):
        load_corpus(json.dumps(raw))


@given(st.sampled_from([q for q in range(3, 400) if is_prime(q)]), st.integers(1, 19), st.integers(1, 6))
def test_f1_family_identity(q, t, m):
    if 2 * t > q or t * t >= q:
        return
    sol = generate(FamilyTag(Family.F1_SQUARE_PLUS, dict(q=q, t=t, Y0=1, m=m, delta=1)))
    assert classify(sol).family is Family.F1_SQUARE_PLUS
