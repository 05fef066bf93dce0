import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from forbidwords.forks import all_forks, classify
from forbidwords.systems import (
    BudgetExceeded, InvalidSystem, System, decomposition_holds, enumerate_systems, from_word, generate,
    ordinary_runs, random_system, run_length_formula, shift_left, theta, verify_lemma_4_13,
    verify_majorization, verify_theorem_4_15,
)
from forbidwords.words import PeriodicWord, fibonacci

WORKED_WORD = "ababbabbabb" * 2 + "a"
S5 = System(5, {2: 4}, {2: 3})


def brute_systems(n):
    """Every valid system on 0..n found by trying all partial maps."""
    idx = range(2, n + 1)
    out = set()
    for m in range(0, (n - 2) // 2 + 1):
        for I in itertools.combinations(idx, m):
            for js in itertools.product(idx, repeat=m):
                for ks in itertools.product(idx, repeat=m):
                    try:
                        out.add(System(n, dict(zip(I, js)), dict(zip(I, ks))))
                    except InvalidSystem:
                        pass
    return out


@st.composite
def systems(draw, min_n=2, max_n=12):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_system(random.Random(seed), n)


def test_theta_examples():
    assert theta(System.empty(5), 5) == 3
    assert theta(S5, 4) == 1
    assert theta(S5, 3) == 0
    assert theta(S5, 2) == 1
    with pytest.raises(IndexError):
        theta(S5, 1)


def test_generate_examples():
    assert generate(System.empty(5)).values == (1, 2, 3, 5, 8, 13)
    assert generate(S5).values == (1, 2, 4, 5, 7, 12)
    assert generate(System.empty(5), 1, 0).values == (1, 0, 1, 1, 2, 3)
    assert generate(System.empty(0)).values == (1,)
    assert generate(System.empty(1)).values == (1, 2)


@pytest.mark.parametrize("psi,pi", [
    ({2: 3}, {2: 3}),        # pi not below psi
    ({2: 4}, {2: 2}),        # pi not above i
    ({2: 5, 3: 5}, {2: 4, 3: 4}),  # psi not injective
    ({2: 5}, {}),            # domains differ
    ({2: 9}, {2: 3}),        # outside 2..n
    ({2: 6, 3: 5}, {2: 3, 3: 4}),  # 3 is both exceptional and fine
])
def test_invalid_systems(psi, pi):
    with pytest.raises(InvalidSystem):
        System(6, psi, pi)


def test_roles_and_maps():
    assert (S5.I, S5.J, S5.K) == ({2}, {4}, {3})
    assert S5.d == {3: 2} and S5.bad == {2}
    assert [S5.role(r) for r in range(2, 6)] == ["exceptional", "fine", "penalty", "ordinary"]


def test_json_roundtrip():
    S = System(9, {2: 6, 4: 9}, {2: 3, 4: 7})
    assert System.from_dict(S.to_dict()) == S
    assert S.to_dict()["psi"] == {"2": 6, "4": 9}
    bad = S.to_dict()
    bad["K"] = [3]
    with pytest.raises(InvalidSystem):
        System.from_dict(bad)


def test_from_word_small():
    S = from_word(PeriodicWord("aab"))
    assert S == System.empty(2)
    assert generate(S).values == (1, 2, 3)
    assert verify_majorization(PeriodicWord("aab")).data["z"] == [1, 2, 3]


def test_from_word_worked_instance_majorized():
    assert verify_majorization(PeriodicWord(WORKED_WORD)).ok


@pytest.mark.xfail(strict=True, reason="this period has no exceptional fork")
def test_from_word_worked_instance_nonempty():
    assert from_word(PeriodicWord(WORKED_WORD)).I


def test_from_word_exceptional_family():
    for m in (2, 3, 4):
        W = PeriodicWord("aababababb" * m + "ab")
        S = from_word(W)
        assert S.I and verify_majorization(W).ok
        t = classify(all_forks(W))
        assert all(z <= y for z, y in zip(t.z, generate(S).values))


def test_run_length_examples():
    y = generate(System.empty(5))
    assert run_length_formula(y, 2, 3) == 13 == y[5]
    assert run_length_formula(y, 3, -1) == y[2]
    assert run_length_formula(y, 4, 0) == y[3] + y[2]
    with pytest.raises(ValueError):
        run_length_formula(generate(S5), 2, 1)


def test_run_length_on_every_prefix_of_every_run():
    for n in range(2, 9):
        for S in enumerate_systems(n):
            y = generate(S)
            for k, t in ordinary_runs(S):
                for s in range(-1, t + 1):
                    assert run_length_formula(y, k, s) == y[k + s]


def test_ordinary_runs():
    assert ordinary_runs(System.empty(5)) == [(2, 3)]
    assert ordinary_runs(S5) == [(5, 0)]
    assert ordinary_runs(System.empty(1)) == []


def test_shift_left_examples():
    assert shift_left(System.empty(5)) == System.empty(4)
    assert shift_left(System(6, {3: 5}, {3: 4})) == System(5, {2: 4}, {2: 3})
    with pytest.raises(InvalidSystem):
        shift_left(S5)


@settings(max_examples=200, deadline=None)
@given(systems(min_n=3), st.integers(0, 50), st.integers(0, 50))
def test_shift_left_continues_the_tail(S, a, b):
    if 2 in S.L:
        return
    assert generate(shift_left(S), b, a + b).values == generate(S, a, b).values[1:]


@settings(max_examples=200, deadline=None)
@given(systems(), st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
def test_generate_is_linear(S, a, b, c, d):
    lhs = generate(S, a + c, b + d).values
    assert lhs == tuple(x + y for x, y in zip(generate(S, a, b).values, generate(S, c, d).values))


@settings(max_examples=200, deadline=None)
@given(systems(), st.integers(0, 30), st.integers(0, 60))
def test_decomposition(S, a, b):
    assert decomposition_holds(S, a, b)


def test_enumeration_matches_brute_force():
    for n in range(2, 8):
        listed = list(enumerate_systems(n))
        assert listed[0] == System.empty(n)
        assert len(set(listed)) == len(listed)
        assert set(listed) == brute_systems(n), n


@pytest.mark.parametrize("n,best", [(2, 3), (4, 8), (7, 34)])
def test_theorem_4_15_examples(n, best):
    rep = verify_theorem_4_15(n)
    assert rep.ok and rep.data["max_yn"] == best == fibonacci(n + 1)


def test_only_empty_system_at_small_n():
    for n in (2, 3):
        assert list(enumerate_systems(n)) == [System.empty(n)]
    assert len(list(enumerate_systems(4))) > 1


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded, match="budget exceeded"):
        verify_theorem_4_15(12)
    with pytest.raises(BudgetExceeded):
        verify_theorem_4_15(8, budget=10)


def test_lemma_4_13_examples():
    assert generate(System.empty(5)).last == 13 >= generate(S5).last == 12
    assert verify_lemma_4_13(S5, 1, 2)
    assert verify_lemma_4_13(S5, 1, 1)
    with pytest.raises(ValueError):
        verify_lemma_4_13(S5, 1, 3)


def test_lemma_4_13_random():
    rng = random.Random(11)
    checked = 0
    while checked < 500:
        S = random_system(rng, rng.randint(4, 12))
        if len(S.K) != 1:
            continue
        a = rng.randint(0, 40)
        b = rng.randint(a, 2 * a)
        assert verify_lemma_4_13(S, a, b)
        checked += 1
