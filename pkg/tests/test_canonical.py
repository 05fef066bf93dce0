import random

import pytest
from hypothesis import given, settings, strategies as st

from forbidwords.canonical import (
    DEFINES, MULTIPLE_WORDS, NO_WORD, BudgetExceeded, canonical_system, check_minimality_tiny, defines,
    dumps_system, is_antichain, loads_system, satisfies, sorted_system, transfer_graph, trim, verify_prop_2_4,
)
from forbidwords.extremal import gen_extremal
from forbidwords.words import PeriodicWord, least_rotation
from oracles import naive_factor, naive_mfw, primitive_words, words

small_system = st.lists(st.text(alphabet="ab", min_size=1, max_size=4), max_size=4)


def avoiding_classes(V, max_period=8):
    """Rotation classes of primitive periods whose periodic word avoids every word of V."""
    out = set()
    for u in primitive_words(max_period):
        if not any(naive_factor(u, v) for v in V):
            out.add(least_rotation(u))
    return out


def test_satisfies_examples():
    assert satisfies("abab", {"aa", "bb"})
    assert not satisfies("aab", {"aa", "bb"})
    assert not satisfies("abba", {"", "aaa"})


@pytest.mark.parametrize("u,expected", [("ab", {"aa", "bb"}), ("aab", {"bb", "aaa", "bab"})])
def test_canonical_examples(u, expected):
    assert canonical_system(PeriodicWord(u)) == expected


def test_canonical_extremal_sizes():
    assert len(canonical_system(PeriodicWord("aabab"))) == 4
    assert len(canonical_system(PeriodicWord(gen_extremal(2).s))) == 5


def test_single_letter_period():
    assert canonical_system(PeriodicWord("a")) == {"b"}
    assert defines({"b"}).word == PeriodicWord("a")


def test_canonical_matches_brute_force():
    # minimal forbidden words are searched well past the |u| + 1 cut-off
    for u in primitive_words(8):
        C = canonical_system(PeriodicWord(u))
        assert C == naive_mfw(u, min(2 * len(u) + 2, 12)), u
        assert is_antichain(C)


def test_longer_scan_adds_nothing():
    for u in primitive_words(11, min_len=9):
        W = PeriodicWord(u)
        assert canonical_system(W) == canonical_system(W, max_length=2 * len(u) + 2)


def test_serialization_roundtrip():
    C = canonical_system(PeriodicWord("aabab"))
    text = dumps_system(C)
    assert loads_system(text) == C
    assert sorted_system(C) == sorted(C, key=lambda w: (len(w), w))
    assert dumps_system({"bab", "aaa", "bb"}) == '["bb", "aaa", "bab"]'
    with pytest.raises(ValueError):
        loads_system('{"a": 1}')
    with pytest.raises(ValueError):
        loads_system('["abc"]')


@pytest.mark.parametrize("V,word", [({"aa", "bb"}, "ab"), ({"bb", "aaa", "bab"}, "aab"), ({"a"}, "b")])
def test_defines_examples(V, word):
    res = defines(V)
    assert res.outcome == DEFINES
    assert res.word.same_word(PeriodicWord(word))


def test_defines_degenerate_systems():
    assert defines({"aa"}).outcome == MULTIPLE_WORDS
    assert defines([]).outcome == MULTIPLE_WORDS
    assert defines([""]).outcome == NO_WORD
    assert defines({"a", "b"}).outcome == NO_WORD
    assert defines({"ab", "ba", "aa", "bb"}).outcome == NO_WORD
    assert defines({"aa"}).to_dict() == {"outcome": "multiple_words", "word": None, "witnesses": ["b", "ab"]}


@settings(max_examples=300, deadline=None)
@given(small_system)
def test_defines_matches_periodic_oracle(V):
    # forbidden words of length <= 4 give simple cycles of length <= 8, so
    # the avoiding periods up to 8 decide the outcome exactly
    res = defines(V)
    found = avoiding_classes(V)
    if not found:
        assert res.outcome == NO_WORD
    elif len(found) == 1:
        assert res.outcome == DEFINES
        assert res.word.period == found.pop()
    else:
        assert res.outcome == MULTIPLE_WORDS
        assert len(res.witnesses) == 2
        assert {w.period for w in res.witnesses} <= found


def test_canonical_system_defines_its_word():
    for u in primitive_words(10):
        W = PeriodicWord(u)
        res = defines(canonical_system(W))
        assert res.outcome == DEFINES and res.word.same_word(W), u


@settings(max_examples=100, deadline=None)
@given(small_system, st.randoms(use_true_random=False))
def test_trim_order_independent(V, rnd):
    succ = transfer_graph(V)
    order = list(succ)
    rnd.shuffle(order)
    assert trim(succ, order) == trim(succ)


def test_trim_drops_dead_ends():
    succ = {"a": ["b"], "b": ["a", "c"], "c": []}
    assert trim(succ) == {"a", "b"}


@pytest.mark.parametrize("u,L", [("aab", 5), ("ab", 4), (gen_extremal(3).t, 8)])
def test_prop_2_4_examples(u, L):
    assert verify_prop_2_4(PeriodicWord(u), L)


def test_prop_2_4_against_exhaustive_scan():
    for u in primitive_words(7):
        C = canonical_system(PeriodicWord(u))
        for n in range(len(u) + 3):
            for w in words(n):
                assert naive_factor(u, w) == (not any(v in w for v in C)), (u, w)


def test_minimality_examples():
    assert check_minimality_tiny(PeriodicWord("ab"), 2)
    assert check_minimality_tiny(PeriodicWord("aab"), 3)
    assert check_minimality_tiny(PeriodicWord("ab"), 1)


def test_minimality_budget():
    with pytest.raises(BudgetExceeded, match="budget exceeded"):
        check_minimality_tiny(PeriodicWord("aabab"), 6, budget=100)


def test_defines_is_symmetric_under_letter_swap():
    rng = random.Random(7)
    for _ in range(50):
        V = {"".join(rng.choice("ab") for _ in range(rng.randint(1, 4))) for _ in range(rng.randint(1, 4))}
        a, b = defines(V), defines({w.translate(str.maketrans("ab", "ba")) for w in V})
        assert a.outcome == b.outcome
