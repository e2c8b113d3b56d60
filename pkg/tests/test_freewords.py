import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hslink.braid import BraidWord
from hslink.errors import MalformedWordError, NotPureBraidError, RankMismatchError
from hslink.freewords import (
    FreeWord,
    artin_apply,
    artin_image,
    commutator,
    extract_conjugator,
    format_word,
    invert,
    kill_generator,
    multiply,
    parse_word,
    reduce,
)

import oracle
from helpers import random_pure


def W(*letters, rank=3):
    return FreeWord(rank, tuple(letters))


raw_letters = st.lists(st.integers(1, 3).flatmap(lambda i: st.sampled_from([i, -i])), max_size=30)


def test_reduce_examples():
    assert reduce([(1, 1), (1, -1)], 2) == FreeWord(2)
    assert reduce([(1, 1), (2, 1), (2, -1), (1, 1)], 2).letters == ((1, 1), (1, 1))
    assert reduce([(2, -1), (1, 1), (1, -1), (2, 1)], 2) == FreeWord(2)


def test_reduce_rejects_bad_index():
    with pytest.raises(MalformedWordError):
        reduce([(3, 1)], 2)
    with pytest.raises(MalformedWordError):
        FreeWord(2, (1, -1))


def test_group_examples():
    assert multiply(W(1), W(-1)) == FreeWord(3)
    assert invert(W(1, 2)) == W(-2, -1)
    assert multiply(W(1, 2), W(-2, 3)) == W(1, 3)
    with pytest.raises(RankMismatchError):
        multiply(FreeWord(2, (1,)), FreeWord(3, (1,)))


def test_artin_examples():
    assert artin_apply(1, 1, W(1)) == W(1, 2, -1)
    assert artin_apply(1, 1, W(3)) == W(3)
    assert artin_image(BraidWord(2, ((1, 1), (1, 1))), 2) == FreeWord(2, (1, 2, -1))
    assert artin_image(BraidWord(2, ((1, 1),)), 2) == FreeWord(2, (1,))
    assert artin_image(BraidWord(3), 2) == W(2)
    with pytest.raises(MalformedWordError):
        artin_apply(3, 1, W(1))


def test_extract_conjugator_examples():
    assert extract_conjugator(W(2), 2) == FreeWord(3)
    assert extract_conjugator(W(1, 2, -1), 2) == W(1)
    with pytest.raises(NotPureBraidError):
        extract_conjugator(W(2), 1)
    with pytest.raises(NotPureBraidError):
        extract_conjugator(W(1, 2, 1), 2)


def test_format_roundtrip():
    w = W(1, -2, 3)
    assert format_word(w) == "x1 x2^-1 x3"
    assert parse_word(format_word(w), 3) == w
    assert format_word(FreeWord(3)) == "1"


@given(raw_letters, st.randoms(use_true_random=False))
def test_reduction_confluent(raw, rnd):
    # cancel adjacent inverse pairs in random order until none remain
    word = list(raw)
    while True:
        sites = [p for p in range(len(word) - 1) if word[p] == -word[p + 1]]
        if not sites:
            break
        p = rnd.choice(sites)
        del word[p:p + 2]
    assert reduce(raw, 3).word == tuple(word)
    assert len(reduce(raw, 3)) <= len(raw)
    assert reduce(reduce(raw, 3).word, 3) == reduce(raw, 3)


@given(raw_letters, raw_letters, st.integers(1, 2), st.sampled_from([1, -1]))
def test_artin_apply_is_automorphism(a, b, k, s):
    a, b = reduce(a, 3), reduce(b, 3)
    assert artin_apply(k, s, a * b) == artin_apply(k, s, a) * artin_apply(k, s, b)
    assert artin_apply(k, -s, artin_apply(k, s, a)) == a


@given(raw_letters)
def test_group_axioms(a):
    a = reduce(a, 3)
    assert a * ~a == FreeWord(3)
    assert ~~a == a


@given(st.sampled_from([1, -1]))
def test_braid_relations_in_representation(s):
    n = 4
    for k in (1, 2):
        lhs = BraidWord(n, ((k, s), (k + 1, s), (k, s)))
        rhs = BraidWord(n, ((k + 1, s), (k, s), (k + 1, s)))
        for i in range(1, n + 1):
            assert artin_image(lhs, i) == artin_image(rhs, i)
    far1 = BraidWord(n, ((1, s), (3, 1)))
    far2 = BraidWord(n, ((3, 1), (1, s)))
    for i in range(1, n + 1):
        assert artin_image(far1, i) == artin_image(far2, i)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 4))
def test_pure_images_are_conjugates_and_match_oracle(seed, n):
    b = random_pure(random.Random(seed), n, 8)
    images = oracle.artin_images(n, list(b.letters))
    for i in range(1, n + 1):
        w = artin_image(b, i)
        assert list(w.word) == images[i]
        extract_conjugator(w, i)


def test_commutator_and_kill():
    c = commutator(W(1), W(2))
    assert c == W(1, 2, -1, -2)
    assert kill_generator(c, 1) == FreeWord(3)
    assert kill_generator(W(2, 1, -2, 3), 1) == W(3)
