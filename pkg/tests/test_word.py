import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import free_words, raw_letters
from vklab.word import (
    FreeEndomorphism,
    FreeWord,
    apply,
    cyclic_reduce,
    invert,
    multiply,
    parse_word,
    reduce,
)


def naive_reduce(letters):
    """Oracle: delete the first cancelling pair until none is left."""
    w = list(letters)
    i = 0
    while i < len(w) - 1:
        if w[i] == -w[i + 1]:
            del w[i:i + 2]
            i = 0
        else:
            i += 1
    return tuple(w)


def naive_apply(images, letters):
    """Oracle: substitute every letter, then reduce once at the end."""
    out = []
    for a in letters:
        im = images[abs(a) - 1]
        out += list(im) if a > 0 else [-x for x in reversed(im)]
    return naive_reduce(out)


def test_reduce_examples():
    assert reduce([(1, 1), (1, -1)], 2).letters == ()
    assert reduce([(1, 1), (2, 1), (2, -1), (1, 1)], 2).letters == (1, 1)
    assert reduce([(2, 1), (1, 1), (2, -1)], 2).letters == (2, 1, -2)


def test_reduce_rejects_out_of_range():
    with pytest.raises(IndexError):
        reduce([(3, 1)], 2)
    with pytest.raises(ValueError):
        reduce([(1, 2)], 2)


def test_multiply_invert_cyclic_examples():
    x1, x2 = FreeWord.generator(2, 1), FreeWord.generator(2, 2)
    assert multiply(x1, invert(x1)).letters == ()
    assert invert(x1 * x2) == parse_word("x2^-1 x1^-1", 2)
    assert cyclic_reduce(parse_word("x1 x2 x1^-1", 2)) == x2


def test_rank_mismatch():
    with pytest.raises(ValueError):
        multiply(FreeWord(1, (1,)), FreeWord(2, (1,)))


def test_text_roundtrip():
    w = parse_word("x1 x2^-1 x3^2", 3)
    assert w.letters == (1, -2, 3, 3)
    assert str(w) == "x1 x2^-1 x3 x3"
    assert parse_word(str(w), 3) == w
    assert parse_word("1", 3).letters == ()
    with pytest.raises(ValueError):
        parse_word("y1", 3)


def test_apply_example():
    e = FreeEndomorphism(2, (parse_word("x2", 2), parse_word("x2 x1 x2^-1", 2)))
    assert apply(e, parse_word("x1 x2", 2)) == parse_word("x2 x2 x1 x2^-1", 2)
    w = parse_word("x1 x2 x1^-1 x2^-1 x1", 2)
    images = [im.letters for im in e.images]
    assert apply(e, w).letters == naive_apply(images, w.letters)


def test_apply_identity():
    e = FreeEndomorphism.identity(3)
    w = parse_word("x1 x3^-1 x2", 3)
    assert apply(e, w) == w and e.is_identity()


@given(raw_letters(3, 20))
def test_reduce_matches_oracle_and_is_idempotent(ls):
    w = FreeWord(3, tuple(ls))
    assert w.letters == naive_reduce(ls)
    assert FreeWord(3, w.letters) == w
    assert len(w) <= len(ls)


@given(free_words(3), free_words(3), free_words(3))
def test_associativity(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert u * u.inverse() == FreeWord.identity(3)


@given(st.lists(free_words(3, 4), min_size=3, max_size=3), free_words(3), free_words(3))
def test_apply_is_homomorphism(ims, u, v):
    e = FreeEndomorphism(3, tuple(ims))
    assert apply(e, u * v) == apply(e, u) * apply(e, v)
    assert apply(e, u.inverse()) == apply(e, u).inverse()
    assert apply(e, u).letters == naive_apply([im.letters for im in ims], u.letters)


@given(free_words(3))
def test_cyclic_reduce_is_conjugate(w):
    c = cyclic_reduce(w)
    if c.letters:
        assert c.letters[0] != -c.letters[-1] or len(c) == 1
    # w = p c p^-1 for the stripped prefix p
    k = (len(w) - len(c)) // 2
    p = FreeWord(3, w.letters[:k])
    assert p * c * p.inverse() == w
