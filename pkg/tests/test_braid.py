"""Braid words: parsing, serialization, free reduction, essential detection,
and the induced automorphisms of the free group."""

from __future__ import annotations

import random

import pytest

from krampoly.braid import BraidWord, FreeGroupWord, rho
from krampoly.errors import IndexOutOfRange, ParseError


def test_parse_s_form():
    w = BraidWord.parse("s1 s2 s1", 3)
    assert w.letters == (1, 2, 1)
    assert w.strands == 3
    assert BraidWord.parse("s2^4", 3).letters == (2, 2, 2, 2)
    assert BraidWord.parse("s1^-2", 3).letters == (-1, -1)
    assert BraidWord.parse("s1^0", 3).letters == ()
    assert BraidWord.parse("", 4).letters == ()


def test_parse_integer_form():
    assert BraidWord.parse("1 -2 1", 3).letters == (1, -2, 1)
    assert BraidWord.parse("+3", 4).letters == (3,)


def test_parse_errors():
    with pytest.raises(ParseError):
        BraidWord.parse("sigma1", 3)
    with pytest.raises(ParseError):
        BraidWord.parse("s1^", 3)
    with pytest.raises(ParseError):
        BraidWord.parse("x2", 3)
    with pytest.raises(IndexOutOfRange):
        BraidWord.parse("s3", 3)  # B_3 has generators s1, s2 only
    with pytest.raises(IndexOutOfRange):
        BraidWord.parse("s0", 3)
    with pytest.raises(IndexOutOfRange):
        BraidWord.parse("0", 3)
    with pytest.raises(IndexOutOfRange):
        BraidWord(3, (1, 5))
    with pytest.raises(IndexOutOfRange):
        BraidWord(1, ())


def test_to_text_collapses_runs():
    w = BraidWord(3, (1, 2, 2, 2, 2, 1, -2, -2))
    assert w.to_text() == "s1 s2^4 s1 s2^-2"
    assert BraidWord(3, ()).to_text() == ""
    assert BraidWord(4, (-3,)).to_text() == "s3^-1"


def test_text_round_trip():
    rng = random.Random(61)
    for _ in range(100):
        n = rng.randint(2, 6)
        letters = tuple(
            rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 12))
        )
        w = BraidWord(n, letters)
        assert BraidWord.parse(w.to_text(), n) == w


def test_mul_pow_inverse():
    a = BraidWord.parse("s1 s2", 3)
    b = BraidWord.parse("s2^-1", 3)
    assert (a * b).letters == (1, 2, -2)
    assert (a**3).letters == (1, 2) * 3
    assert (a**0).letters == ()
    assert a.inverse().letters == (-2, -1)
    assert (a**-2) == (a.inverse()) ** 2
    with pytest.raises(IndexOutOfRange):
        a * BraidWord.parse("s1", 4)


def test_free_reduce():
    w = BraidWord(3, (1, 2, -2, -1, 1))
    assert w.free_reduce().letters == (1,)
    assert (w * w.inverse()).free_reduce().letters == ()
    r = w.free_reduce()
    assert r.free_reduce() == r


def test_support_and_essential():
    w = BraidWord.parse("s1 s3 s1^-1", 5)
    assert w.generator_support() == {1, 3}
    assert w.missing_generators() == [2, 4]
    assert w.is_essential()
    full = BraidWord.parse("s1 s2 s3 s4", 5)
    assert not full.is_essential()
    assert full.missing_generators() == []
    # support is taken on the raw word, before any cancellation
    cancelling = BraidWord.parse("s1 s2 s2^-1", 3)
    assert not cancelling.is_essential()


def test_action_of_single_positive_letter():
    a1, a2, a3 = BraidWord.parse("s1", 3).act_on_free_group()
    assert a1.letters == (1, 2, -1)
    assert a2.letters == (1,)
    assert a3.letters == (3,)


def test_action_of_single_negative_letter():
    a1, a2, a3 = BraidWord.parse("s1^-1", 3).act_on_free_group()
    assert a1.letters == (2,)
    assert a2.letters == (-2, 1, 2)
    assert a3.letters == (3,)


def test_action_of_middle_letter_leaves_ends_alone():
    images = BraidWord.parse("s2", 4).act_on_free_group()
    assert images[0].letters == (1,)
    assert images[1].letters == (2, 3, -2)
    assert images[2].letters == (2,)
    assert images[3].letters == (4,)


def test_action_composes_left_to_right():
    # under s1 then s2: a1 -> a1 a2 a1^-1 -> a1 (a2 a3 a2^-1) a1^-1
    images = BraidWord.parse("s1 s2", 3).act_on_free_group()
    assert images[0].letters == (1, 2, 3, -2, -1)
    assert images[1].letters == (1,)
    assert images[2].letters == (2,)


def test_braid_relations_act_identically():
    lhs = BraidWord.parse("s1 s2 s1", 3).act_on_free_group()
    rhs = BraidWord.parse("s2 s1 s2", 3).act_on_free_group()
    assert lhs == rhs
    lhs = BraidWord.parse("s1 s3", 4).act_on_free_group()
    rhs = BraidWord.parse("s3 s1", 4).act_on_free_group()
    assert lhs == rhs


def test_inverse_letter_undoes_action():
    rng = random.Random(67)
    for _ in range(50):
        n = rng.randint(2, 5)
        letters = tuple(
            rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(1, 8))
        )
        w = BraidWord(n, letters)
        images = (w * w.inverse()).act_on_free_group()
        assert [im.letters for im in images] == [(j,) for j in range(1, n + 1)]


def test_images_are_conjugates_of_generators():
    rng = random.Random(71)
    for _ in range(60):
        n = rng.randint(2, 6)
        letters = tuple(
            rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 10))
        )
        for image in BraidWord(n, letters).act_on_free_group():
            assert image.is_conjugate_of_generator()


def test_rho_is_fixed_200_random_words():
    rng = random.Random(73)
    for _ in range(200):
        n = rng.randint(2, 6)
        letters = tuple(
            rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 12))
        )
        images = BraidWord(n, letters).act_on_free_group()
        product = FreeGroupWord(())
        for image in images:
            product = product * image
        assert product == rho(n)


def test_rho():
    assert rho(3).letters == (1, 2, 3)
    assert str(rho(2)) == "a1 a2"


def test_free_group_word_reduces():
    w = FreeGroupWord((1, 2, -2, -1, 3))
    assert w.letters == (3,)
    assert FreeGroupWord((1, -1)).is_identity()
    assert len(FreeGroupWord((2, 2, -1))) == 3
    with pytest.raises(IndexOutOfRange):
        FreeGroupWord((0,))


def test_free_group_word_group_ops():
    u = FreeGroupWord((1, 2))
    v = FreeGroupWord((-2, 3))
    assert (u * v).letters == (1, 3)
    assert (u * u.inverse()).is_identity()
    assert u.inverse().letters == (-2, -1)
    assert FreeGroupWord.generator(4).letters == (4,)


def test_conjugate_of_generator_shape():
    assert FreeGroupWord((1, 2, -1)).is_conjugate_of_generator()
    assert FreeGroupWord((2,)).is_conjugate_of_generator()
    assert FreeGroupWord((-3, -1, 2, 1, 3)).is_conjugate_of_generator()
    assert not FreeGroupWord(()).is_conjugate_of_generator()  # even length
    assert not FreeGroupWord((1, -2, -1)).is_conjugate_of_generator()  # negative middle
    assert not FreeGroupWord((2, 1, -3)).is_conjugate_of_generator()  # not a palindrome
    assert not FreeGroupWord((1, 2)).is_conjugate_of_generator()


def test_free_group_word_str():
    assert str(FreeGroupWord((1, -2))) == "a1 a2^-1"
    assert str(FreeGroupWord(())) == "1"


def test_braid_to_json():
    w = BraidWord.parse("s1 s2^4 s1", 3)
    assert w.to_json() == {"strands": 3, "word": "s1 s2^4 s1"}
