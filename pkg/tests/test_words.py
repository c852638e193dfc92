import pytest
from hypothesis import given
from hypothesis import strategies as st

from growthlab.errors import AlphabetMismatchError, MalformedWordError
from growthlab.words import (
    Alphabet,
    cyclic_reduce,
    exponent_sums,
    free_reduce,
    inverse,
    is_cyclically_reduced,
    is_freely_reduced,
    shortlex_compare,
)

AB = Alphabet(("a", "b"))
GROUPED = Alphabet(("a", "b"), order="grouped")


def words(alphabet, max_size=30):
    return st.lists(st.integers(0, alphabet.size - 1), max_size=max_size).map(tuple)


def test_letter_order_interleaved():
    assert [AB.letter_name(x) for x in AB.letters] == ["a", "a'", "b", "b'"]


def test_letter_order_grouped():
    assert [GROUPED.letter_name(x) for x in GROUPED.letters] == ["a", "b", "a'", "b'"]


@pytest.mark.parametrize("alphabet", [AB, GROUPED, Alphabet(("x", "y", "z"))])
def test_involution(alphabet):
    for x in alphabet.letters:
        y = alphabet.inverse_letter(x)
        assert y != x
        assert alphabet.inverse_letter(y) == x


def test_parse_and_format_round_trip():
    w = AB.parse("a b' a' b")
    assert AB.format(w) == "a b' a' b"
    assert AB.parse("a⁻¹ b^-1") == AB.parse("a' b'")
    assert AB.parse("") == () == AB.parse("1")


def test_parse_rejects_unknown_letter():
    with pytest.raises(MalformedWordError):
        AB.parse("a c")


def test_check_rejects_out_of_range():
    with pytest.raises(MalformedWordError):
        AB.check((0, 4))


def test_bad_alphabets():
    with pytest.raises(MalformedWordError):
        Alphabet(("a", "a"))
    with pytest.raises(MalformedWordError):
        Alphabet(("1x",))
    with pytest.raises(ValueError):
        Alphabet(("a",), order="random")


@pytest.mark.parametrize(
    "text, expected",
    [("a a'", ""), ("a b b' a", "a a"), ("b a' a b", "b b")],
)
def test_free_reduce_examples(text, expected):
    assert AB.format(free_reduce(AB.parse(text), AB)) == expected


def test_free_reduce_rejects_foreign_letters():
    with pytest.raises(MalformedWordError):
        free_reduce((0, 9), AB)


def test_shortlex_examples():
    assert shortlex_compare((), AB.parse("a")) == -1
    assert shortlex_compare(AB.parse("a b"), AB.parse("a b")) == 0
    # b < a' when the order is a < b < a' < b'
    assert shortlex_compare(GROUPED.parse("b"), GROUPED.parse("a'")) == -1
    # under the default order a' comes first
    assert shortlex_compare(AB.parse("b"), AB.parse("a'")) == 1


def test_shortlex_mixed_alphabets():
    with pytest.raises(AlphabetMismatchError):
        shortlex_compare((0, 1), (7,), AB)


@given(words(AB))
def test_free_reduce_idempotent_and_reduced(w):
    r = free_reduce(w, AB)
    assert free_reduce(r, AB) == r
    assert is_freely_reduced(r, AB)
    assert len(r) <= len(w) and len(r) % 2 == len(w) % 2


@given(words(AB), words(AB))
def test_free_reduce_is_a_homomorphism(u, v):
    assert free_reduce(u + v, AB) == free_reduce(free_reduce(u, AB) + free_reduce(v, AB), AB)
    assert free_reduce(u + inverse(u, AB), AB) == ()


@given(words(AB), words(AB), words(AB))
def test_shortlex_is_a_strict_total_order(u, v, w):
    assert shortlex_compare(u, v) == -shortlex_compare(v, u)
    assert (shortlex_compare(u, v) == 0) == (u == v)
    if shortlex_compare(u, v) < 0 and shortlex_compare(v, w) < 0:
        assert shortlex_compare(u, w) < 0


@given(words(GROUPED))
def test_cyclic_reduce(w):
    c = cyclic_reduce(w, GROUPED)
    assert is_cyclically_reduced(c, GROUPED)
    assert exponent_sums(c, GROUPED) == exponent_sums(w, GROUPED)
