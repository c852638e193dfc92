import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from growthlab.catalog import load_group
from growthlab.fingerprint import PRIME, Fingerprint, hermite_rows, surface_representation
from growthlab.words import Alphabet

ABCD = Alphabet(("a", "b", "c", "d"))
R = ABCD.parse("a b a' b' c d c' d'")


def mat_of(rep, w):
    m = (1, 0, 0, 1)
    for x in w:
        a = rep[x]
        m = (
            (m[0] * a[0] + m[1] * a[2]) % PRIME,
            (m[0] * a[1] + m[1] * a[3]) % PRIME,
            (m[2] * a[0] + m[3] * a[2]) % PRIME,
            (m[2] * a[1] + m[3] * a[3]) % PRIME,
        )
    return m


def test_surface_representation_kills_the_relator():
    for seed in range(5):
        rep = surface_representation(R, ABCD, seed)
        assert mat_of(rep, R) == (1, 0, 0, 1)
        for x in ABCD.letters:
            assert mat_of(rep, (x, ABCD.inverse_letter(x))) == (1, 0, 0, 1)
            a = rep[x]
            assert (a[0] * a[3] - a[1] * a[2]) % PRIME == 1
        # the image is not abelian
        assert mat_of(rep, ABCD.parse("a b")) != mat_of(rep, ABCD.parse("b a"))


def test_hermite_rows():
    assert hermite_rows([[2, 0], [0, 3]], 2) == [[2, 0], [0, 3]]
    assert hermite_rows([[0, 0]], 2) == []
    assert hermite_rows([[4, 6], [2, 4]], 2) == [[2, 0], [0, 2]]


def test_abelian_reduction_for_finite_quotients():
    p = load_group("c2c3")
    fp = Fingerprint.for_presentation(p.alphabet, p.relators, False)
    assert fp.of_word(p.parse("a a")).tolist() == fp.identity().tolist()
    assert fp.of_word(p.parse("b b b b")).tolist() == fp.of_word(p.parse("b")).tolist()
    assert fp.of_word(p.parse("b'")).tolist() == fp.of_word(p.parse("b b")).tolist()


SURFACE_FP = Fingerprint.for_presentation(ABCD, [R], True)
WORDS = st.lists(st.integers(0, 7), max_size=12).map(tuple)


@settings(max_examples=80, deadline=None)
@given(WORDS, WORDS)
def test_rows_and_products_agree_with_single_words(u, v):
    fp = SURFACE_FP
    a, b = fp.of_word(u), fp.of_word(v)
    assert fp.multiply(a[None, :], b[None, :])[0].tolist() == fp.of_word(u + v).tolist()
    rows = np.array([u + v], dtype=np.uint8).reshape(1, len(u + v))
    assert fp.of_rows(rows)[0].tolist() == fp.of_word(u + v).tolist()
    assert fp.act(a[None, :], 3)[0].tolist() == fp.of_word(u + (3,)).tolist()
