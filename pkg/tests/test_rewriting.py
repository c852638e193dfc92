import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from growthlab.catalog import CATALOG, load_group
from growthlab.errors import CompletionDivergedError
from growthlab.rewriting import (
    is_confluent,
    is_interreduced,
    kb_complete,
    normal_form,
    rewrite_steps,
    unresolved_critical_pairs,
)
from growthlab.words import Alphabet, inverse, shortlex_key

AB = Alphabet(("a", "b"))
KB_KEYS = [k for k in CATALOG if load_group(k).rewriting is not None]


def rules_text(rs):
    return sorted(rs.format_rules())


def test_free_group_has_only_cancellations():
    rs = kb_complete(AB, [])
    assert rules_text(rs) == sorted(["a a' -> ε", "a' a -> ε", "b b' -> ε", "b' b -> ε"])
    assert rs.origin == "builtin"


def test_order_two_generator():
    a = Alphabet(("a",))
    rs = kb_complete(a, [a.parse("a a")])
    assert rules_text(rs) == ["a a -> ε", "a' -> a"]


def test_c2c3_system(backend):
    rs = load_group("c2c3").rewriting
    assert rules_text(rs) == sorted(
        ["a a -> ε", "a' -> a", "b b -> b'", "b b' -> ε", "b' b -> ε", "b' b' -> b"]
    )
    assert AB.format(normal_form(AB.parse("b b"), rs)) == "b'"


def test_z2_system_collects_b_past_a(backend):
    rs = load_group("z2").rewriting
    assert len(rs.rules) == 8
    assert AB.format(normal_form(AB.parse("b a"), rs)) == "a b"
    assert AB.format(normal_form(AB.parse("b' a' b a"), rs)) == ""
    assert is_confluent(rs)


@pytest.mark.parametrize("key", KB_KEYS)
def test_shipped_systems_are_confluent_and_interreduced(key):
    rs = load_group(key).rewriting
    assert unresolved_critical_pairs(rs) == []
    assert is_interreduced(rs)
    for lhs, rhs in rs.rules:
        assert shortlex_key(rhs) < shortlex_key(lhs)


def test_surface_group_completion_hits_the_cap():
    a = Alphabet(("a", "b", "c", "d"))
    with pytest.raises(CompletionDivergedError):
        kb_complete(a, [a.parse("a b a' b' c d c' d'")], max_rules=200, max_lhs_len=10)


def test_limits_must_be_positive():
    with pytest.raises(ValueError):
        kb_complete(AB, [], max_rules=0)


@pytest.mark.parametrize("key", KB_KEYS)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_normal_form_properties(key, data):
    p = load_group(key)
    rs = p.rewriting
    letters = st.integers(0, p.alphabet.size - 1)
    u = tuple(data.draw(st.lists(letters, max_size=40)))
    v = tuple(data.draw(st.lists(letters, max_size=12)))
    nf = normal_form(u, rs)
    assert normal_form(nf, rs) == nf
    assert len(nf) <= len(u)
    # u and u v v^-1 represent the same element
    assert normal_form(u + v + inverse(v, p.alphabet), rs) == nf
    assert normal_form(u + inverse(u, p.alphabet), rs) == ()
    assert 0 <= rewrite_steps(u, rs) <= len(u) * (len(u) + 1)


@pytest.mark.parametrize("key", KB_KEYS)
def test_both_backends_agree(key):
    import random

    from growthlab import kernels

    backends = kernels.available_backends()
    rs = load_group(key).rewriting
    rng = random.Random(5)
    for _ in range(300):
        w = bytes(rng.randrange(rs.alphabet.size) for _ in range(rng.randrange(41)))
        results = {name: impl.reduce_word(w, rs.trie) for name, impl in backends.items()}
        assert len(set(results.values())) == 1
