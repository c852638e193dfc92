"""Dehn's algorithm for small-cancellation presentations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import kernels
from .trie import SuffixTrie
from .words import Alphabet, Word, cyclic_conjugates, inverse


def symmetrized(relators: Sequence[Word], alphabet: Alphabet) -> list[Word]:
    """All cyclic conjugates of every relator and of its inverse, deduplicated."""
    seen: dict[Word, None] = {}
    for r in relators:
        for c in cyclic_conjugates(r) + cyclic_conjugates(inverse(r, alphabet)):
            seen.setdefault(c, None)
    return list(seen)


def _common_prefix(u: Word, v: Word) -> int:
    n = 0
    for x, y in zip(u, v):
        if x != y:
            break
        n += 1
    return n


def max_piece_ratio(relators: Sequence[Word], alphabet: Alphabet) -> Fraction:
    """Largest ``|piece| / |r|`` over pieces ``piece`` that prefix two distinct symmetrized relators ``r``."""
    sym = symmetrized(relators, alphabet)
    worst = Fraction(0)
    for i, r1 in enumerate(sym):
        for r2 in sym[i + 1 :]:
            p = _common_prefix(r1, r2)
            if p:
                worst = max(worst, Fraction(p, len(r1)), Fraction(p, len(r2)))
    return worst


def satisfies_c_prime(relators: Sequence[Word], alphabet: Alphabet, bound: Fraction = Fraction(1, 6)) -> bool:
    """Metric small cancellation: every piece is strictly shorter than ``bound`` times its relator."""
    return max_piece_ratio(relators, alphabet) < bound


def is_surface_relator(relator: Word, alphabet: Alphabet) -> bool:
    """True when ``relator`` is ``[x1, y1] ... [xg, yg]`` using each generator exactly once."""
    n = len(relator)
    if n == 0 or n % 4 or n // 2 != alphabet.rank:
        return False
    used = set()
    for i in range(0, n, 4):
        x, y, xi, yi = relator[i : i + 4]
        if xi != alphabet.inverse_letter(x) or yi != alphabet.inverse_letter(y):
            return False
        gx, gy = alphabet.generator_of(x)[0], alphabet.generator_of(y)[0]
        if gx == gy:
            return False
        used.update((gx, gy))
    return len(used) == alphabet.rank


@dataclass(frozen=True)
class DehnRules:
    """Replacement rules: more than half of a relator goes to the inverse of the rest."""

    alphabet: Alphabet
    relators: tuple[Word, ...]

    @cached_property
    def rules(self) -> tuple[tuple[Word, Word], ...]:
        a = self.alphabet
        out: dict[Word, Word] = {}
        for x in a.letters:
            out[(x, a.inverse_letter(x))] = ()
        for c in symmetrized(self.relators, a):
            n = len(c)
            for k in range(n // 2 + 1, n + 1):
                out.setdefault(c[:k], inverse(c[k:], a))
        return tuple(out.items())

    @cached_property
    def trie(self) -> SuffixTrie:
        return SuffixTrie.build(self.rules, self.alphabet.size)


def dehn_reduce_with(w: Sequence[int], rules: DehnRules) -> Word:
    return tuple(kernels.reduce_word(bytes(w), rules.trie))
