"""Letters, words and the shortlex order.

A word is a plain tuple of integer letter codes, and integer order on codes
is the letter order.  Two orders are supported, both listing generators in
declaration order with each generator before its inverse:

``interleaved`` (default)
    ``a < a' < b < b' < ...``; generator ``i`` is ``2i``, its inverse ``2i + 1``.
``grouped``
    ``a < b < ... < a' < b' < ...``; generator ``i`` is ``i``, its inverse ``i + k``.

The interleaved order is the default because shortlex completion of the
free abelian group of rank two is finite under it and infinite under the
grouped order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import AlphabetMismatchError, MalformedWordError

Word = tuple[int, ...]

_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
_INVERSE_SUFFIXES = ("'", "⁻¹", "^-1")


ORDERS = ("interleaved", "grouped")


@dataclass(frozen=True)
class Alphabet:
    generators: tuple[str, ...]
    order: str = "interleaved"

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.order not in ORDERS:
            raise ValueError(f"letter order must be one of {ORDERS}, got {self.order!r}")
        if len(set(self.generators)) != len(self.generators):
            raise MalformedWordError(f"duplicate generator names in {self.generators}")
        for name in self.generators:
            if not _NAME_RE.match(name):
                raise MalformedWordError(f"invalid generator name {name!r}")
        if 2 * len(self.generators) > 255:
            raise MalformedWordError("at most 127 generators are supported")

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def size(self) -> int:
        """Number of letters, generators plus formal inverses."""
        return 2 * len(self.generators)

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(range(self.size))

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        k = len(self.generators)
        if self.order == "interleaved":
            return tuple(x ^ 1 for x in range(2 * k))
        return tuple(x + k if x < k else x - k for x in range(2 * k))

    def inverse_letter(self, x: int) -> int:
        return self.inverses[x]

    def letter(self, generator: int, inverted: bool = False) -> int:
        if self.order == "interleaved":
            return 2 * generator + int(inverted)
        return generator + len(self.generators) * int(inverted)

    def generator_of(self, x: int) -> tuple[int, bool]:
        """Return ``(generator index, is_inverse)`` for a letter code."""
        k = len(self.generators)
        if self.order == "interleaved":
            return x >> 1, bool(x & 1)
        return (x, False) if x < k else (x - k, True)

    def letter_name(self, x: int) -> str:
        if not 0 <= x < self.size:
            raise MalformedWordError(f"letter code {x} outside alphabet of size {self.size}")
        g, inv = self.generator_of(x)
        return self.generators[g] + ("'" if inv else "")

    def check(self, w: Sequence[int]) -> Word:
        n = self.size
        for x in w:
            if not (isinstance(x, int) and 0 <= x < n):
                raise MalformedWordError(f"letter {x!r} not in alphabet {self.generators}")
        return tuple(w)

    def parse(self, text: str) -> Word:
        """Parse whitespace-separated letters, e.g. ``"a b a' b'"``.

        The empty string (or ``"1"``/``"ε"`` when not a generator name) is the
        empty word.
        """
        tokens = text.split()
        if len(tokens) == 1 and tokens[0] in ("1", "ε") and tokens[0] not in self.generators:
            return ()
        index = {g: i for i, g in enumerate(self.generators)}
        out = []
        for tok in tokens:
            inv = False
            for suffix in _INVERSE_SUFFIXES:
                if tok.endswith(suffix):
                    tok, inv = tok[: -len(suffix)], True
                    break
            if tok not in index:
                raise MalformedWordError(f"unknown letter {tok!r}; generators are {self.generators}")
            out.append(self.letter(index[tok], inv))
        return tuple(out)

    def format(self, w: Sequence[int]) -> str:
        return " ".join(self.letter_name(x) for x in w)


def inverse(w: Sequence[int], alphabet: Alphabet) -> Word:
    inv = alphabet.inverses
    return tuple(inv[x] for x in reversed(w))


def free_reduce(w: Sequence[int], alphabet: Alphabet) -> Word:
    """Cancel adjacent letter/inverse pairs until none remain."""
    alphabet.check(w)
    inv = alphabet.inverses
    stack: list[int] = []
    for x in w:
        if stack and stack[-1] == inv[x]:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def cyclic_reduce(w: Sequence[int], alphabet: Alphabet) -> Word:
    w = free_reduce(w, alphabet)
    i, j = 0, len(w) - 1
    while i < j and w[i] == alphabet.inverse_letter(w[j]):
        i += 1
        j -= 1
    return w[i : j + 1]


def is_freely_reduced(w: Sequence[int], alphabet: Alphabet) -> bool:
    return all(w[i + 1] != alphabet.inverse_letter(w[i]) for i in range(len(w) - 1))


def is_cyclically_reduced(w: Sequence[int], alphabet: Alphabet) -> bool:
    return is_freely_reduced(w, alphabet) and (
        len(w) < 2 or w[0] != alphabet.inverse_letter(w[-1])
    )


def shortlex_key(w: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    return (len(w), tuple(w))


def shortlex_compare(w1: Sequence[int], w2: Sequence[int], alphabet: Alphabet | None = None) -> int:
    """Return -1, 0 or 1 as ``w1`` is shortlex-less, equal or greater than ``w2``.

    With an alphabet, both words are validated against it and a letter
    outside it raises :class:`AlphabetMismatchError`.
    """
    if alphabet is not None:
        for w in (w1, w2):
            try:
                alphabet.check(w)
            except MalformedWordError as exc:
                raise AlphabetMismatchError(str(exc)) from None
    a, b = shortlex_key(w1), shortlex_key(w2)
    return (a > b) - (a < b)


def cyclic_conjugates(w: Sequence[int]) -> list[Word]:
    w = tuple(w)
    return [w[i:] + w[:i] for i in range(len(w))] if w else [()]


def exponent_sums(w: Iterable[int], alphabet: Alphabet) -> tuple[int, ...]:
    sums = [0] * alphabet.rank
    for x in w:
        g, inv = alphabet.generator_of(x)
        sums[g] += -1 if inv else 1
    return tuple(sums)
