"""Shortlex string rewriting: Knuth-Bendix completion and normal forms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import kernels
from .errors import CompletionDivergedError
from .trie import SuffixTrie
from .words import Alphabet, Word, cyclic_conjugates, inverse, shortlex_key

DEFAULT_MAX_RULES = 2000
DEFAULT_MAX_LHS_LEN = 20


@dataclass(frozen=True)
class RewritingSystem:
    alphabet: Alphabet
    rules: tuple[tuple[Word, Word], ...]
    origin: str = "completed"

    def __post_init__(self):
        for lhs, rhs in self.rules:
            if shortlex_key(lhs) <= shortlex_key(rhs):
                raise ValueError(f"rule {lhs} -> {rhs} does not decrease shortlex order")

    @cached_property
    def trie(self) -> SuffixTrie:
        return SuffixTrie.build(self.rules, self.alphabet.size)

    def normal_form(self, w: Sequence[int]) -> Word:
        return normal_form(w, self)

    def format_rules(self) -> list[str]:
        fmt = self.alphabet.format
        return [f"{fmt(l) or 'ε'} -> {fmt(r) or 'ε'}" for l, r in self.rules]


def free_cancellation_rules(alphabet: Alphabet) -> list[tuple[Word, Word]]:
    return [((x, alphabet.inverse_letter(x)), ()) for x in alphabet.letters]


def free_group_system(alphabet: Alphabet) -> RewritingSystem:
    return RewritingSystem(alphabet, tuple(free_cancellation_rules(alphabet)), origin="builtin")


def normal_form(w: Sequence[int], rs: RewritingSystem) -> Word:
    rs.alphabet.check(w)
    return tuple(kernels.reduce_word(bytes(w), rs.trie))


def rewrite_steps(w: Sequence[int], rs: RewritingSystem) -> int:
    """Number of rule applications used to reach the normal form of ``w``."""
    return kernels.reduce_word_counted(bytes(w), rs.trie)[1]


def _orient(u: Word, v: Word) -> tuple[Word, Word]:
    return (u, v) if shortlex_key(u) > shortlex_key(v) else (v, u)


def _contains(big: Word, small: Word) -> bool:
    n, m = len(big), len(small)
    return any(big[i : i + m] == small for i in range(n - m + 1))


class _Completion:
    """Mutable working state of a completion run."""

    def __init__(self, alphabet: Alphabet, max_rules: int, max_lhs_len: int):
        self.alphabet = alphabet
        self.max_rules = max_rules
        self.max_lhs_len = max_lhs_len
        self.rules: dict[Word, Word] = {}
        self.order: list[Word] = []  # insertion order, may hold dead entries
        self.maxlen = 0

    def reduce(self, w: Word) -> Word:
        rules, maxlen = self.rules, self.maxlen
        pending = list(reversed(w))
        stack: list[int] = []
        while pending:
            stack.append(pending.pop())
            top = len(stack)
            for k in range(min(maxlen, top), 0, -1):
                rhs = rules.get(tuple(stack[top - k :]))
                if rhs is not None:
                    del stack[top - k :]
                    pending.extend(reversed(rhs))
                    break
        return tuple(stack)

    def add_equations(self, equations: list[tuple[Word, Word]]) -> None:
        while equations:
            u, v = equations.pop()
            u, v = self.reduce(u), self.reduce(v)
            if u == v:
                continue
            lhs, rhs = _orient(u, v)
            if len(lhs) > self.max_lhs_len:
                raise CompletionDivergedError(
                    f"rule left-hand side of length {len(lhs)} exceeds max_lhs_len={self.max_lhs_len}",
                    len(self.rules),
                )
            for l2 in list(self.rules):
                if _contains(l2, lhs):
                    equations.append((l2, self.rules.pop(l2)))
            self.rules[lhs] = rhs
            self.order.append(lhs)
            self.maxlen = max(self.maxlen, len(lhs))
            for l2, r2 in list(self.rules.items()):
                if l2 != lhs and _contains(r2, lhs):
                    self.rules[l2] = self.reduce(r2)
            if len(self.rules) > self.max_rules:
                raise CompletionDivergedError(
                    f"more than max_rules={self.max_rules} rules before confluence",
                    len(self.rules),
                )

    def overlaps(self, l1: Word, l2: Word) -> Iterable[tuple[Word, Word]]:
        r1, r2 = self.rules[l1], self.rules[l2]
        for k in range(1, min(len(l1), len(l2))):
            if l1[-k:] == l2[:k]:
                yield r1 + l2[k:], l1[:-k] + r2

    def run(self) -> None:
        i = 0
        while i < len(self.order):
            li = self.order[i]
            if li in self.rules:
                for j in range(i + 1):
                    lj = self.order[j]
                    if lj not in self.rules or li not in self.rules:
                        continue
                    pairs = list(self.overlaps(li, lj))
                    if li != lj and lj in self.rules:
                        pairs += list(self.overlaps(lj, li))
                    for a, b in pairs:
                        if li not in self.rules or lj not in self.rules:
                            break
                        a, b = self.reduce(a), self.reduce(b)
                        if a != b:
                            self.add_equations([(a, b)])
            i += 1


def kb_complete(
    alphabet: Alphabet,
    relators: Sequence[Word],
    max_rules: int = DEFAULT_MAX_RULES,
    max_lhs_len: int = DEFAULT_MAX_LHS_LEN,
) -> RewritingSystem:
    """Complete the group presentation to a confluent shortlex system.

    Starts from the free cancellations ``x x' -> ε`` and one rule per relator,
    resolves critical pairs and interreduces after every new rule.  Raises
    :class:`CompletionDivergedError` when a cap is hit before confluence.
    """
    if max_rules <= 0 or max_lhs_len <= 0:
        raise ValueError("completion limits must be positive")
    state = _Completion(alphabet, max_rules, max_lhs_len)
    equations = [(r, ()) for r in reversed(relators) if r]
    # balanced splits u = v' of every cyclic conjugate uv of r and r'; these
    # are consequences of r = 1 and keep completion from drifting into long rules
    for r in relators:
        for c in {*cyclic_conjugates(r), *cyclic_conjugates(inverse(r, alphabet))}:
            h = (len(c) + 1) // 2
            equations.append((c[:h], inverse(c[h:], alphabet)))
    equations.sort(key=lambda e: shortlex_key(_orient(*e)[0]), reverse=True)
    equations += [(l, r) for l, r in reversed(free_cancellation_rules(alphabet))]
    state.add_equations(equations)
    state.run()
    rules = tuple(sorted(state.rules.items(), key=lambda lr: shortlex_key(lr[0])))
    origin = "builtin" if not relators else "completed"
    return RewritingSystem(alphabet, rules, origin=origin)


def critical_pairs(rs: RewritingSystem) -> list[tuple[Word, Word, Word]]:
    """All overlap words with their two one-step rewrites.

    Includes proper overlaps and inclusions of one left-hand side in another.
    """
    out = []
    rules = rs.rules
    for l1, r1 in rules:
        for l2, r2 in rules:
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    out.append((l1 + l2[k:], r1 + l2[k:], l1[:-k] + r2))
            if l1 != l2 and len(l2) <= len(l1):
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i : i + len(l2)] == l2:
                        out.append((l1, r1, l1[:i] + r2 + l1[i + len(l2) :]))
    return out


def unresolved_critical_pairs(rs: RewritingSystem) -> list[tuple[Word, Word, Word]]:
    return [
        (w, a, b)
        for w, a, b in critical_pairs(rs)
        if normal_form(a, rs) != normal_form(b, rs)
    ]


def is_confluent(rs: RewritingSystem) -> bool:
    return not unresolved_critical_pairs(rs)


def is_interreduced(rs: RewritingSystem) -> bool:
    lhss = [l for l, _ in rs.rules]
    return not any(a != b and _contains(a, b) for a in lhss for b in lhss)
