"""Pure-Python rewriting kernels; reference and fallback for ``_ckernels``."""

from __future__ import annotations

import numpy as np

from .trie import SuffixTrie


def _longest_suffix_rule(stack, child, rule_at, nl):
    node = 0
    best = -1
    for i in range(len(stack) - 1, -1, -1):
        node = child[node * nl + stack[i]]
        if node < 0:
            break
        r = rule_at[node]
        if r >= 0:
            best = r
    return best


def reduce_word(word: bytes, trie: SuffixTrie) -> bytes:
    return bytes(reduce_word_counted(word, trie)[0])


def reduce_word_counted(word: bytes, trie: SuffixTrie) -> tuple[list[int], int]:
    """Rewrite to an irreducible word; also return the number of rule applications."""
    child, rule_at, nl = trie.child_list, trie.rule_at_list, trie.nletters
    rhs, lhs_len = trie.rhs_list, trie.lhs_len_list
    pending = list(reversed(word))
    stack: list[int] = []
    steps = 0
    while pending:
        stack.append(pending.pop())
        r = _longest_suffix_rule(stack, child, rule_at, nl)
        if r >= 0:
            del stack[len(stack) - lhs_len[r] :]
            pending.extend(reversed(rhs[r]))
            steps += 1
    return stack, steps


def reduce_rows(rows: np.ndarray, trie: SuffixTrie) -> tuple[np.ndarray, np.ndarray]:
    """Reduce each row of a 2-D uint8 array; rows come back left-aligned with lengths."""
    rows = np.ascontiguousarray(rows, dtype=np.uint8)
    out = np.zeros_like(rows)
    lengths = np.zeros(rows.shape[0], dtype=np.int32)
    for i, row in enumerate(rows.tolist()):
        red, _ = reduce_word_counted(row, trie)
        out[i, : len(red)] = red
        lengths[i] = len(red)
    return out, lengths


def irreducible_mask(words: np.ndarray, trie: SuffixTrie) -> np.ndarray:
    """``mask[i, x]`` is true when ``words[i] + x`` has no left-hand side as a suffix.

    Rows are assumed irreducible already, so only suffixes ending at the new
    letter need checking.
    """
    child, rule_at, nl = trie.child_list, trie.rule_at_list, trie.nletters
    words = np.ascontiguousarray(words, dtype=np.uint8)
    n, length = words.shape
    mask = np.ones((n, nl), dtype=bool)
    for i, row in enumerate(words.tolist()):
        for x in range(nl):
            node = child[x]
            if node < 0:
                continue
            if rule_at[node] >= 0:
                mask[i, x] = False
                continue
            j = length - 1
            while j >= 0:
                node = child[node * nl + row[j]]
                if node < 0:
                    break
                if rule_at[node] >= 0:
                    mask[i, x] = False
                    break
                j -= 1
    return mask
