"""Array-packed trie over reversed rule left-hand sides.

Both kernel backends walk this structure from the top of a stack of letters
downwards, which finds every left-hand side that is a suffix of the stack.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


@dataclass(frozen=True, eq=False)
class SuffixTrie:
    nletters: int
    child: np.ndarray  # int32, node * nletters + letter -> node, -1 when absent
    rule_at: np.ndarray  # int32 per node, index of the rule ending there or -1
    rhs_data: np.ndarray  # uint8, right-hand sides concatenated
    rhs_offsets: np.ndarray  # int32, len(rules) + 1
    lhs_lengths: np.ndarray  # int32 per rule
    max_lhs: int
    # plain-list mirrors for the pure-Python backend
    child_list: list = field(repr=False)
    rule_at_list: list = field(repr=False)
    rhs_list: list = field(repr=False)
    lhs_len_list: list = field(repr=False)

    @classmethod
    def build(cls, rules: Sequence[tuple[Sequence[int], Sequence[int]]], nletters: int) -> "SuffixTrie":
        child: list[int] = [-1] * nletters
        rule_at: list[int] = [-1]
        rhs: list[tuple[int, ...]] = []
        lhs_len: list[int] = []
        for lhs, r in rules:
            if not lhs:
                raise ValueError("rule with empty left-hand side")
            if len(r) > len(lhs):
                raise ValueError("rule right-hand side longer than its left-hand side")
            node = 0
            for x in reversed(lhs):
                slot = node * nletters + x
                nxt = child[slot]
                if nxt < 0:
                    nxt = len(rule_at)
                    child[slot] = nxt
                    child.extend([-1] * nletters)
                    rule_at.append(-1)
                node = nxt
            if rule_at[node] < 0:
                rule_at[node] = len(rhs)
                rhs.append(tuple(r))
                lhs_len.append(len(lhs))
        offsets = np.zeros(len(rhs) + 1, dtype=np.int32)
        if rhs:
            offsets[1:] = np.cumsum([len(r) for r in rhs])
        flat = [x for r in rhs for x in r]
        return cls(
            nletters=nletters,
            child=np.asarray(child, dtype=np.int32),
            rule_at=np.asarray(rule_at, dtype=np.int32),
            rhs_data=np.asarray(flat, dtype=np.uint8),
            rhs_offsets=offsets,
            lhs_lengths=np.asarray(lhs_len, dtype=np.int32),
            max_lhs=max(lhs_len, default=0),
            child_list=child,
            rule_at_list=rule_at,
            rhs_list=rhs,
            lhs_len_list=lhs_len,
        )

    @property
    def rule_count(self) -> int:
        return len(self.rhs_list)
