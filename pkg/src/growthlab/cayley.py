"""Breadth-first enumeration of spheres and balls in the Cayley graph.

Elements are stored per radius as uint8 arrays of shortlex-least geodesic
words, in shortlex order.  For groups with a confluent shortlex system the
spheres are exactly the irreducible words of each length.  For Dehn-oracle
groups each element also carries a fingerprint (see :mod:`growthlab.fingerprint`);
distinct fingerprints separate elements and equal fingerprints are
confirmed by Dehn reduction before two words are identified.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .errors import BudgetExceededError, GrowthLabError
from .fingerprint import Fingerprint, hash_keys
from .presentation import GroupPresentation, dehn_reduce
from .words import Word, inverse

log = logging.getLogger(__name__)

DEFAULT_BUDGET_MB = 8 * 1024
TABLE_SCHEMA = "growthlab.growth-table/1"


def budget_bytes(budget_mb: int | None = None) -> int:
    if budget_mb is None:
        budget_mb = int(os.environ.get("GROWTHLAB_BUDGET_MB", DEFAULT_BUDGET_MB))
    if budget_mb <= 0:
        raise ValueError("memory budget must be positive")
    return budget_mb * 1024 * 1024


@dataclass(frozen=True, eq=False)
class GrowthTable:
    group: str
    radius: int
    sphere_counts: tuple[int, ...]
    ball_counts: tuple[int, ...]
    elements: tuple[np.ndarray, ...] | None = field(default=None, repr=False)
    keys: tuple[np.ndarray, ...] | None = field(default=None, repr=False)
    fingerprint: Fingerprint | None = field(default=None, repr=False)
    collisions: int = 0

    def __post_init__(self):
        assert len(self.sphere_counts) == len(self.ball_counts) == self.radius + 1

    @property
    def has_elements(self) -> bool:
        return self.elements is not None

    def sphere(self, n: int) -> int:
        return self.sphere_counts[n]

    def ball(self, n: int) -> int:
        return self.ball_counts[n]

    def words(self, n: int) -> list[Word]:
        if self.elements is None:
            raise GrowthLabError("table was built without store_elements")
        return [tuple(row) for row in self.elements[n].tolist()]

    def iter_words(self) -> Iterator[tuple[int, Word]]:
        for n in range(self.radius + 1):
            for w in self.words(n):
                yield n, w

    def truncated(self, radius: int) -> "GrowthTable":
        r = radius + 1
        return GrowthTable(
            self.group,
            radius,
            self.sphere_counts[:r],
            self.ball_counts[:r],
            None if self.elements is None else self.elements[:r],
            None if self.keys is None else self.keys[:r],
            self.fingerprint,
            self.collisions,
        )

    # ------------------------------------------------------------ export

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "sphere", "ball"])
        for n in range(self.radius + 1):
            writer.writerow([n, self.sphere_counts[n], self.ball_counts[n]])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "schema": TABLE_SCHEMA,
            "group": self.group,
            "radius": self.radius,
            "sphere": list(self.sphere_counts),
            "ball": list(self.ball_counts),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def export_elements(self, p: GroupPresentation) -> str:
        """One ``radius<TAB>word`` line per stored element; the identity is ``1``."""
        lines = []
        for n, w in self.iter_words():
            lines.append(f"{n}\t{p.format(w) or '1'}")
        return "\n".join(lines) + "\n"


def table_from_dict(data: dict) -> GrowthTable:
    if data.get("schema") != TABLE_SCHEMA:
        raise GrowthLabError(f"unsupported growth-table schema {data.get('schema')!r}")
    return GrowthTable(
        data["group"], data["radius"], tuple(data["sphere"]), tuple(data["ball"])
    )


def counts_table(group: str, spheres: Sequence[int]) -> GrowthTable:
    """A count-only table from sphere sizes (used for derived and test data)."""
    balls = np.cumsum(np.asarray(spheres, dtype=object)).tolist()
    return GrowthTable(group, len(spheres) - 1, tuple(int(s) for s in spheres), tuple(int(b) for b in balls))


# ---------------------------------------------------------------- enumeration


def _estimate_bytes(count: int, length: int, key_width: int) -> int:
    return count * (length + 8 * key_width + 16)


def _extend_rows(words: np.ndarray, letters: np.ndarray) -> np.ndarray:
    """All rows ``w + x``, row-major in (w, x); shortlex order is preserved."""
    n, length = words.shape
    nl = len(letters)
    out = np.empty((n * nl, length + 1), dtype=np.uint8)
    out[:, :length] = np.repeat(words, nl, axis=0)
    out[:, length] = np.tile(letters, n)
    return out


def _enumerate_rewriting(p, R, budget, progress):
    trie = p.rewriting.trie
    nl = p.alphabet.size
    letters = np.arange(nl, dtype=np.uint8)
    levels = [np.zeros((1, 0), dtype=np.uint8)]
    used = 0
    for n in range(1, R + 1):
        prev = levels[-1]
        est = _estimate_bytes(prev.shape[0] * nl, n, 0)
        if used + est > budget:
            return levels, f"memory budget exceeded before radius {n}"
        mask = kernels.irreducible_mask(prev, trie)
        rows = _extend_rows(prev, letters)
        levels.append(rows[mask.reshape(-1)])
        used += levels[-1].nbytes
        if progress:
            progress(n, levels[-1].shape[0])
    return levels, None


def _enumerate_fingerprint(p, R, budget, progress, fp):
    """Breadth-first search where elements are told apart by fingerprint."""
    a = p.alphabet
    nl = a.size
    inv = np.asarray(a.inverses, dtype=np.uint8)
    levels = [np.zeros((1, 0), dtype=np.uint8)]
    keys = [fp.identity()[None, :]]
    hashes = [hash_keys(keys[0])]
    collisions = 0
    used = 0

    def same(u: Word, v: Word) -> bool:
        return dehn_reduce(u + inverse(v, a), p) == ()

    for n in range(1, R + 1):
        prev, prev_keys = levels[-1], keys[-1]
        est = _estimate_bytes(prev.shape[0] * nl, n, fp.width) * 3
        if used + est > budget:
            return levels, keys, collisions, f"memory budget exceeded before radius {n}"
        m = prev.shape[0]
        cand = _extend_rows(prev, np.arange(nl, dtype=np.uint8))
        ckeys = np.empty((m, nl, fp.width), dtype=np.int64)
        for x in range(nl):
            ckeys[:, x, :] = fp.act(prev_keys, x)
        ckeys = ckeys.reshape(m * nl, fp.width)
        keep = np.ones(m * nl, dtype=bool)
        if n >= 2:
            # w x with x inverse to the last letter of w is the prefix of w
            keep &= cand[:, n - 1] != inv[cand[:, n - 2]]
        cand, ckeys = cand[keep], ckeys[keep]
        chash = hash_keys(ckeys)
        drop = np.zeros(cand.shape[0], dtype=bool)

        # candidates equal to elements of the two previous spheres
        for lvl in range(max(0, n - 2), n):
            lh = hashes[lvl]
            order = np.argsort(lh, kind="stable")
            sorted_h = lh[order]
            pos = np.searchsorted(sorted_h, chash)
            hit = np.flatnonzero((pos < len(sorted_h)) & (sorted_h[np.minimum(pos, len(sorted_h) - 1)] == chash))
            for i in hit:
                j = pos[i]
                while j < len(sorted_h) and sorted_h[j] == chash[i]:
                    e = order[j]
                    if np.array_equal(keys[lvl][e], ckeys[i]):
                        if same(tuple(cand[i].tolist()), tuple(levels[lvl][e].tolist())):
                            drop[i] = True
                            break
                        collisions += 1
                    j += 1

        # duplicates among the candidates themselves; the first (shortlex-least) survives
        live = np.flatnonzero(~drop)
        order = live[np.argsort(chash[live], kind="stable")]
        sh = chash[order]
        dup_start = np.flatnonzero(sh[1:] == sh[:-1])
        groups: dict[int, list[int]] = {}
        for s in dup_start:
            groups.setdefault(int(sh[s]), [])
        for h in groups:
            lo = np.searchsorted(sh, np.uint64(h), side="left")
            hi = np.searchsorted(sh, np.uint64(h), side="right")
            members = sorted(order[lo:hi].tolist())
            kept: list[int] = []
            for i in members:
                word = tuple(cand[i].tolist())
                for k in kept:
                    if np.array_equal(ckeys[k], ckeys[i]):
                        if same(word, tuple(cand[k].tolist())):
                            drop[i] = True
                            break
                        collisions += 1
                if not drop[i]:
                    kept.append(i)

        levels.append(cand[~drop])
        keys.append(ckeys[~drop])
        hashes.append(chash[~drop])
        used += levels[-1].nbytes + keys[-1].nbytes + hashes[-1].nbytes
        if progress:
            progress(n, levels[-1].shape[0])
    return levels, keys, collisions, None


def enumerate_growth(
    p: GroupPresentation,
    R: int,
    store_elements: bool = False,
    budget_mb: int | None = None,
    progress=None,
) -> GrowthTable:
    """Exact sphere and ball sizes up to radius ``R``.

    Raises :class:`BudgetExceededError` carrying the table of every radius
    completed before the estimated memory use crossed the budget.
    """
    if R < 0:
        raise ValueError("radius must be nonnegative")
    budget = budget_bytes(budget_mb)
    keys = fp = None
    collisions = 0
    if p.rewriting is not None:
        levels, failure = _enumerate_rewriting(p, R, budget, progress)
    else:
        fp = Fingerprint.for_presentation(p.alphabet, p.relators, p.surface)
        levels, keys, collisions, failure = _enumerate_fingerprint(p, R, budget, progress, fp)
    spheres = tuple(int(lv.shape[0]) for lv in levels)
    balls = tuple(int(b) for b in np.cumsum(spheres))
    table = GrowthTable(
        p.name,
        len(levels) - 1,
        spheres,
        balls,
        tuple(levels) if (store_elements or fp is not None) else None,
        tuple(keys) if keys is not None else None,
        fp,
        collisions,
    )
    if collisions:
        log.warning("%s: %d fingerprint collisions resolved by Dehn reduction", p.name, collisions)
    if failure:
        raise BudgetExceededError(f"{failure}; last complete radius {table.radius}", table)
    return table


# ---------------------------------------------------------------- element lookup


class ElementIndex:
    """Locate group elements inside an enumerated ball.

    For rewriting groups the normal form is the canonical representative.
    For fingerprinted groups a word is located through its fingerprint; a
    match is trusted without further checks only when the ball had no
    fingerprint collisions and the word is known to lie in the ball.
    """

    def __init__(self, p: GroupPresentation, table: GrowthTable):
        if not table.has_elements:
            raise GrowthLabError("element index needs a table with stored elements")
        self.p = p
        self.table = table
        self.radius = table.radius
        if table.keys is not None:
            all_keys = np.concatenate(table.keys)
            self._keys = all_keys
            self._hash = hash_keys(all_keys)
            self._order = np.argsort(self._hash, kind="stable")
            self._sorted = self._hash[self._order]
            self._level = np.repeat(np.arange(table.radius + 1), table.sphere_counts)
            self._offset = np.concatenate([[0], np.cumsum(table.sphere_counts)])[:-1]

    @classmethod
    def for_ball(cls, p: GroupPresentation, radius: int, budget_mb: int | None = None) -> "ElementIndex":
        return cls(p, enumerate_growth(p, radius, store_elements=True, budget_mb=budget_mb))

    @property
    def injective(self) -> bool:
        return self.table.collisions == 0

    def word_at(self, level: int, idx: int) -> Word:
        return tuple(self.table.elements[level][idx].tolist())

    def _candidates(self, key: np.ndarray) -> list[tuple[int, int]]:
        h = hash_keys(key[None, :])[0]
        lo = np.searchsorted(self._sorted, h, side="left")
        hi = np.searchsorted(self._sorted, h, side="right")
        out = []
        for j in range(lo, hi):
            flat = int(self._order[j])
            if np.array_equal(self._keys[flat], key):
                lvl = int(self._level[flat])
                out.append((lvl, flat - int(self._offset[lvl])))
        return out

    def locate(self, w: Sequence[int]) -> tuple[int, int]:
        """Return ``(radius, position)`` of the element ``w`` represents."""
        p = self.p
        if p.rewriting is not None:
            from .rewriting import normal_form

            nf = normal_form(w, p.rewriting)
            n = len(nf)
            if n > self.radius:
                raise GrowthLabError(f"element of length {n} lies outside the indexed ball of radius {self.radius}")
            rows = self.table.elements[n]
            target = np.frombuffer(bytes(nf), dtype=np.uint8)
            # rows are sorted lexicographically within a sphere
            lo, hi = 0, rows.shape[0]
            while lo < hi:
                mid = (lo + hi) // 2
                if tuple(rows[mid].tolist()) < nf:
                    lo = mid + 1
                else:
                    hi = mid
            if lo < rows.shape[0] and np.array_equal(rows[lo], target):
                return n, lo
            raise GrowthLabError("normal form missing from the table")
        reduced = dehn_reduce(w, p)
        in_ball = len(reduced) <= self.radius
        cands = self._candidates(self.table.fingerprint.of_word(reduced))
        if in_ball and self.injective and len(cands) == 1:
            return cands[0]
        for lvl, idx in cands:
            if p.equal(reduced, self.word_at(lvl, idx)):
                return lvl, idx
        raise GrowthLabError(
            f"element not found in the indexed ball of radius {self.radius} (Dehn-reduced length {len(reduced)})"
        )

    def canonical(self, w: Sequence[int]) -> Word:
        return self.word_at(*self.locate(w))

    def length(self, w: Sequence[int]) -> int:
        if self.p.rewriting is not None:
            from .rewriting import normal_form

            return len(normal_form(w, self.p.rewriting))
        return self.locate(w)[0]

    def locate_keys(self, keys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized lookup of fingerprints known to belong to ball elements.

        Requires a collision-free table; returns arrays of radii and positions.
        """
        if not self.injective:
            raise GrowthLabError("vectorized lookup needs a collision-free fingerprint table")
        h = hash_keys(keys)
        pos = np.searchsorted(self._sorted, h, side="left")
        pos_c = np.minimum(pos, len(self._sorted) - 1)
        flat = self._order[pos_c]
        ok = (self._sorted[pos_c] == h) & np.all(self._keys[flat] == keys, axis=1)
        if not ok.all():
            # equal 64-bit hashes with different keys: resolve one by one
            for i in np.flatnonzero(~ok):
                lo = np.searchsorted(self._sorted, h[i], side="left")
                hi = np.searchsorted(self._sorted, h[i], side="right")
                for j in range(lo, hi):
                    f = self._order[j]
                    if np.array_equal(self._keys[f], keys[i]):
                        flat[i] = f
                        ok[i] = True
                        break
            if not ok.all():
                raise GrowthLabError("fingerprint not present in the indexed ball")
        levels = self._level[flat]
        return levels, flat - self._offset[levels]


def distance(g: Sequence[int], h: Sequence[int], p: GroupPresentation, index: ElementIndex | None = None) -> int:
    """Word-metric distance ``|g^-1 h|``."""
    w = inverse(g, p.alphabet) + tuple(h)
    if p.rewriting is not None:
        from .rewriting import normal_form

        return len(normal_form(w, p.rewriting))
    if index is None or index.radius < len(g) + len(h):
        index = ElementIndex.for_ball(p, len(dehn_reduce(w, p)))
    return index.length(w)
