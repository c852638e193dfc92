"""Homomorphic fingerprints for groups without shortlex normal forms.

A fingerprint maps each group element to an integer vector through a
homomorphism, so different fingerprints prove two elements are different.
Equal fingerprints are only a hint and are confirmed with the word-problem
oracle by the callers.

Two homomorphisms are combined:

* the abelianization, as exponent sums reduced modulo the Hermite normal
  form of the relator exponent-sum lattice;
* for surface relators ``[x1,y1]...[xg,yg]``, a random representation into
  SL(2, F_p), p = 2**31 - 1, built by solving ``[C, D] = Z`` for the last
  commutator.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .words import Alphabet, Word, exponent_sums

PRIME = 2**31 - 1  # p = 3 mod 4, so square roots are a ** ((p + 1) // 4)
_HASH_MULTIPLIERS = np.array(
    [0x9E3779B97F4A7C15, 0xC2B2AE3D27D4EB4F, 0x165667B19E3779F9, 0xD6E8FEB86659FD93,
     0xFF51AFD7ED558CCD, 0xC4CEB9FE1A85EC53, 0x94D049BB133111EB, 0xBF58476D1CE4E5B9],
    dtype=np.uint64,
)


# ---------------------------------------------------------------- integer lattices


def hermite_rows(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row-style Hermite normal form (positive pivots, reduced above) of an integer matrix."""
    mat = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    col = 0
    while mat and col < ncols:
        nonzero = [r for r in mat if r[col]]
        if not nonzero:
            col += 1
            continue
        while len(nonzero) > 1:
            nonzero.sort(key=lambda r: abs(r[col]))
            pivot = nonzero[0]
            for r in nonzero[1:]:
                q = r[col] // pivot[col]
                for j in range(ncols):
                    r[j] -= q * pivot[j]
            nonzero = [r for r in nonzero if r[col]]
        pivot = nonzero[0]
        if pivot[col] < 0:
            pivot[:] = [-x for x in pivot]
        mat = [r for r in mat if r is not pivot and any(r)]
        for r in out:
            q = r[col] // pivot[col]
            for j in range(ncols):
                r[j] -= q * pivot[j]
        out.append(pivot)
        col += 1
    return out


def _pivot_col(row: Sequence[int]) -> int:
    return next(i for i, x in enumerate(row) if x)


# ---------------------------------------------------------------- SL(2, F_p)


def _mat_mul(a, b, p=PRIME):
    return (
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    )


def _mat_inv(a, p=PRIME):
    return (a[3] % p, -a[1] % p, -a[2] % p, a[0] % p)


def _commutator(a, b):
    return _mat_mul(_mat_mul(a, b), _mat_mul(_mat_inv(a), _mat_inv(b)))


def _random_sl2(rng: random.Random, p=PRIME):
    while True:
        a, b, c = rng.randrange(p), rng.randrange(p), rng.randrange(p)
        if a:
            return (a, b, c, (1 + b * c) * pow(a, -1, p) % p)


def _nullspace_mod_p(rows: list[list[int]], n: int, p=PRIME) -> list[list[int]]:
    mat = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [x * inv % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = -mat[i][f] % p
        basis.append(v)
    return basis


def _solve_commutator(z, rng: random.Random, p=PRIME, attempts: int = 1000):
    """Find C, D in SL(2, F_p) with C D C^-1 D^-1 = Z."""
    z00, z01, z10, z11 = z
    for _ in range(attempts):
        # C = [[x, y], [u, w]] with det C = 1 and tr(C^-1 Z) = tr(C):
        # linear in (w, u) once x, y are fixed
        x, y = rng.randrange(p), rng.randrange(p)
        k = (-x * (z11 - 1) + y * z10) % p
        a11, a12, a21, a22 = (z00 - 1) % p, -z01 % p, x, -y % p
        det = (a11 * a22 - a12 * a21) % p
        if not det:
            continue
        inv = pow(det, -1, p)
        w = (a22 * k - a12 * 1) * inv % p
        u = (-a21 * k + a11 * 1) * inv % p
        c = (x, y, u, w)
        if (x * w - y * u) % p != 1 or (x + w) % p in (2, p - 2):
            continue
        m = _mat_inv(c)
        n_ = _mat_mul(m, z)
        # D M = N D, unknown D = [[d0, d1], [d2, d3]]
        eqs = [
            [m[0] - n_[0], m[2], -n_[1], 0],
            [m[1], m[3] - n_[0], 0, -n_[1]],
            [-n_[2], 0, m[0] - n_[3], m[2]],
            [0, -n_[2], m[1], m[3] - n_[3]],
        ]
        basis = _nullspace_mod_p(eqs, 4, p)
        if not basis:
            continue
        coeffs = [rng.randrange(1, p) for _ in basis]
        d = [sum(cf * b[i] for cf, b in zip(coeffs, basis)) % p for i in range(4)]
        dd = (d[0] * d[3] - d[1] * d[2]) % p
        if not dd or pow(dd, (p - 1) // 2, p) != 1:
            continue
        s = pow(pow(dd, (p + 1) // 4, p), -1, p)
        dmat = tuple(v * s % p for v in d)
        if _commutator(c, dmat) == tuple(v % p for v in z):
            return c, dmat
    raise RuntimeError("could not solve the commutator equation in SL(2, F_p)")


def surface_representation(relator: Word, alphabet: Alphabet, seed: int = 0) -> dict[int, tuple]:
    """Generator images in SL(2, F_p) satisfying the surface relator."""
    rng = random.Random(seed)
    pairs = [(relator[i], relator[i + 1]) for i in range(0, len(relator), 4)]
    images: dict[int, tuple] = {}
    acc = (1, 0, 0, 1)
    for x, y in pairs[:-1]:
        images[x], images[y] = _random_sl2(rng), _random_sl2(rng)
        acc = _mat_mul(acc, _commutator(images[x], images[y]))
    x, y = pairs[-1]
    images[x], images[y] = _solve_commutator(_mat_inv(acc), rng)
    letters = {}
    for g, m in images.items():
        letters[g] = m
        letters[alphabet.inverse_letter(g)] = _mat_inv(m)
    check = (1, 0, 0, 1)
    for x in relator:
        check = _mat_mul(check, letters[x])
    assert check == (1, 0, 0, 1)
    return letters


# ---------------------------------------------------------------- the fingerprint


@dataclass(frozen=True, eq=False)
class Fingerprint:
    alphabet: Alphabet
    hnf: tuple[tuple[int, ...], ...]
    sl2: dict | None  # letter -> matrix tuple, or None

    @classmethod
    def for_presentation(cls, alphabet: Alphabet, relators: Sequence[Word], surface: bool, seed: int = 0):
        rows = [exponent_sums(r, alphabet) for r in relators]
        hnf = tuple(tuple(r) for r in hermite_rows(rows, alphabet.rank))
        sl2 = surface_representation(relators[0], alphabet, seed) if surface else None
        return cls(alphabet, hnf, sl2)

    @property
    def width(self) -> int:
        return self.alphabet.rank + (4 if self.sl2 is not None else 0)

    def identity(self) -> np.ndarray:
        key = np.zeros(self.width, dtype=np.int64)
        if self.sl2 is not None:
            key[-4:] = (1, 0, 0, 1)
        return key

    def _reduce_abelian(self, ab: np.ndarray) -> None:
        for row in self.hnf:
            c = _pivot_col(row)
            q = np.floor_divide(ab[:, c], row[c])
            ab -= q[:, None] * np.asarray(row, dtype=np.int64)[None, :]

    def act(self, keys: np.ndarray, x: int) -> np.ndarray:
        """Fingerprints of ``g x`` for every row fingerprint of ``g``."""
        k = self.alphabet.rank
        out = keys.copy()
        g, inv = self.alphabet.generator_of(x)
        out[:, g] += -1 if inv else 1
        if self.hnf:
            self._reduce_abelian(out[:, :k])
        if self.sl2 is not None:
            m = keys[:, k:]
            a = self.sl2[x]
            out[:, k + 0] = (m[:, 0] * a[0] + m[:, 1] * a[2]) % PRIME
            out[:, k + 1] = (m[:, 0] * a[1] + m[:, 1] * a[3]) % PRIME
            out[:, k + 2] = (m[:, 2] * a[0] + m[:, 3] * a[2]) % PRIME
            out[:, k + 3] = (m[:, 2] * a[1] + m[:, 3] * a[3]) % PRIME
        return out

    def of_word(self, w: Sequence[int]) -> np.ndarray:
        key = self.identity()[None, :]
        for x in w:
            key = self.act(key, x)
        return key[0]

    def of_rows(self, rows: np.ndarray) -> np.ndarray:
        """Fingerprints of many equal-length words given as uint8 rows."""
        keys = np.repeat(self.identity()[None, :], rows.shape[0], axis=0)
        for j in range(rows.shape[1]):
            col = rows[:, j]
            for x in np.unique(col):
                sel = col == x
                keys[sel] = self.act(keys[sel], int(x))
        return keys

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Row-wise fingerprints of products ``g h`` from fingerprints of ``g`` and ``h``."""
        k = self.alphabet.rank
        out = a + b
        out[:, k:] = a[:, k:]
        if self.hnf:
            self._reduce_abelian(out[:, :k])
        if self.sl2 is not None:
            m, n = a[:, k:], b[:, k:]
            out[:, k + 0] = (m[:, 0] * n[:, 0] + m[:, 1] * n[:, 2]) % PRIME
            out[:, k + 1] = (m[:, 0] * n[:, 1] + m[:, 1] * n[:, 3]) % PRIME
            out[:, k + 2] = (m[:, 2] * n[:, 0] + m[:, 3] * n[:, 2]) % PRIME
            out[:, k + 3] = (m[:, 2] * n[:, 1] + m[:, 3] * n[:, 3]) % PRIME
        return out


def hash_keys(keys: np.ndarray) -> np.ndarray:
    """64-bit mixing hash of fingerprint rows, used only to sort and search."""
    h = np.zeros(keys.shape[0], dtype=np.uint64)
    u = keys.astype(np.uint64)
    with np.errstate(over="ignore"):
        for j in range(keys.shape[1]):
            h ^= u[:, j] * _HASH_MULTIPLIERS[j % len(_HASH_MULTIPLIERS)] + np.uint64(j)
            h = (h << np.uint64(27)) | (h >> np.uint64(37))
            h *= np.uint64(0x94D049BB133111EB)
    return h
