# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled rewriting kernels.  Same contracts as ``growthlab._pykernels``."""

import numpy as np

cimport numpy as cnp
from libc.stdlib cimport free, malloc

cnp.import_array()


cdef inline int _longest_suffix_rule(const unsigned char* st, Py_ssize_t top,
                                     const int* child, const int* rule_at, int nl) nogil:
    cdef int node = 0
    cdef int best = -1
    cdef Py_ssize_t i = top
    while i >= 0:
        node = child[node * nl + st[i]]
        if node < 0:
            break
        if rule_at[node] >= 0:
            best = rule_at[node]
        i -= 1
    return best


cdef Py_ssize_t _reduce(const unsigned char* word, Py_ssize_t n, unsigned char* st,
                        unsigned char* pending, const int* child, const int* rule_at,
                        const unsigned char* rhs, const int* rhs_off, const int* lhs_len,
                        int nl) nogil:
    # both buffers need room for n letters; rules never lengthen a word
    cdef Py_ssize_t top = -1
    cdef Py_ssize_t p = n
    cdef Py_ssize_t i
    cdef int r, a, b
    for i in range(n):
        pending[i] = word[n - 1 - i]
    while p > 0:
        p -= 1
        top += 1
        st[top] = pending[p]
        r = _longest_suffix_rule(st, top, child, rule_at, nl)
        if r >= 0:
            top -= lhs_len[r]
            a = rhs_off[r]
            b = rhs_off[r + 1]
            i = b - 1
            while i >= a:
                pending[p] = rhs[i]
                p += 1
                i -= 1
    return top + 1


def reduce_word(bytes word, trie):
    cdef const int[::1] child = trie.child
    cdef const int[::1] rule_at = trie.rule_at
    cdef const unsigned char[::1] rhs = trie.rhs_data
    cdef const int[::1] rhs_off = trie.rhs_offsets
    cdef const int[::1] lhs_len = trie.lhs_lengths
    cdef int nl = trie.nletters
    cdef Py_ssize_t n = len(word)
    cdef const unsigned char* w = word
    if n == 0 or rule_at.shape[0] == 0:
        return word
    cdef unsigned char* st = <unsigned char*> malloc(2 * n)
    if st == NULL:
        raise MemoryError()
    cdef Py_ssize_t m
    cdef const unsigned char* rhs_ptr = &rhs[0] if rhs.shape[0] > 0 else <const unsigned char*> st
    try:
        m = _reduce(w, n, st, st + n, &child[0], &rule_at[0], rhs_ptr,
                    &rhs_off[0], &lhs_len[0], nl)
        return st[:m]
    finally:
        free(st)


def reduce_rows(rows, trie):
    cdef const unsigned char[:, ::1] src = np.ascontiguousarray(rows, dtype=np.uint8)
    cdef Py_ssize_t n = src.shape[0]
    cdef Py_ssize_t L = src.shape[1]
    out_arr = np.zeros((n, L), dtype=np.uint8)
    len_arr = np.zeros(n, dtype=np.int32)
    if n == 0 or L == 0:
        return out_arr, len_arr
    cdef unsigned char[:, ::1] out = out_arr
    cdef int[::1] lengths = len_arr
    cdef const int[::1] child = trie.child
    cdef const int[::1] rule_at = trie.rule_at
    cdef const unsigned char[::1] rhs = trie.rhs_data
    cdef const int[::1] rhs_off = trie.rhs_offsets
    cdef const int[::1] lhs_len = trie.lhs_lengths
    cdef int nl = trie.nletters
    cdef unsigned char* st = <unsigned char*> malloc(2 * L)
    if st == NULL:
        raise MemoryError()
    cdef const unsigned char* rhs_ptr = &rhs[0] if rhs.shape[0] > 0 else <const unsigned char*> st
    cdef Py_ssize_t i, j, m
    try:
        with nogil:
            for i in range(n):
                m = _reduce(&src[i, 0], L, st, st + L, &child[0], &rule_at[0], rhs_ptr,
                            &rhs_off[0], &lhs_len[0], nl)
                for j in range(m):
                    out[i, j] = st[j]
                lengths[i] = <int> m
    finally:
        free(st)
    return out_arr, len_arr


def irreducible_mask(words, trie):
    cdef const unsigned char[:, ::1] w = np.ascontiguousarray(words, dtype=np.uint8)
    cdef const int[::1] child = trie.child
    cdef const int[::1] rule_at = trie.rule_at
    cdef int nl = trie.nletters
    cdef Py_ssize_t n = w.shape[0]
    cdef Py_ssize_t L = w.shape[1]
    mask_arr = np.ones((n, nl), dtype=np.uint8)
    cdef unsigned char[:, ::1] mask = mask_arr
    cdef Py_ssize_t i, j
    cdef int x, node
    with nogil:
        for i in range(n):
            for x in range(nl):
                node = child[x]
                if node < 0:
                    continue
                if rule_at[node] >= 0:
                    mask[i, x] = 0
                    continue
                j = L - 1
                while j >= 0:
                    node = child[node * nl + w[i, j]]
                    if node < 0:
                        break
                    if rule_at[node] >= 0:
                        mask[i, x] = 0
                        break
                    j -= 1
    return mask_arr.astype(bool)
