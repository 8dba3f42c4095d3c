# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np
from libc.stdint cimport int8_t, int32_t, int64_t

ctypedef int32_t i32
ctypedef int64_t i64

BACKEND = "cython"


cdef void _buckets(const i32[::1] T, i32[::1] bkt, Py_ssize_t K, bint end) noexcept nogil:
    cdef Py_ssize_t i, n = T.shape[0]
    cdef i32 total = 0
    for i in range(K):
        bkt[i] = 0
    for i in range(n):
        bkt[T[i]] += 1
    for i in range(K):
        total += bkt[i]
        bkt[i] = total if end else total - bkt[i]


cdef inline bint _is_lms(const int8_t[::1] t, Py_ssize_t i) noexcept nogil:
    return i > 0 and t[i] == 1 and t[i - 1] == 0


cdef void _induce(const i32[::1] T, i32[::1] SA, const int8_t[::1] t,
                  i32[::1] bkt, Py_ssize_t K) noexcept nogil:
    cdef Py_ssize_t i, n = T.shape[0]
    cdef i32 j
    _buckets(T, bkt, K, False)
    for i in range(n):
        j = SA[i] - 1
        if j >= 0 and t[j] == 0:
            SA[bkt[T[j]]] = j
            bkt[T[j]] += 1
    _buckets(T, bkt, K, True)
    for i in range(n - 1, -1, -1):
        j = SA[i] - 1
        if j >= 0 and t[j] == 1:
            bkt[T[j]] -= 1
            SA[bkt[T[j]]] = j


cdef void _sais(i32[::1] T, i32[::1] SA, Py_ssize_t K):
    # T ends with a unique smallest sentinel 0; SA has len(T) slots.
    cdef Py_ssize_t n = T.shape[0]
    cdef Py_ssize_t i, j, d, n1, name
    cdef i32 pos, prev
    cdef bint diff
    t_arr = np.zeros(n, dtype=np.int8)
    bkt_arr = np.empty(K, dtype=np.int32)
    cdef int8_t[::1] t = t_arr
    cdef i32[::1] bkt = bkt_arr

    with nogil:
        t[n - 1] = 1
        for i in range(n - 2, -1, -1):
            if T[i] < T[i + 1] or (T[i] == T[i + 1] and t[i + 1] == 1):
                t[i] = 1
        _buckets(T, bkt, K, True)
        for i in range(n):
            SA[i] = -1
        for i in range(1, n):
            if _is_lms(t, i):
                bkt[T[i]] -= 1
                SA[bkt[T[i]]] = <i32>i
        _induce(T, SA, t, bkt, K)

        n1 = 0
        for i in range(n):
            if _is_lms(t, SA[i]):
                SA[n1] = SA[i]
                n1 += 1
        for i in range(n1, n):
            SA[i] = -1
        name = 0
        prev = -1
        for i in range(n1):
            pos = SA[i]
            diff = False
            for d in range(n):
                if prev == -1 or T[pos + d] != T[prev + d] or t[pos + d] != t[prev + d]:
                    diff = True
                    break
                elif d > 0 and (_is_lms(t, pos + d) or _is_lms(t, prev + d)):
                    break
            if diff:
                name += 1
                prev = pos
            SA[n1 + pos // 2] = <i32>(name - 1)
        j = n - 1
        for i in range(n - 1, n1 - 1, -1):
            if SA[i] >= 0:
                SA[j] = SA[i]
                j -= 1

    cdef i32[::1] s1 = SA[n - n1:]
    cdef i32[::1] sa1 = SA[:n1]
    if name < n1:
        _sais(s1, sa1, name)
    else:
        for i in range(n1):
            sa1[s1[i]] = <i32>i

    with nogil:
        _buckets(T, bkt, K, True)
        j = 0
        for i in range(1, n):
            if _is_lms(t, i):
                s1[j] = <i32>i
                j += 1
        for i in range(n1):
            sa1[i] = s1[sa1[i]]
        for i in range(n1, n):
            SA[i] = -1
        for i in range(n1 - 1, -1, -1):
            pos = SA[i]
            SA[i] = -1
            bkt[T[pos]] -= 1
            SA[bkt[T[pos]]] = pos
        _induce(T, SA, t, bkt, K)


def suffix_array(s, alphabet_size):
    """Suffix array by SA-IS in O(n)."""
    cdef Py_ssize_t n = len(s)
    if n == 0:
        return np.empty(0, dtype=np.int32)
    T = np.empty(n + 1, dtype=np.int32)
    T[:n] = s
    T[:n] += 1
    T[n] = 0
    SA = np.empty(n + 1, dtype=np.int32)
    _sais(T, SA, int(T.max()) + 1)
    return SA[1:].copy()


def lcp_array(const i32[::1] s, const i32[::1] sa):
    cdef Py_ssize_t n = s.shape[0]
    rank_arr = np.empty(n, dtype=np.int32)
    lcp_arr = np.zeros(n, dtype=np.int32)
    cdef i32[::1] rank = rank_arr
    cdef i32[::1] lcp = lcp_arr
    cdef Py_ssize_t i, j, r, h = 0
    with nogil:
        for r in range(n):
            rank[sa[r]] = <i32>r
        for i in range(n):
            r = rank[i]
            if r > 0:
                j = sa[r - 1]
                while i + h < n and j + h < n and s[i + h] == s[j + h]:
                    h += 1
                lcp[r] = <i32>h
                if h:
                    h -= 1
            else:
                h = 0
    return rank_arr, lcp_arr


def smaller_neighbours(const i32[::1] sa):
    cdef Py_ssize_t n = sa.shape[0]
    prev_arr = np.empty(n, dtype=np.int32)
    next_arr = np.empty(n, dtype=np.int32)
    stack_arr = np.empty(n, dtype=np.int32)
    cdef i32[::1] prev_src = prev_arr
    cdef i32[::1] next_src = next_arr
    cdef i32[::1] stack = stack_arr
    cdef Py_ssize_t r, top
    cdef i32 p
    with nogil:
        top = 0
        for r in range(n):
            p = sa[r]
            while top > 0 and stack[top - 1] > p:
                top -= 1
            prev_src[p] = stack[top - 1] if top > 0 else -1
            stack[top] = p
            top += 1
        top = 0
        for r in range(n - 1, -1, -1):
            p = sa[r]
            while top > 0 and stack[top - 1] > p:
                top -= 1
            next_src[p] = stack[top - 1] if top > 0 else -1
            stack[top] = p
            top += 1
    return prev_arr, next_arr


cdef inline Py_ssize_t _lcp_direct(const i32[::1] s, Py_ssize_t n, Py_ssize_t i,
                                   Py_ssize_t j) noexcept nogil:
    cdef Py_ssize_t h = 0
    if j < 0:
        return 0
    while i + h < n and s[i + h] == s[j + h]:
        h += 1
    return h


cdef inline i32 _rightmost(const i32[::1] sa, const i32[::1] lcp, Py_ssize_t n,
                           Py_ssize_t r, Py_ssize_t i, Py_ssize_t t) noexcept nogil:
    cdef i32 best = -1
    cdef i32 p
    cdef Py_ssize_t k = r
    while k > 0 and lcp[k] >= t:
        k -= 1
        p = sa[k]
        if p < i and p > best:
            best = p
    k = r + 1
    while k < n and lcp[k] >= t:
        p = sa[k]
        if p < i and p > best:
            best = p
        k += 1
    return best


def factor_lengths(const i32[::1] s, const i32[::1] prev_src, const i32[::1] next_src):
    cdef Py_ssize_t n = s.shape[0]
    out_arr = np.empty(n, dtype=np.int32)
    cdef i32[::1] out = out_arr
    cdef Py_ssize_t i, a, b
    with nogil:
        for i in range(n):
            a = _lcp_direct(s, n, i, prev_src[i])
            b = _lcp_direct(s, n, i, next_src[i])
            out[i] = <i32>(a if a > b else b)
    return out_arr


def rightmost_sources(const i32[::1] sa, const i32[::1] rank, const i32[::1] lcp,
                      const i32[::1] positions, const i32[::1] lengths):
    cdef Py_ssize_t n = sa.shape[0]
    cdef Py_ssize_t q, m = positions.shape[0]
    out_arr = np.empty(m, dtype=np.int32)
    cdef i32[::1] out = out_arr
    with nogil:
        for q in range(m):
            if lengths[q] > 0:
                out[q] = _rightmost(sa, lcp, n, rank[positions[q]], positions[q], lengths[q])
            else:
                out[q] = -1
    return out_arr


def greedy_factorize(const i32[::1] s, const i32[::1] sa, const i32[::1] rank,
                     const i32[::1] lcp, const i32[::1] prev_src,
                     const i32[::1] next_src, bint nonclassical):
    cdef Py_ssize_t n = s.shape[0]
    len_arr = np.empty(n, dtype=np.int32)
    src_arr = np.empty(n, dtype=np.int32)
    cdef i32[::1] lengths = len_arr
    cdef i32[::1] sources = src_arr
    cdef Py_ssize_t i = 0, z = 0, a, b, longest, ell, copied
    with nogil:
        while i < n:
            a = _lcp_direct(s, n, i, prev_src[i])
            b = _lcp_direct(s, n, i, next_src[i])
            longest = a if a > b else b
            if nonclassical:
                if longest == 0:
                    ell = 1
                    copied = 0
                else:
                    ell = longest
                    copied = longest
            else:
                ell = longest + 1
                if ell > n - i:
                    ell = n - i
                copied = ell - 1
            lengths[z] = <i32>ell
            sources[z] = _rightmost(sa, lcp, n, rank[i], i, copied) if copied else -1
            z += 1
            i += ell
    return len_arr[:z].copy(), src_arr[:z].copy()


def optimal_parse(const i32[::1] s, const i64[::1] len_d, const i64[::1] len_l,
                  const i64[::1] len_c, bint nonclassical, i64 tag_bits):
    cdef Py_ssize_t n = s.shape[0]
    dist_arr = np.zeros(n + 1, dtype=np.int64)
    ell_arr = np.zeros(n, dtype=np.int32)
    src_arr = np.full(n, -1, dtype=np.int32)
    row_arr = np.zeros(n + 1, dtype=np.int32)
    cdef i64[::1] dist = dist_arr
    cdef i32[::1] ell_choice = ell_arr
    cdef i32[::1] src_choice = src_arr
    cdef i32[::1] row = row_arr
    cdef Py_ssize_t i, j, t, ell, m, v, cap, d, best_ell, best_src
    cdef i64 best, cost
    cdef i32 c
    with nogil:
        for i in range(n - 1, -1, -1):
            c = s[i]
            for j in range(i):
                if s[j] == c:
                    row[j] = row[j + 1] + 1
                else:
                    row[j] = 0
            if nonclassical:
                best = tag_bits + len_c[c] + dist[i + 1]
                cap = n - i
            else:
                best = len_d[0] + len_l[1] + len_c[c] + dist[i + 1]
                cap = n - i - 1
            best_ell = 1
            best_src = -1
            m = 0
            if cap > 0:
                for j in range(i - 1, -1, -1):
                    v = row[j]
                    if v > m:
                        if v > cap:
                            v = cap
                        d = i - 1 - j
                        for t in range(m + 1, v + 1):
                            if nonclassical:
                                ell = t
                                cost = tag_bits + len_d[d] + len_l[ell] + dist[i + ell]
                            else:
                                ell = t + 1
                                cost = len_d[d] + len_l[ell] + len_c[s[i + ell - 1]] + dist[i + ell]
                            if cost < best or (cost == best and ell > best_ell):
                                best = cost
                                best_ell = ell
                                best_src = j
                        m = v
                        if m >= cap:
                            break
            dist[i] = best
            ell_choice[i] = <i32>best_ell
            src_choice[i] = <i32>best_src
    return int(dist_arr[0]), ell_arr, src_arr
