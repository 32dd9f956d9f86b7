# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``.

Same signatures, same results, same output order. Entries are C ``long long``;
callers keep magnitudes in the desk-scale range (|x| < 2**31).
"""

from libc.stdlib cimport malloc, free

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef long long i64


cdef inline i64 _max(i64 a, i64 b) noexcept nogil:
    return a if a > b else b


cdef inline i64 _min(i64 a, i64 b) noexcept nogil:
    return a if a < b else b


cdef inline i64 _ceil_div(i64 a, i64 b) noexcept nogil:
    # b > 0
    if a >= 0:
        return (a + b - 1) // b
    return -((-a) // b)


cdef void _sv_rec(int i, int n, i64 c, i64 s, i64 q, i64 head,
                  i64 top3_cap, i64 lo, i64* buf, list out):
    cdef int rem = n - i
    cdef i64 hi, low, x
    if rem == 0:
        if s == 0 and q == 0:
            out.append(tuple([buf[j] for j in range(n)]))
        return
    if s < lo * rem or s > c * rem:
        return
    if rem * q < s * s:
        return
    if q > (c + lo) * s - rem * c * lo:
        return
    hi = _min(c, s - lo * (rem - 1))
    if top3_cap >= 0 and i < 3:
        hi = _min(hi, top3_cap - head)
    low = _max(lo, _ceil_div(s, rem))
    x = hi
    while x >= low:
        buf[i] = x
        _sv_rec(i + 1, n, x, s - x, q - x * x, head + x if i < 3 else head,
                top3_cap, lo, buf, out)
        x -= 1


def sorted_vectors(int n, long long cap, long long total, long long sumsq,
                   long long top3_cap=-1, long long lo=0):
    if lo < 0:
        raise ValueError("lo must be non-negative")
    if n == 0:
        return [()] if total == 0 and sumsq == 0 else []
    cdef list out = []
    cdef i64* buf = <i64*> malloc(n * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    try:
        _sv_rec(0, n, cap, total, sumsq, 0, top3_cap, lo, buf, out)
    finally:
        free(buf)
    return out


cdef void _pb_rec(int i, int n, i64 d, i64 lo, i64* w, i64* tail,
                  i64 min_weighted, i64 quad_max, i64 base,
                  i64 c, i64 ws, i64 qs, i64 head, i64* buf, list out):
    cdef int rem
    cdef i64 hi, x
    if i == n:
        if ws >= min_weighted and qs <= quad_max:
            out.append(tuple([buf[j] for j in range(n)]))
        return
    rem = n - i
    if ws + c * tail[i] < min_weighted:
        return
    if qs + rem * base > quad_max:
        return
    hi = c
    if i < 3:
        hi = _min(hi, d - head)
    x = hi
    while x >= lo:
        if ws + x * tail[i] < min_weighted:
            break
        if qs + x * x + x + (rem - 1) * base <= quad_max:
            buf[i] = x
            _pb_rec(i + 1, n, d, lo, w, tail, min_weighted, quad_max, base,
                    x, ws + w[i] * x, qs + x * x + x,
                    head + x if i < 3 else head, buf, out)
        x -= 1


def pairing_bounded(int n, long long d, long long lo, weights,
                    long long min_weighted, long long quad_max):
    if lo < 0:
        raise ValueError("lo must be non-negative")
    wl = [int(v) for v in weights]
    if len(wl) != n or any(v < 0 for v in wl):
        raise ValueError("weights must be n non-negative integers")
    cdef list out = []
    cdef i64* w = <i64*> malloc((n + 1) * sizeof(i64))
    cdef i64* tail = <i64*> malloc((n + 1) * sizeof(i64))
    cdef i64* buf = <i64*> malloc((n + 1) * sizeof(i64))
    cdef int i
    if w == NULL or tail == NULL or buf == NULL:
        free(w); free(tail); free(buf)
        raise MemoryError()
    try:
        for i in range(n):
            w[i] = wl[i]
        tail[n] = 0
        for i in range(n - 1, -1, -1):
            tail[i] = tail[i + 1] + w[i]
        _pb_rec(0, n, d, lo, w, tail, min_weighted, quad_max, lo * lo + lo,
                d, 0, 0, 0, buf, out)
    finally:
        free(w); free(tail); free(buf)
    return out


cdef i64 _inv_mod(i64 a, i64 p) noexcept nogil:
    # a in [1, p), p prime: a^(p-2) mod p
    cdef i64 result = 1
    cdef i64 e = p - 2
    a %= p
    while e > 0:
        if e & 1:
            result = (result * a) % p
        a = (a * a) % p
        e >>= 1
    return result


def rank_mod_p(matrix, long long p):
    a_np = np.array(matrix, dtype=np.int64, copy=True)
    if a_np.ndim != 2:
        raise ValueError("matrix must be 2-dimensional")
    a_np %= p
    cdef cnp.int64_t[:, ::1] a = np.ascontiguousarray(a_np)
    cdef Py_ssize_t rows = a.shape[0]
    cdef Py_ssize_t cols = a.shape[1]
    cdef Py_ssize_t rank = 0, col, r, piv, j
    cdef i64 inv, f, t
    with nogil:
        for col in range(cols):
            if rank == rows:
                break
            piv = -1
            for r in range(rank, rows):
                if a[r, col] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(col, cols):
                    t = a[rank, j]
                    a[rank, j] = a[piv, j]
                    a[piv, j] = t
            inv = _inv_mod(a[rank, col], p)
            for j in range(col, cols):
                a[rank, j] = (a[rank, j] * inv) % p
            for r in range(rank + 1, rows):
                f = a[r, col]
                if f != 0:
                    for j in range(col, cols):
                        a[r, j] = (a[r, j] - f * a[rank, j]) % p
                        if a[r, j] < 0:
                            a[r, j] += p
            rank += 1
    return rank
