"""Pure-Python implementations of the hot kernels.

These define the reference semantics; ``_ckernels.pyx`` must return
identical results (same vectors, same order).
"""

from __future__ import annotations

import numpy as np


def sorted_vectors(n, cap, total, sumsq, top3_cap=-1, lo=0):
    """Non-increasing integer vectors with a prescribed sum and sum of squares.

    Returns every ``x`` of length ``n`` with ``cap >= x[0] >= ... >= x[n-1] >= lo``,
    ``sum(x) == total`` and ``sum(x*x) == sumsq``. When ``top3_cap >= 0`` the
    three leading entries must also satisfy ``x[0] + x[1] + x[2] <= top3_cap``
    (fewer leading entries are summed when ``n < 3``). Output is in
    lexicographically decreasing order. ``lo`` must be non-negative.
    """
    if lo < 0:
        raise ValueError("lo must be non-negative")
    out = []
    buf = [0] * n

    def rec(i, c, s, q, head):
        rem = n - i
        if rem == 0:
            if s == 0 and q == 0:
                out.append(tuple(buf))
            return
        # feasibility of the remaining block with entries in [lo, c]
        if s < lo * rem or s > c * rem:
            return
        if rem * q < s * s:
            return
        if q > (c + lo) * s - rem * c * lo:
            return
        hi = min(c, s - lo * (rem - 1))
        if top3_cap >= 0 and i < 3:
            hi = min(hi, top3_cap - head)
        low = max(lo, -(-s // rem))
        for x in range(hi, low - 1, -1):
            buf[i] = x
            rec(i + 1, x, s - x, q - x * x, head + x if i < 3 else head)

    if n == 0:
        return [()] if total == 0 and sumsq == 0 else []
    rec(0, cap, total, sumsq, 0)
    return out


def pairing_bounded(n, d, lo, weights, min_weighted, quad_max):
    """Standard-shaped vectors meeting a weighted lower bound.

    Returns every non-increasing ``x`` of length ``n`` with
    ``d >= x[0] >= ... >= x[n-1] >= lo``, ``x[0] + x[1] + x[2] <= d``,
    ``sum(w*x) >= min_weighted`` and ``sum(x*x + x) <= quad_max``.
    Weights must be non-negative. Order: lexicographically decreasing.
    """
    if lo < 0:
        raise ValueError("lo must be non-negative")
    w = [int(v) for v in weights]
    if len(w) != n or any(v < 0 for v in w):
        raise ValueError("weights must be n non-negative integers")
    tail = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        tail[i] = tail[i + 1] + w[i]
    out = []
    buf = [0] * n
    base = lo * lo + lo

    def rec(i, c, ws, qs, head):
        if i == n:
            if ws >= min_weighted and qs <= quad_max:
                out.append(tuple(buf))
            return
        rem = n - i
        if ws + c * tail[i] < min_weighted:
            return
        if qs + rem * base > quad_max:
            return
        hi = c
        if i < 3:
            hi = min(hi, d - head)
        for x in range(hi, lo - 1, -1):
            # entries only shrink from here, so a failing weighted bound is final
            if ws + x * tail[i] < min_weighted:
                break
            if qs + x * x + x + (rem - 1) * base > quad_max:
                continue
            buf[i] = x
            rec(i + 1, x, ws + w[i] * x, qs + x * x + x, head + x if i < 3 else head)

    rec(0, d, 0, 0, 0)
    return out


def rank_mod_p(matrix, p):
    """Rank of an integer matrix over F_p (p an odd prime below 2**31)."""
    a = np.array(matrix, dtype=np.int64, copy=True)
    if a.ndim != 2:
        raise ValueError("matrix must be 2-dimensional")
    a %= p
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        below = a[rank + 1:, col].copy()
        if below.any():
            a[rank + 1:] = (a[rank + 1:] - np.outer(below, a[rank]) % p) % p
        rank += 1
    return rank
