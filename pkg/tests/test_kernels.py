import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from picx import kernels

P31 = 2_147_483_647  # prime above every minor of the small test matrices


def brute_sorted(n, cap, total, sumsq, top3_cap=-1, lo=0):
    out = []
    for m in itertools.product(range(cap, lo - 1, -1), repeat=n):
        if any(m[i] < m[i + 1] for i in range(n - 1)):
            continue
        if sum(m) != total or sum(x * x for x in m) != sumsq:
            continue
        if top3_cap >= 0 and sum(m[:3]) > top3_cap:
            continue
        out.append(m)
    return sorted(out, reverse=True)


def brute_pairing(n, d, lo, w, min_weighted, quad_max):
    out = []
    for m in itertools.product(range(d, lo - 1, -1), repeat=n):
        if any(m[i] < m[i + 1] for i in range(n - 1)) or sum(m[:3]) > d:
            continue
        if sum(a * b for a, b in zip(w, m)) >= min_weighted and sum(x * x + x for x in m) <= quad_max:
            out.append(m)
    return sorted(out, reverse=True)


def rational_rank(rows):
    a = [[Fraction(x) for x in row] for row in rows]
    rank, cols = 0, len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][c] != 0:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


class TestSortedVectors:
    @given(st.integers(0, 5), st.integers(0, 5), st.integers(-1, 12), st.integers(0, 2), st.data())
    def test_brute_force(self, n, cap, top3, lo, data):
        total = data.draw(st.integers(0, n * cap + 1))
        sumsq = data.draw(st.integers(0, n * cap * cap + 1))
        want = brute_sorted(n, cap, total, sumsq, top3, lo)
        assert kernels.sorted_vectors(n, cap, total, sumsq, top3, lo) == want

    def test_all_backends_agree(self, backend):
        for d in range(0, 12):
            got = backend.sorted_vectors(8, d, 3 * d - 1, d * d + 1, -1, 0)
            assert got == kernels.backends()["python"].sorted_vectors(8, d, 3 * d - 1, d * d + 1, -1, 0)

    def test_descending_order(self, backend):
        got = backend.sorted_vectors(6, 6, 12, 30)
        assert got == sorted(got, reverse=True) and len(got) > 1

    def test_empty_vector(self, backend):
        assert backend.sorted_vectors(0, 3, 0, 0) == [()]
        assert backend.sorted_vectors(0, 3, 1, 1) == []

    def test_negative_lo(self, backend):
        with pytest.raises(ValueError):
            backend.sorted_vectors(2, 3, 1, 1, -1, -1)


class TestPairingBounded:
    @given(st.integers(1, 4), st.integers(0, 5), st.integers(0, 1), st.data())
    def test_brute_force(self, n, d, lo, data):
        w = data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
        mw = data.draw(st.integers(-2, 3 * n * d + 1))
        qm = data.draw(st.integers(-1, n * (d * d + d) + 1))
        want = brute_pairing(n, d, lo, w, mw, qm)
        assert kernels.pairing_bounded(n, d, lo, w, mw, qm) == want

    def test_backends_agree(self, backend):
        py = kernels.backends()["python"]
        for d in range(1, 25):
            args = (9, d, 1, (1,) * 9, 3 * d - 2, d * d + 3 * d - 10)
            assert backend.pairing_bounded(*args) == py.pairing_bounded(*args)

    def test_bad_weights(self, backend):
        with pytest.raises(ValueError):
            backend.pairing_bounded(2, 3, 0, (1, -1), 0, 100)
        with pytest.raises(ValueError):
            backend.pairing_bounded(2, 3, 0, (1,), 0, 100)


class TestRankModP:
    @given(st.integers(1, 6), st.integers(1, 6), st.data())
    def test_rank_over_rationals(self, rows, cols, data):
        mat = data.draw(
            st.lists(st.lists(st.integers(0, 3), min_size=cols, max_size=cols), min_size=rows, max_size=rows)
        )
        assert kernels.rank_mod_p(np.array(mat), P31) == rational_rank(mat)

    def test_backends_agree(self, backend):
        rng = random.Random(11)
        for _ in range(20):
            n, m, k = rng.randint(1, 30), rng.randint(1, 30), rng.randint(0, 10)
            b = np.array([[rng.randrange(32003) for _ in range(k)] for _ in range(n)], dtype=np.int64).reshape(n, k)
            c = np.array([[rng.randrange(32003) for _ in range(m)] for _ in range(k)], dtype=np.int64).reshape(k, m)
            a = (b @ c) % 32003 if k else np.zeros((n, m), dtype=np.int64)
            py = kernels.backends()["python"].rank_mod_p(a, 32003)
            assert backend.rank_mod_p(a, 32003) == py <= min(n, m, k)

    def test_does_not_mutate(self, backend):
        a = np.array([[1, 2], [2, 4]], dtype=np.int64)
        backend.rank_mod_p(a, 7)
        assert a.tolist() == [[1, 2], [2, 4]]

    def test_small_prime(self, backend):
        # [[1,1],[1,-1]] has determinant -2: singular mod 2 only
        a = np.array([[1, 1], [1, -1]])
        assert backend.rank_mod_p(a, 2) == 1
        assert backend.rank_mod_p(a, 3) == 2

    def test_dimension_check(self, backend):
        with pytest.raises(ValueError):
            backend.rank_mod_p(np.array([1, 2, 3]), 7)


def test_backend_flag():
    assert kernels.BACKEND in ("compiled", "python")
    assert "python" in kernels.backends()
