import itertools

import pytest
from hypothesis import assume, given, settings, strategies as st

from picx.catalog import C9, G1, G2, G3, elliptic_generator
from picx.ffield import sample_cluster_separation
from picx.lattice import DivisorClass, euler_characteristic, intersect, pad_to
from picx.separation import (
    FAILS,
    HYPOTHESES_NOT_MET,
    INCONCLUSIVE,
    OBSTRUCTED,
    PASSES,
    SEPARATES,
    adjunction_check,
    check_conjecture1,
    check_separation,
    default_d_max,
    default_delta_max,
    search_failing_classes,
    thresholds,
)
from picx.weyl import STANDARD, apply_word, e_standardness

from conftest import standard_classes, weyl_words

H18 = DivisorClass(13, (9,) + (2,) * 17)
KC8 = 6 * elliptic_generator(8, 8)


class TestThresholds:
    @pytest.mark.parametrize("k,a,want", [(3, 4, 9), (1, 0, 0), (6, 1, 7), (3, 3, 8), (2, 2, 5), (1, 1, 2)])
    def test_values(self, k, a, want):
        assert thresholds(k, a) == want

    @given(st.integers(1, 30))
    def test_continuous_at_k(self, k):
        # the two branches agree at a = k
        assert 2 * k - 1 + k == k + 2 * k - 1 == thresholds(k, k)

    def test_range(self):
        with pytest.raises(ValueError):
            thresholds(3, 5)
        with pytest.raises(ValueError):
            thresholds(-1, 0)

    def test_defaults(self):
        assert default_delta_max(18, 3) == 3
        assert default_delta_max(30, 1) == 0
        assert default_d_max(1, 6) == 39


class TestCheckSeparation:
    def test_genus_four_witness(self):
        rep = check_separation(H18, 3)
        assert rep.verdict == FAILS and rep.chi == 9
        w = rep.witness
        assert w.curve == DivisorClass(6, (4,) + (1,) * 17)
        assert (w.genus, w.value, w.threshold, w.delta) == (4, 8, 9, 0)

    def test_needs_extra_point(self):
        assert check_separation(KC8, 6, delta_max=0).verdict == PASSES
        rep = check_separation(KC8, 6, delta_max=1)
        assert rep.verdict == FAILS
        w = rep.witness
        assert w.curve == C9 and (w.value, w.threshold, w.delta) == (6, 7, 1)

    def test_hypotheses_not_met(self):
        rep = check_separation(DivisorClass(2, (2, 2, 0)), 1)
        assert rep.verdict == HYPOTHESES_NOT_MET and not rep.hypotheses["standard"]
        rep = check_separation(DivisorClass(3, (1,) * 9), 1)
        assert rep.verdict == HYPOTHESES_NOT_MET and not rep.hypotheses["chiAtLeast3k"]
        rep = check_separation(DivisorClass(10, (3,) * 9 + (0,)), 2)
        assert not rep.hypotheses["mrAtLeastKminus1"]

    def test_easy_pass(self):
        rep = check_separation(DivisorClass(5, (1, 1, 1)), 1)
        assert rep.verdict == PASSES and rep.violations == ()
        assert rep.delta_used == default_delta_max(3, 1)

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            check_separation(H18, 0)
        with pytest.raises(ValueError):
            check_separation(H18, 1, delta_max=-1)

    def test_json_keys(self):
        rep = check_separation(KC8, 6, delta_max=1).to_json()
        assert set(rep) == {"verdict", "k", "chi", "canonical", "violations", "hypothesesChecked", "deltaUsed", "degreeBounds"}
        assert rep["violations"][0]["curve"] == {"d": 3, "m": [1] * 9}

    def test_reduced_formulation_agrees(self):
        moved = apply_word(H18, (0, 4, 0, 7))
        a, b = check_separation(moved, 3), check_conjecture1(moved, 3)
        assert a.verdict == b.verdict == FAILS and a.violations == b.violations

    def test_violations_are_real(self):
        rep = check_separation(KC8, 6, delta_max=2)
        for v in rep.violations:
            lifted = pad_to(KC8, v.curve.r)
            assert intersect(lifted, v.curve) == v.value < v.threshold


class TestSeparationProperties:
    @settings(max_examples=40)
    @given(standard_classes(9, 10, 6), st.integers(1, 2), st.data())
    def test_weyl_invariance(self, h, k, data):
        w = data.draw(weyl_words(h.r))
        a = check_separation(h, k, delta_max=1, d_max=9)
        b = check_separation(apply_word(h, w), k, delta_max=1, d_max=9)
        assert a.verdict == b.verdict and a.violations == b.violations

    @settings(max_examples=40)
    @given(standard_classes(8, 10, 6), st.integers(1, 2))
    def test_monotone_in_delta(self, h, k):
        small = check_separation(h, k, delta_max=0, d_max=9)
        big = check_separation(h, k, delta_max=1, d_max=9)
        assert set(small.violations) <= set(big.violations)
        if small.verdict == FAILS:
            assert big.verdict == FAILS

    @settings(max_examples=60)
    @given(standard_classes(3, 9, 8), st.integers(1, 2))
    def test_adjunction_implies_necessary_conditions(self, h, k):
        adj = adjunction_check(h, k)
        rep = check_separation(h, k, delta_max=1, d_max=9)
        assume(rep.verdict != HYPOTHESES_NOT_MET)
        if adj.verdict == SEPARATES and adj.complete:
            assert rep.verdict == PASSES


class TestAdjunction:
    def test_separates(self):
        rep = adjunction_check(DivisorClass(4, (1, 1, 1)), 1)
        assert rep.verdict == SEPARATES and rep.complete and rep.nef_big and rep.square_bound

    def test_square_too_small(self):
        rep = adjunction_check(H18, 3)
        assert rep.verdict == INCONCLUSIVE and not rep.square_bound

    def test_obstructed_by_c8(self):
        rep = adjunction_check(KC8, 6)
        assert rep.verdict == OBSTRUCTED and rep.obstruction == elliptic_generator(8, 8)

    def test_obstructed_by_c9(self):
        rep = adjunction_check(DivisorClass(12, (4,) * 8 + (3,)), 1)
        assert rep.verdict == OBSTRUCTED and rep.obstruction == C9

    def test_partial_search(self):
        rep = adjunction_check(DivisorClass(12, (4,) * 8 + (3,)), 1, search_bound=2)
        assert rep.verdict == SEPARATES and not rep.complete and rep.search_bound == 2

    def test_not_nef(self):
        rep = adjunction_check(DivisorClass(1, (3, 0, 0)), 1)
        assert rep.verdict == INCONCLUSIVE and not rep.nef_big

    def test_k(self):
        with pytest.raises(ValueError):
            adjunction_check(H18, 0)


def brute_failing(r, k, d_max, chi_min):
    curves = [(C9, thresholds(k, 1))]
    if k == 2:
        curves += [(pad_to(g, r), thresholds(k, 2)) for g in (G1, G2, G3) if g.r <= r]
    out = []
    for d in range(1, d_max + 1):
        for m in itertools.combinations_with_replacement(range(d, 0, -1), r):
            h = DivisorClass(d, m)
            if euler_characteristic(h) < chi_min or e_standardness(h) != STANDARD:
                continue
            if any(intersect(h, pad_to(c, r)) < need for c, need in curves):
                out.append(h)
    return sorted(out, key=lambda c: c.vector())


class TestSearch:
    def test_matches_brute_force_k1(self):
        got = [f.cls for f in search_failing_classes(9, 1, 9, 2)]
        assert got == brute_failing(9, 1, 9, 2)

    def test_matches_brute_force_k2(self):
        got = [f.cls for f in search_failing_classes(9, 2, 10, 4)]
        assert got == brute_failing(9, 2, 10, 4)

    def test_contains_c9_multiple_plus_e9(self):
        found = {f.cls for f in search_failing_classes(9, 2, 15, 6)}
        assert 5 * C9 + DivisorClass(0, (0,) * 8 + (-1,)) in found

    def test_small_degree_is_empty(self):
        assert search_failing_classes(9, 2, 5, 6) == []

    def test_records_violations(self):
        for f in search_failing_classes(9, 1, 9, 2):
            assert f.violations and all(v.value < v.threshold for v in f.violations)
            assert f.chi == euler_characteristic(f.cls)

    def test_contract(self):
        with pytest.raises(ValueError):
            search_failing_classes(9, 3, 10, 6)
        with pytest.raises(ValueError):
            search_failing_classes(8, 1, 10, 6)


class TestFourthFamily:
    """Classes mC9 + (E0 - E1) also fail on C9 at rank 9 for k = 2."""

    @pytest.mark.parametrize("m", range(2, 10))
    def test_found_by_search(self, m):
        h = m * C9 + DivisorClass(1, (1,) + (0,) * 8)
        assert h == DivisorClass(3 * m + 1, (m + 1,) + (m,) * 8)
        assert euler_characteristic(h) == 2 * m + 2 and intersect(h, C9) == 2
        assert h in {f.cls for f in search_failing_classes(9, 2, 30, 6)}

    def test_finite_field_confirms_failure(self):
        h = DivisorClass(10, (4,) + (3,) * 8)
        rep = sample_cluster_separation(h, 2, samples=60, seed=0, curves=[C9])
        assert rep["verdict"] == "failure" and rep["witness"]["species"].startswith("on-curve")
