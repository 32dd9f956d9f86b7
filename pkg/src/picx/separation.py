"""Necessary conditions for a class to separate k-clusters, and related searches.

A standard class H with ``chi(H) >= 3k`` and ``m_r >= k - 1`` is expected to
separate k-clusters unless some isolated curve E of genus ``a`` meets it too
little: ``H.E < 2a - 1 + k`` for ``a <= k`` or ``H.E < a + 2k - 1`` for
``k < a <= 4k/3``. The curve need not live on X_r itself, so H is also pulled
back to X_(r+delta).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import kernels
from .catalog import enumerate_isolated
from .hh import is_nef, predicted_h0
from .lattice import (
    DivisorClass,
    arithmetic_genus,
    canonical_class,
    class_to_json,
    degree_k,
    euler_characteristic,
    intersect,
    pad_to,
    pullback_extend,
    self_intersection,
)
from .weyl import STANDARD, apply_word, inverse_word, reduce

PASSES = "passes"
FAILS = "fails"
HYPOTHESES_NOT_MET = "hypotheses-not-met"

SEPARATES = "separates"
INCONCLUSIVE = "inconclusive"
OBSTRUCTED = "obstructed"


def max_genus(k: int) -> int:
    return 4 * k // 3


def thresholds(k: int, a: int) -> int:
    """Least admissible value of H.E for an isolated curve E of genus ``a``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if not 0 <= a <= max_genus(k):
        raise ValueError(f"genus {a} out of range 0..{max_genus(k)} for k={k}")
    return 2 * a - 1 + k if a <= k else a + 2 * k - 1


def default_delta_max(r: int, k: int) -> int:
    return max(0, 9 + 3 * max_genus(k) - r)


def default_d_max(a: int, k: int) -> int:
    return 3 * (a + 2 * k)


@dataclass(frozen=True)
class Violation:
    curve: DivisorClass
    genus: int
    threshold: int
    value: int
    delta: int

    def to_json(self) -> dict:
        return {
            "curve": class_to_json(self.curve),
            "genus": self.genus,
            "threshold": self.threshold,
            "value": self.value,
            "delta": self.delta,
        }


@dataclass(frozen=True)
class SeparationReport:
    verdict: str
    k: int
    chi: int
    canonical: DivisorClass
    violations: tuple[Violation, ...]
    hypotheses: dict = field(default_factory=dict)
    delta_used: int = 0
    degree_bounds: dict = field(default_factory=dict)

    @property
    def witness(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "k": self.k,
            "chi": self.chi,
            "canonical": class_to_json(self.canonical),
            "violations": [v.to_json() for v in self.violations],
            "hypothesesChecked": dict(self.hypotheses),
            "deltaUsed": self.delta_used,
            "degreeBounds": {str(a): d for a, d in sorted(self.degree_bounds.items())},
        }


def check_separation(
    h: DivisorClass,
    k: int,
    delta_max: Optional[int] = None,
    d_max: Optional[int] = None,
) -> SeparationReport:
    """Test the necessary conditions on ``h`` for separating k-clusters.

    ``delta_max`` bounds how many extra points are added when looking for
    isolated curves; ``d_max`` caps their degree (default depends on genus).
    Both defaults are recorded in the report. With ``delta > 0`` a curve whose
    last multiplicity is 0 already lives on a smaller rank and is skipped.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    work = pad_to(h, max(h.r, 3))
    res = reduce(work)
    canon = res.canonical
    chi = euler_characteristic(h)
    standard = res.standardness == STANDARD
    hyp = {
        "standard": standard,
        "chiAtLeast3k": chi >= 3 * k,
        "mrAtLeastKminus1": standard and canon.m[-1] >= k - 1,
    }
    if delta_max is None:
        delta_max = default_delta_max(work.r, k)
    if delta_max < 0:
        raise ValueError("delta_max must be non-negative")
    genera = range(1, max_genus(k) + 1)
    bounds = {a: (default_d_max(a, k) if d_max is None else d_max) for a in genera}
    if not all(hyp.values()):
        return SeparationReport(HYPOTHESES_NOT_MET, k, chi, canon, (), hyp, delta_max, bounds)

    found: list[Violation] = []
    for delta in range(delta_max + 1):
        lifted = pullback_extend(canon, delta)
        for a in genera:
            need = thresholds(k, a)
            for curve in enumerate_isolated(a, lifted.r, bounds[a]):
                e = curve.cls
                if delta > 0 and e.m[-1] == 0:
                    continue
                value = intersect(lifted, e)
                if value < need:
                    found.append(Violation(e, a, need, value, delta))
    found.sort(key=lambda v: (v.delta, v.genus, v.value, v.curve.vector()))
    verdict = FAILS if found else PASSES
    return SeparationReport(verdict, k, chi, canon, tuple(found), hyp, delta_max, bounds)


def check_conjecture1(h: DivisorClass, k: int, **kwargs) -> SeparationReport:
    """Same test phrased on the reduced class (the two formulations agree)."""
    work = pad_to(h, max(h.r, 3))
    return check_separation(reduce(work).canonical, k, **kwargs)


# -- adjunction-theoretic sufficient criterion ------------------------------

@dataclass(frozen=True)
class AdjunctionReport:
    verdict: str
    obstruction: Optional[DivisorClass]
    nef_big: bool
    square_bound: bool
    search_bound: int = 0
    complete: bool = False

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "obstruction": None if self.obstruction is None else class_to_json(self.obstruction),
            "nefBig": self.nef_big,
            "squareBound": self.square_bound,
            "searchBound": self.search_bound,
            "complete": self.complete,
        }


def _ceil_half(x: int) -> int:
    return -((-x) // 2)


def _candidate_divisors(n: DivisorClass, h: DivisorClass, k: int, d_hi: int):
    """Yield classes D in the box forced by effectivity of D and N - 2D.

    ``N`` must be standard in its own basis. Pairing D and N - 2D with the
    nef classes E0 - Ei gives ``(m_N,i - d_N + 2d)/2 <= m_i <= d``. Points
    where ``h`` has equal multiplicity are interchangeable, so within each
    such block the entries are generated non-increasing. Partial vectors are
    pruned on ``0 <= N.D < 2k``.
    """
    r = n.r
    blocks: list[list[int]] = []
    for i in range(r):
        if blocks and h.m[blocks[-1][0]] == h.m[i]:
            blocks[-1].append(i)
        else:
            blocks.append([i])
    first_of_block = [False] * r
    for b in blocks:
        first_of_block[b[0]] = True
    w = n.m
    for d in range(0, d_hi + 1):
        lo = [_ceil_half(w[i] - n.d + 2 * d) for i in range(r)]
        hi = [d] * r
        if any(l > u for l, u in zip(lo, hi)):
            continue
        # N.D = d_N d - sum w_i m_i must lie in [0, 2k - 1]
        need_lo = n.d * d - (2 * k - 1)
        need_hi = n.d * d
        rest_max = [0] * (r + 1)
        rest_min = [0] * (r + 1)
        for i in range(r - 1, -1, -1):
            a, b = w[i] * lo[i], w[i] * hi[i]
            rest_max[i] = rest_max[i + 1] + max(a, b)
            rest_min[i] = rest_min[i + 1] + min(a, b)
        m = [0] * r

        def rec(i: int, acc: int, cap: int):
            if acc + rest_max[i] < need_lo or acc + rest_min[i] > need_hi:
                return
            if i == r:
                yield DivisorClass(d, tuple(m))
                return
            top = hi[i] if first_of_block[i] else min(hi[i], cap)
            for x in range(top, lo[i] - 1, -1):
                m[i] = x
                yield from rec(i + 1, acc + w[i] * x, x)

        yield from rec(0, 0, d)


def adjunction_check(h: DivisorClass, k: int, search_bound: Optional[int] = None) -> AdjunctionReport:
    """Look for an obstruction D to the adjunction criterion for separation.

    Requires ``N = H - K`` nef and big with ``N^2 >= 4k + 1``. An obstruction
    is an effective D with N - 2D effective, ``H.D <= 2p - 2 + k`` and
    ``2p - 2 + D^2 < H.D < 2k + D.K`` where ``p`` is the arithmetic genus of
    D. The search is exhaustive for ``deg D <= search_bound`` in a basis where
    N is standard; ``complete`` records whether that bound covers every
    possible D (``deg D <= deg N / 2``). Default: the complete bound.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    work = pad_to(h, max(h.r, 3))
    kc = canonical_class(work.r)
    n = work - kc
    nef = is_nef(n)
    nsq = self_intersection(n)
    nef_big = nef and nsq > 0
    square_bound = nsq >= 4 * k + 1
    if not (nef_big and square_bound):
        return AdjunctionReport(INCONCLUSIVE, None, nef_big, square_bound, search_bound or 0, False)

    red = reduce(n)
    n_std = red.canonical
    h_std = apply_word(work, red.word)
    full = n_std.d // 2
    bound = full if search_bound is None else min(search_bound, full)
    complete = search_bound is None or search_bound >= full
    back = inverse_word(red.word)
    for dcls in _candidate_divisors(n_std, h_std, k, bound):
        if dcls.is_zero():
            continue
        hd = intersect(h_std, dcls)
        p = arithmetic_genus(dcls)
        if not (hd <= 2 * p - 2 + k and 2 * p - 2 + self_intersection(dcls) < hd < 2 * k + degree_k(dcls)):
            continue
        if not predicted_h0(dcls).effective:
            continue
        if not predicted_h0(n_std - 2 * dcls).effective:
            continue
        obstruction = apply_word(dcls, back)
        if work.r != h.r and not any(obstruction.m[h.r:]):
            obstruction = DivisorClass(obstruction.d, obstruction.m[: h.r])
        return AdjunctionReport(OBSTRUCTED, obstruction, nef_big, square_bound, bound, complete)
    return AdjunctionReport(SEPARATES, None, nef_big, square_bound, bound, complete)


# -- search for standard classes failing on genus 1 or 2 curves --------------

@dataclass(frozen=True)
class FailingClass:
    cls: DivisorClass
    chi: int
    violations: tuple[Violation, ...]

    def to_json(self) -> dict:
        return {
            "class": class_to_json(self.cls),
            "chi": self.chi,
            "violations": [v.to_json() for v in self.violations],
        }


def search_failing_classes(
    r: int,
    k: int,
    d_max: int,
    chi_min: int,
    curve_d_max: Optional[int] = None,
) -> list[FailingClass]:
    """Standard classes with ``m_r >= 1`` and ``chi >= chi_min`` that fail on a
    genus-1 or genus-2 isolated curve on X_r itself.

    For each curve E the condition ``H.E <= threshold - 1`` is linear in the
    multiplicities and ``chi >= chi_min`` bounds ``sum m_i(m_i + 1)``, which
    the kernel search prunes on directly.
    """
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    if r < 9:
        raise ValueError("need r >= 9 (no isolated curves of positive genus below)")
    curves = []
    for a in range(1, min(max_genus(k), 2) + 1):
        cap = default_d_max(a, k) if curve_d_max is None else curve_d_max
        for curve in enumerate_isolated(a, r, cap):
            curves.append((curve.cls, a, thresholds(k, a)))
    hits: dict[tuple[int, ...], list[Violation]] = {}
    for d in range(1, d_max + 1):
        quad_max = d * d + 3 * d - 2 * (chi_min - 1)
        if quad_max < r * 2:
            continue
        for e, a, need in curves:
            min_weighted = d * e.d - need + 1
            for m in kernels.pairing_bounded(r, d, 1, e.m, min_weighted, quad_max):
                hcls = DivisorClass(d, m)
                hits.setdefault(hcls.vector(), []).append(
                    Violation(e, a, need, intersect(hcls, e), 0)
                )
    out = []
    for vec in sorted(hits):
        hcls = DivisorClass(vec[0], vec[1:])
        vs = sorted(hits[vec], key=lambda v: (v.genus, v.value, v.curve.vector()))
        out.append(FailingClass(hcls, euler_characteristic(hcls), tuple(vs)))
    return out
