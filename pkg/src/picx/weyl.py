"""Weyl group action on Pic(X_r) and reduction to standard form.

The group is generated by the reflections in the roots
``r0 = E0 - E1 - E2 - E3`` (index 0, the quadratic Cremona transformation)
and ``ri = Ei - E(i+1)`` (index i >= 1, a transposition of m_i and m_(i+1)).
A word is a sequence of root indices applied left to right.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .lattice import DivisorClass, intersect, pad_to

STANDARD = "standard"
SEMI_STANDARD = "semi-standard"
NEITHER = "neither"

MAX_ORBIT_RANK = 6


def root(index: int, r: int) -> DivisorClass:
    """The class of root ``index`` on X_r (self-intersection -2, orthogonal to K)."""
    if index == 0:
        if r < 3:
            raise ValueError(f"root r0 needs r >= 3, got r={r}")
        return DivisorClass(1, (1, 1, 1) + (0,) * (r - 3))
    if not 1 <= index <= r - 1:
        raise ValueError(f"root index {index} out of range for r={r}")
    m = [0] * r
    m[index - 1] = -1
    m[index] = 1
    return DivisorClass(0, tuple(m))


def reflect(h: DivisorClass, index: int) -> DivisorClass:
    """Apply the reflection ``H -> H + <root, H> root``."""
    r = h.r
    if index == 0:
        if r < 3:
            raise ValueError(f"reflection in r0 needs r >= 3, got r={r}")
        t = h.d - h.m[0] - h.m[1] - h.m[2]
        return DivisorClass(h.d + t, (h.m[0] + t, h.m[1] + t, h.m[2] + t) + h.m[3:])
    if not 1 <= index <= r - 1:
        raise ValueError(f"root index {index} out of range for r={r}")
    m = list(h.m)
    m[index - 1], m[index] = m[index], m[index - 1]
    return DivisorClass(h.d, tuple(m))


def apply_word(h: DivisorClass, word: Iterable[int]) -> DivisorClass:
    for index in word:
        h = reflect(h, index)
    return h


def inverse_word(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(reversed(word))


def format_word(word: Sequence[int]) -> str:
    return "[" + ",".join(str(i) for i in word) + "]"


def parse_word(text: str) -> tuple[int, ...]:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"not a Weyl word: {text!r}")
    inner = body[1:-1].strip()
    return tuple(int(tok) for tok in inner.split(",")) if inner else ()


def random_word(r: int, length: int, rng: random.Random) -> tuple[int, ...]:
    lo = 0 if r >= 3 else 1
    if r - 1 < lo:
        return ()
    return tuple(rng.randint(lo, r - 1) for _ in range(length))


@dataclass(frozen=True)
class ReductionResult:
    canonical: DivisorClass
    word: tuple[int, ...]
    standardness: str


def _top3(m: Sequence[int]) -> int:
    return sum(m[:3])


def _is_sorted(m: Sequence[int]) -> bool:
    return all(m[i] >= m[i + 1] for i in range(len(m) - 1))


def e_standardness(h: DivisorClass) -> str:
    """Standardness of ``h`` read in its own basis (no Weyl moves, no sorting)."""
    m = h.m
    if not _is_sorted(m):
        return NEITHER
    m1 = m[0] if m else 0
    m2 = m[1] if len(m) > 1 else 0
    if h.d >= m1 and (not m or m[-1] >= 0) and h.d >= m1 + m2 and h.d >= _top3(m):
        return STANDARD
    if h.d >= 0 and h.d >= m1 and h.d >= _top3(m):
        return SEMI_STANDARD
    return NEITHER


def _sort_recording(m: list[int], word: list[int]) -> None:
    # bubble sort: swaps only strict inversions, so ties keep their order
    n = len(m)
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if m[i] < m[i + 1]:
                m[i], m[i + 1] = m[i + 1], m[i]
                word.append(i + 1)
                changed = True


def _reduce_raw(h: DivisorClass) -> tuple[DivisorClass, tuple[int, ...]]:
    d, m = h.d, list(h.m)
    word: list[int] = []
    _sort_recording(m, word)
    if len(m) >= 3:
        while d >= 0 and d < m[0] + m[1] + m[2]:
            t = d - m[0] - m[1] - m[2]
            d += t
            m[0] += t
            m[1] += t
            m[2] += t
            word.append(0)
            _sort_recording(m, word)
    return DivisorClass(d, tuple(m)), tuple(word)


def reduce(h: DivisorClass) -> ReductionResult:
    """Reduce ``h`` under the Weyl group.

    The canonical class has non-increasing multiplicities and either
    ``d < 0`` or ``d >= m1 + m2 + m3``. Each application of r0 strictly lowers
    the degree, so the loop terminates. For r < 3 only sorting happens; the
    standardness is then computed on the pull-back to X_3.
    """
    canonical, word = _reduce_raw(h)
    if h.r < 3:
        padded, _ = _reduce_raw(pad_to(h, 3))
        return ReductionResult(canonical, word, e_standardness(padded))
    return ReductionResult(canonical, word, e_standardness(canonical))


def classify_standardness(h: DivisorClass) -> str:
    return reduce(h).standardness


def is_standard(h: DivisorClass) -> bool:
    return classify_standardness(h) == STANDARD


def is_semi_standard(h: DivisorClass) -> bool:
    return classify_standardness(h) != NEITHER


@dataclass(frozen=True)
class OrthogonalDecomposition:
    standard: DivisorClass
    pieces: tuple[tuple[int, DivisorClass], ...]

    def reconstruct(self) -> DivisorClass:
        total = self.standard
        for n, f in self.pieces:
            total = total + n * f
        return total


def _decompose_e_semistandard(h: DivisorClass) -> tuple[DivisorClass, list[tuple[int, DivisorClass]]]:
    d, m, r = h.d, h.m, h.r
    pieces: list[tuple[int, DivisorClass]] = []
    if r >= 3 and m[2] < 0 and d < m[0] + m[1]:
        # unextendable branch: the quadratic class 2E0-E1-E2 carries the standard part
        a = DivisorClass(2 * d - m[0] - m[1], (d - m[1], d - m[0]) + (0,) * (r - 2))
        line_pair = DivisorClass(1, (1, 1) + (0,) * (r - 2))
        pieces.append((m[0] + m[1] - d, line_pair))
        start = 2
    else:
        a = DivisorClass(d, tuple(max(x, 0) for x in m))
        start = 0
    for i in range(start, r):
        if m[i] < 0:
            e = [0] * r
            e[i] = -1
            pieces.append((-m[i], DivisorClass(0, tuple(e))))
    return a, pieces


def semistandard_decompose(h: DivisorClass) -> OrthogonalDecomposition:
    """Write a semi-standard class as ``A + sum n_i F_i`` (orthogonal, unique).

    ``A`` is standard, every ``n_i > 0`` and the ``F_i`` are pairwise
    orthogonal exceptional classes; all are expressed in the basis of ``h``.
    """
    work = h if h.r >= 3 else pad_to(h, 3)
    res = reduce(work)
    if res.standardness == NEITHER:
        raise ValueError(f"class {h} is not semi-standard; no orthogonal decomposition")
    a, pieces = _decompose_e_semistandard(res.canonical)
    back = inverse_word(res.word)
    a = apply_word(a, back)
    mapped = [(n, apply_word(f, back)) for n, f in pieces]
    if work is not h:
        a = _truncate(a, h.r)
        mapped = [(n, _truncate(f, h.r)) for n, f in mapped]
    mapped.sort(key=lambda pf: (pf[1].vector(), pf[0]))
    return OrthogonalDecomposition(a, tuple(mapped))


def _truncate(h: DivisorClass, r: int) -> DivisorClass:
    if any(h.m[r:]):
        raise AssertionError(f"decomposition piece {h} is not supported on the first {r} points")
    return DivisorClass(h.d, h.m[:r])


def orbit_pairing_minimum(h: DivisorClass, dclass: DivisorClass) -> int:
    """Minimum of ``H . w(D)`` over the Weyl orbit of a semi-standard ``D``.

    ``H`` must be standard in its own basis; the minimum is attained by the
    reduced (E-semi-standard) representative of ``D``.
    """
    if h.r != dclass.r:
        from .lattice import RankMismatchError

        raise RankMismatchError(f"classes have different ranks: r={h.r} and r={dclass.r}")
    r = max(h.r, 3)
    hp, dp = pad_to(h, r), pad_to(dclass, r)
    if e_standardness(hp) != STANDARD:
        raise ValueError(f"{h} is not standard in its own basis")
    res = reduce(dp)
    if res.standardness == NEITHER:
        raise ValueError(f"{dclass} is not semi-standard")
    return intersect(hp, res.canonical)


def noether_inequality_holds(e: DivisorClass) -> bool:
    """True iff ``d < m1 + m2 + m3`` for an exceptional-type solution."""
    if e.r < 3:
        raise ValueError("Noether's inequality needs r >= 3")
    if e.d < 0 or any(x < 0 for x in e.m):
        raise ValueError(f"{e}: degree and multiplicities must be non-negative")
    if not _is_sorted(e.m):
        raise ValueError(f"{e}: multiplicities must be non-increasing")
    if intersect(e, e) != -1 or (-3 * e.d + sum(e.m)) != -1:
        raise ValueError(f"{e}: not a solution of E^2 = -1 = E.K")
    return e.d < _top3(e.m)


def orbit(h: DivisorClass, max_size: int = 2_000_000) -> set[tuple[int, ...]]:
    """Breadth-first closure of the Weyl orbit of ``h`` (r <= 6 only)."""
    r = h.r
    if r > MAX_ORBIT_RANK:
        raise ValueError(f"orbit enumeration refused for r={r} > {MAX_ORBIT_RANK}")
    gens = list(range(0 if r >= 3 else 1, r))
    seen = {h.vector()}
    queue = deque([h])
    while queue:
        cur = queue.popleft()
        for g in gens:
            nxt = reflect(cur, g)
            key = nxt.vector()
            if key not in seen:
                seen.add(key)
                if len(seen) > max_size:
                    raise RuntimeError(f"orbit of {h} exceeds {max_size} elements")
                queue.append(nxt)
    return seen
