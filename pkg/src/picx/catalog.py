"""Named class families on X_r and their enumeration.

Covers exceptional classes, the rational orbit types (pencil, line,
quadratic, ...), isolated curves of a given genus and the decomposition of a
standard class into generating classes.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache, reduce as _fold
from math import factorial, gcd
from typing import Optional

from . import kernels
from .lattice import (
    DivisorClass,
    anticanonical_class,
    arithmetic_genus,
    basis_class,
    canonical_class,
    degree_k,
    euler_characteristic,
    pad_to,
    parse_class,
    self_intersection,
)
from .weyl import STANDARD, e_standardness, reduce, semistandard_decompose


# -- named constants -------------------------------------------------------

def elliptic_generator(i: int, r: int) -> DivisorClass:
    """C_i = -K_r + E_(i+1) + ... + E_r, i.e. (3; 1 x i, 0 x (r-i))."""
    if not 0 <= i <= r:
        raise ValueError(f"C_{i} is not defined on X_{r}")
    return DivisorClass(3, (1,) * i + (0,) * (r - i))


C9 = elliptic_generator(9, 9)
G1 = DivisorClass(4, (2,) + (1,) * 11)
G2 = DivisorClass(6, (2,) * 8 + (1, 1, 1))
G3 = DivisorClass(9, (3,) * 8 + (2, 2))

NAMED = {"C9": C9, "G1": G1, "G2": G2, "G3": G3}

_CALL_RE = re.compile(r"^\s*(K|antiK|E|C)\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*$")


def resolve_class(text: str) -> DivisorClass:
    """Parse a class literal or one of the named constants.

    Accepted names: ``C9``, ``G1``, ``G2``, ``G3``, ``K(r)``, ``antiK(r)``,
    ``E(i,r)`` and ``C(i,r)``.
    """
    key = text.strip()
    if key in NAMED:
        return NAMED[key]
    match = _CALL_RE.match(key)
    if match:
        name, first, second = match.group(1), int(match.group(2)), match.group(3)
        if name in ("K", "antiK"):
            if second is not None:
                raise ValueError(f"{name}(r) takes one argument")
            return canonical_class(first) if name == "K" else anticanonical_class(first)
        if second is None:
            raise ValueError(f"{name}(i,r) takes two arguments")
        if name == "E":
            return basis_class(first, int(second))
        return elliptic_generator(first, int(second))
    return parse_class(text)


# -- recognition -----------------------------------------------------------

def is_exceptional(e: DivisorClass) -> bool:
    if e.r == 0 or self_intersection(e) != -1 or degree_k(e) != -1:
        return False
    work = pad_to(e, max(e.r, 3))
    if reduce(work).standardness == "neither":
        return False
    dec = semistandard_decompose(work)
    return dec.standard.is_zero() and len(dec.pieces) == 1 and dec.pieces[0][0] == 1


@dataclass(frozen=True)
class RationalOrbitKind:
    tag: str
    degree: Optional[int] = None

    @property
    def definition_name(self) -> Optional[str]:
        """Name used for the self-intersection 0/1/2 orbits, when one applies."""
        if self.tag == "pencil":
            return "pencil"
        if self.tag == "line":
            return "line"
        if self.tag == "d-fold-a" and self.degree == 2:
            return "quadratic"
        if self.tag == "exceptional":
            return "exceptional"
        return None

    def representative(self, r: int) -> DivisorClass:
        r = max(r, 3)
        z = (0,) * r
        if self.tag == "exceptional":
            return basis_class(r, r)
        if self.tag == "pencil":
            return DivisorClass(1, (1,) + z[1:])
        if self.tag == "line":
            return DivisorClass(1, z)
        if self.tag == "conic":
            return DivisorClass(2, z)
        d = self.degree
        if self.tag == "d-fold-a":
            return DivisorClass(d, (d - 1, 1) + z[2:])
        return DivisorClass(d, (d - 1,) + z[1:])


def classify_rational_orbit(e: DivisorClass) -> RationalOrbitKind:
    """Identify the Weyl orbit of an irreducible rational class.

    The candidate kind is read off ``E^2``; the reduced representative must
    then coincide with that kind's list representative. ``E^2 = 4`` is the one
    ambiguous value (2E0 against 3E0-2E1-E2) and is settled by the reduction.
    """
    sq = self_intersection(e)
    if sq != -2 - degree_k(e) or sq < -1:
        raise ValueError(f"{e} is not a rational class (need E^2 = -2 - E.K >= -1)")
    work = pad_to(e, max(e.r, 3))
    canonical = reduce(work).canonical
    if sq == -1:
        kinds = [RationalOrbitKind("exceptional")]
    elif sq == 0:
        kinds = [RationalOrbitKind("pencil")]
    elif sq == 1:
        kinds = [RationalOrbitKind("line")]
    elif sq == 4:
        kinds = [RationalOrbitKind("conic"), RationalOrbitKind("d-fold-a", 3)]
    elif sq % 2 == 0:
        kinds = [RationalOrbitKind("d-fold-a", (sq + 2) // 2)]
    else:
        kinds = [RationalOrbitKind("d-fold-b", (sq + 1) // 2)]
    for kind in kinds:
        if kind.representative(work.r) == canonical:
            return kind
    raise ValueError(f"{e} is not a rational class: reduced form {canonical} matches no orbit type")


# -- enumeration -----------------------------------------------------------

def _lex_key(h: DivisorClass):
    return (h.d, h.m)


def enumerate_exceptional(r: int, d_max: int) -> list[DivisorClass]:
    """Sorted exceptional types: d^2 - sum m^2 = -1 and 3d - sum m = 1.

    Multiplicities are non-increasing; ``d = 0`` contributes E_r only.
    Results are ordered by ``(d, m)``.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    if d_max < 0:
        raise ValueError("need d_max >= 0")
    found = [basis_class(r, r)]
    for d in range(1, d_max + 1):
        for m in kernels.sorted_vectors(r, d, 3 * d - 1, d * d + 1, -1, 0):
            found.append(DivisorClass(d, m))
    found.sort(key=_lex_key)
    return found


def permutation_count(h: DivisorClass) -> int:
    """Number of distinct classes obtained by permuting the multiplicities."""
    total = factorial(h.r)
    for c in Counter(h.m).values():
        total //= factorial(c)
    return total


@dataclass(frozen=True)
class IsolatedCurve:
    cls: DivisorClass
    genus: int

    @property
    def label(self) -> str:
        # integrality is known only for small genus
        return "isolated" if self.genus <= 4 else "isolated (lattice-level)"


def _is_primitive(h: DivisorClass) -> bool:
    return _fold(gcd, h.m, abs(h.d)) == 1


@lru_cache(maxsize=4096)
def _isolated_cached(a: int, r: int, d_max: int) -> tuple[IsolatedCurve, ...]:
    out = []
    for d in range(1, d_max + 1):
        for m in kernels.sorted_vectors(r, d, 3 * d + a - 1, d * d - a + 1, d, 0):
            h = DivisorClass(d, m)
            if _is_primitive(h):
                out.append(IsolatedCurve(h, a))
    out.sort(key=lambda c: _lex_key(c.cls))
    return tuple(out)


def enumerate_isolated(a: int, r: int, d_max: int) -> list[IsolatedCurve]:
    """Standard classes E with E^2 = a - 1 = E.K and degree at most ``d_max``.

    Non-primitive solutions (multiples of C9 when a = 1) are not integral and
    are skipped. See :func:`isolated_degree_bound` for completeness.
    """
    if a < 1:
        raise ValueError("genus must be >= 1 (genus 0 is enumerate_exceptional)")
    if r < 3:
        raise ValueError("need r >= 3")
    return list(_isolated_cached(a, r, max(d_max, 0)))


def isolated_degree_bound(a: int, r: int) -> Optional[int]:
    """Largest degree an isolated standard class of genus ``a`` can have on X_r.

    For r <= 8 there are none (E.K < 0 for every standard class of positive
    degree); for r = 9 only C9 (genus 1). ``None`` means no bound is known.
    """
    if r <= 8:
        return 0
    if r == 9:
        return 3 if a == 1 else 0
    return None


def isolated_list_complete(a: int, r: int, d_max: int) -> bool:
    bound = isolated_degree_bound(a, r)
    return bound is not None and d_max >= bound


# -- generating classes ----------------------------------------------------

@dataclass(frozen=True)
class GeneratingDecomposition:
    a: int
    b: int
    c: int
    alpha: tuple[int, ...]  # alpha_3, ..., alpha_r

    def reconstruct(self, r: int) -> DivisorClass:
        z = (0,) * r
        total = DivisorClass(self.a, z)
        if r >= 1:
            total = total + self.b * DivisorClass(1, (1,) + z[1:])
        if r >= 2:
            total = total + self.c * DivisorClass(2, (1, 1) + z[2:])
        for i, coeff in enumerate(self.alpha, start=3):
            total = total + coeff * elliptic_generator(i, r)
        return total

    def is_nonnegative(self) -> bool:
        return min((self.a, self.b, self.c) + self.alpha) >= 0


def generating_coefficients(h: DivisorClass) -> GeneratingDecomposition:
    """Coefficients of ``h`` against the generating classes (any sign)."""
    m = list(h.m) + [0] * max(0, 3 - h.r)
    r = h.r
    alpha = []
    for i in range(3, r + 1):
        nxt = m[i] if i < r else 0
        alpha.append(m[i - 1] - nxt)
    return GeneratingDecomposition(
        a=h.d - m[0] - m[1] - m[2],
        b=m[0] - m[1],
        c=m[1] - m[2],
        alpha=tuple(alpha),
    )


def generating_decomposition(h: DivisorClass) -> GeneratingDecomposition:
    if e_standardness(h) != STANDARD:
        raise ValueError(f"{h} is not standard in its own basis")
    dec = generating_coefficients(h)
    assert dec.is_nonnegative()
    return dec


def genus_summary(h: DivisorClass) -> dict:
    return {
        "self_intersection": self_intersection(h),
        "degree_k": degree_k(h),
        "genus": arithmetic_genus(h),
        "chi": euler_characteristic(h),
    }
