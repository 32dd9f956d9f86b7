"""Cohomology predictions that assume the Harbourne-Hirschowitz conjecture.

Effectivity rule: a class is effective iff it is semi-standard and its
standard part ``A`` has ``chi(A) >= 1``. Standard classes are then
non-special with ``h2 = 0``, so ``h0(H) = h0(A) = chi(A)``. The conjecture is
a theorem for r <= 9; predictions for r >= 10 carry ``conditional = True``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce as _fold
from math import gcd
from typing import Optional

from .lattice import (
    DivisorClass,
    canonical_class,
    class_to_json,
    degree_k,
    euler_characteristic,
    pad_to,
    self_intersection,
)
from .weyl import NEITHER, STANDARD, OrthogonalDecomposition, classify_standardness, reduce, semistandard_decompose

PROVEN_RANK = 9


@dataclass(frozen=True)
class H0Prediction:
    h0: int
    h1: int
    h2: int
    chi: int
    effective: bool
    decomposition: Optional[OrthogonalDecomposition]
    conditional: bool

    @property
    def special(self) -> bool:
        return self.effective and self.h1 > 0

    def to_json(self) -> dict:
        dec = None
        if self.decomposition is not None:
            dec = decomposition_to_json(self.decomposition)
        return {
            "h0": self.h0,
            "h1": self.h1,
            "h2": self.h2,
            "chi": self.chi,
            "effective": self.effective,
            "special": self.special,
            "decomposition": dec,
            "conditional": self.conditional,
        }


def decomposition_to_json(dec: OrthogonalDecomposition) -> dict:
    return {
        "standard": class_to_json(dec.standard),
        "pieces": [{"n": n, "class": class_to_json(f)} for n, f in dec.pieces],
    }


def _h0_and_decomposition(h: DivisorClass) -> tuple[int, Optional[OrthogonalDecomposition]]:
    work = pad_to(h, max(h.r, 3))
    res = reduce(work)
    if res.standardness == NEITHER or res.canonical.d < 0:
        return 0, None
    dec = semistandard_decompose(h)
    h0 = max(0, euler_characteristic(dec.standard))
    return h0, (dec if h0 > 0 else None)


def predicted_h0(h: DivisorClass) -> H0Prediction:
    chi = euler_characteristic(h)
    h0, dec = _h0_and_decomposition(h)
    # h0 and h2 cannot both be positive on a rational surface
    h2 = 0 if h0 > 0 else _h0_and_decomposition(canonical_class(h.r) - h)[0]
    h1 = h0 + h2 - chi
    if h1 < 0:
        raise ArithmeticError(f"inconsistent prediction for {h}: h0={h0}, h2={h2}, chi={chi}")
    return H0Prediction(
        h0=h0,
        h1=h1,
        h2=h2,
        chi=chi,
        effective=h0 > 0,
        decomposition=dec,
        conditional=h.r > PROVEN_RANK,
    )


def is_special(h: DivisorClass) -> bool:
    return predicted_h0(h).special


# -- structure of effective classes ----------------------------------------

POSITIVE = "positive"
PENCIL_MULTIPLE = "pencilMultiple"
ELLIPTIC_MULTIPLE = "ellipticMultiple"
ZERO = "zero"


@dataclass(frozen=True)
class StructureReport:
    standard_part: DivisorClass
    pieces: tuple[tuple[int, DivisorClass], ...]
    kind: str
    multiple: Optional[int] = None
    primitive: Optional[DivisorClass] = None

    def to_json(self) -> dict:
        return {
            "standardPart": class_to_json(self.standard_part),
            "exceptionalPieces": [{"n": n, "class": class_to_json(f)} for n, f in self.pieces],
            "kind": self.kind,
            "multiple": self.multiple,
            "primitive": None if self.primitive is None else class_to_json(self.primitive),
        }


def _divide(h: DivisorClass, n: int) -> DivisorClass:
    if h.d % n or any(x % n for x in h.m):
        raise ArithmeticError(f"{h} is not divisible by {n}")
    return DivisorClass(h.d // n, tuple(x // n for x in h.m))


def structure_decompose(h: DivisorClass) -> StructureReport:
    """Sort an effective class by the shape of its standard part ``A``.

    ``A^2 > 0`` is the positive case. ``A^2 = 0`` means ``A`` is ``b`` times a
    pencil class (``A.K = -2b``) or ``m`` times an elliptic class reducing to
    C9 (``A.K = 0``).
    """
    pred = predicted_h0(h)
    if not pred.effective:
        raise ValueError(f"{h} is not effective")
    dec = pred.decomposition
    a = dec.standard
    if a.is_zero():
        return StructureReport(a, dec.pieces, ZERO)
    sq, ak = self_intersection(a), degree_k(a)
    if sq > 0:
        return StructureReport(a, dec.pieces, POSITIVE)
    if sq < 0:
        raise ArithmeticError(f"standard part {a} has negative square")
    if ak < 0:
        b = -ak // 2
        return StructureReport(a, dec.pieces, PENCIL_MULTIPLE, b, _divide(a, b))
    if ak == 0:
        m = _fold(gcd, a.m, abs(a.d))
        prim = _divide(a, m)
        canon = reduce(pad_to(prim, max(prim.r, 9))).canonical
        if canon.d != 3 or canon.m[:9] != (1,) * 9 or any(canon.m[9:]):
            raise ArithmeticError(f"elliptic part {prim} does not reduce to C9")
        return StructureReport(a, dec.pieces, ELLIPTIC_MULTIPLE, m, prim)
    raise ArithmeticError(f"standard part {a} has A^2 = 0 and A.K > 0")


# -- positivity -------------------------------------------------------------

def _require_rank3(h: DivisorClass) -> None:
    if h.r < 3:
        raise ValueError(f"ampleness and nefness are defined here only for r >= 3 (got r={h.r})")


def is_nef(h: DivisorClass) -> bool:
    _require_rank3(h)
    return classify_standardness(h) == STANDARD


def is_ample(h: DivisorClass) -> bool:
    _require_rank3(h)
    res = reduce(h)
    return res.standardness == STANDARD and self_intersection(h) > 0 and res.canonical.m[-1] >= 1
