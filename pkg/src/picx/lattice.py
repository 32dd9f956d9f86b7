"""Exact arithmetic in the Picard lattice of the blow-up X_r of P^2 at r points.

A class ``DivisorClass(d, m)`` stands for ``d*E0 - m1*E1 - ... - mr*Er``:
the stored multiplicities are the *negated* coefficients of the exceptional
classes, so the exceptional class ``Ei`` itself has ``m_i = -1``. The
intersection form is ``A.B = dA*dB - sum(mA_i * mB_i)``.

Values are immutable. Python integers never wrap, but every entry and every
intersection number is checked against the signed 64-bit range so the results
stay reproducible by fixed-width implementations.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)


class RankMismatchError(ValueError):
    """Two classes on blow-ups at different numbers of points were combined."""


def _checked(x: int) -> int:
    if x > INT64_MAX or x < INT64_MIN:
        raise OverflowError(f"integer {x} leaves the signed 64-bit range")
    return x


@dataclass(frozen=True, slots=True)
class DivisorClass:
    d: int
    m: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.m, tuple):
            object.__setattr__(self, "m", tuple(self.m))
        _checked(int(self.d))
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "m", tuple(_checked(int(x)) for x in self.m))

    @property
    def r(self) -> int:
        return len(self.m)

    def vector(self) -> tuple[int, ...]:
        return (self.d,) + self.m

    def _same_rank(self, other: "DivisorClass") -> None:
        if self.r != other.r:
            raise RankMismatchError(
                f"classes have different ranks: r={self.r} and r={other.r}"
            )

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if not isinstance(other, DivisorClass):
            return NotImplemented
        self._same_rank(other)
        return DivisorClass(
            _checked(self.d + other.d),
            tuple(_checked(a + b) for a, b in zip(self.m, other.m)),
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.d, tuple(-x for x in self.m))

    def __mul__(self, k: int) -> "DivisorClass":
        if not isinstance(k, int):
            return NotImplemented
        return DivisorClass(_checked(k * self.d), tuple(_checked(k * x) for x in self.m))

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_class(self)

    def is_zero(self) -> bool:
        return self.d == 0 and not any(self.m)


def intersect(a: DivisorClass, b: DivisorClass) -> int:
    a._same_rank(b)
    total = a.d * b.d - sum(x * y for x, y in zip(a.m, b.m))
    return _checked(total)


def self_intersection(h: DivisorClass) -> int:
    return intersect(h, h)


def canonical_class(r: int) -> DivisorClass:
    """K_r = -3E0 + E1 + ... + Er, stored as (-3; -1, ..., -1)."""
    if r < 0:
        raise ValueError("r must be non-negative")
    return DivisorClass(-3, (-1,) * r)


def anticanonical_class(r: int) -> DivisorClass:
    return -canonical_class(r)


def degree_k(h: DivisorClass) -> int:
    """The pairing H.K."""
    return _checked(-3 * h.d + sum(h.m))


def euler_characteristic(h: DivisorClass) -> int:
    """Riemann-Roch on a rational surface: chi(H) = (H^2 - H.K)/2 + 1."""
    twice = self_intersection(h) - degree_k(h)
    assert twice % 2 == 0, "H^2 - H.K must be even"
    return _checked(twice // 2 + 1)


def arithmetic_genus(h: DivisorClass) -> int:
    """p(H) = (H^2 + H.K)/2 + 1."""
    twice = self_intersection(h) + degree_k(h)
    assert twice % 2 == 0, "H^2 + H.K must be even"
    return _checked(twice // 2 + 1)


def basis_class(i: int, r: int) -> DivisorClass:
    """E0 for ``i == 0``, otherwise the exceptional class Ei (stored m_i = -1)."""
    if not 0 <= i <= r:
        raise ValueError(f"basis index {i} out of range for r={r}")
    if i == 0:
        return DivisorClass(1, (0,) * r)
    m = [0] * r
    m[i - 1] = -1
    return DivisorClass(0, tuple(m))


def pullback_extend(h: DivisorClass, delta: int) -> DivisorClass:
    """Pull back to X_{r+delta}: append ``delta`` zero multiplicities."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    return DivisorClass(h.d, h.m + (0,) * delta)


def pad_to(h: DivisorClass, r: int) -> DivisorClass:
    if r < h.r:
        raise RankMismatchError(f"cannot pad a rank-{h.r} class down to rank {r}")
    return pullback_extend(h, r - h.r)


# -- text and JSON forms ---------------------------------------------------

_INT = r"[+-]?\d+"
_CLASS_RE = re.compile(rf"^\s*({_INT})\s*;\s*((?:{_INT}\s*(?:,\s*{_INT}\s*)*)?)$")


def parse_class(text: str) -> DivisorClass:
    """Parse ``"d;m1,m2,...,mr"`` (whitespace allowed, empty list allowed)."""
    match = _CLASS_RE.match(text)
    if not match:
        raise ValueError(f"not a class literal: {text!r} (expected 'd;m1,m2,...')")
    d = int(match.group(1))
    body = match.group(2).strip()
    m = tuple(int(tok) for tok in body.split(",")) if body else ()
    return DivisorClass(d, m)


def format_class(h: DivisorClass) -> str:
    return f"{h.d};" + ",".join(str(x) for x in h.m)


def class_to_json(h: DivisorClass) -> dict:
    return {"d": h.d, "m": list(h.m)}


def class_from_json(obj) -> DivisorClass:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or set(obj) != {"d", "m"}:
        raise ValueError('class JSON must be an object {"d": int, "m": [int, ...]}')
    d, m = obj["d"], obj["m"]
    if not isinstance(d, int) or isinstance(d, bool):
        raise ValueError("d must be an integer")
    if not isinstance(m, list) or any(not isinstance(x, int) or isinstance(x, bool) for x in m):
        raise ValueError("m must be a list of integers")
    return DivisorClass(d, tuple(m))


def classes_from(vectors: Iterable[Sequence[int]]) -> list[DivisorClass]:
    return [DivisorClass(v[0], tuple(v[1:])) for v in vectors]
