"""Divisor classes on blow-ups of the plane at general points.

Lattice arithmetic, Weyl reduction, catalogs of exceptional and isolated
classes, cohomology predictions, k-cluster separation tests and a
finite-field oracle.
"""

from .kernels import BACKEND
from .lattice import (
    DivisorClass,
    RankMismatchError,
    anticanonical_class,
    arithmetic_genus,
    basis_class,
    canonical_class,
    euler_characteristic,
    format_class,
    intersect,
    parse_class,
    pullback_extend,
    self_intersection,
)
from .weyl import classify_standardness, reduce, semistandard_decompose

__all__ = [
    "BACKEND",
    "DivisorClass",
    "RankMismatchError",
    "anticanonical_class",
    "arithmetic_genus",
    "basis_class",
    "canonical_class",
    "classify_standardness",
    "euler_characteristic",
    "format_class",
    "intersect",
    "parse_class",
    "pullback_extend",
    "reduce",
    "self_intersection",
    "semistandard_decompose",
]

__version__ = "0.1.0"
