"""Exact characteristic-2 quadratic form algebra.

Field towers over GF(2), quadratic/bilinear form calculus, quartic
extension classification, Witt-kernel generators with verified witnesses,
a formal Witt-class rewriting engine, and the quaternion/Albert-form
Brauer correspondence.
"""

from .fields import (
    DEFAULT_BOUNDS,
    UNKNOWN,
    El,
    Ext,
    F2k,
    GF2,
    RatFunc,
    SolverBounds,
    artin_schreier_solve,
    embed,
    f2_rank,
    f2_relation,
    f2_span_membership,
    square_root,
)
from .poly import Poly

__all__ = [
    "DEFAULT_BOUNDS",
    "UNKNOWN",
    "El",
    "Ext",
    "F2k",
    "GF2",
    "RatFunc",
    "SolverBounds",
    "artin_schreier_solve",
    "embed",
    "f2_rank",
    "f2_relation",
    "f2_span_membership",
    "square_root",
    "Poly",
]

__version__ = "0.1.0"
