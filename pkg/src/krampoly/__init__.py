"""Exact Krammer-polynomial invariants of plane curve complements.

Core objects: Laurent polynomials over Z in t and q, dense matrices over that
ring, braid words, the Lawrence-Krammer and reduced Burau representations,
Libgober matrices of braid monodromies, and the gcd-of-minors invariants they
define.
"""

from __future__ import annotations

from .braid import BraidWord, FreeGroupWord
from .curves import (
    CompletelyReducibleCurve,
    CurveReport,
    OneFiberFamily,
    SingularFiberInfo,
    analyze,
    one_fiber_monodromy,
    partial_fiber_monodromy,
    singular_fibers,
)
from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    IrrationalCollisionUnresolved,
    KrampolyError,
    NegativePowerOfNonUnit,
    NotDivisible,
    NotSquare,
    ParseError,
    PartTooSmall,
)
from .laurent import LaurentPoly, exact_div, format_poly, gcd, parse_poly
from .libgober import (
    InvariantResult,
    MonodromyList,
    alexander_polynomial,
    krammer_polynomial,
    libgober_matrix,
)
from .polymatrix import PolyMatrix
from .representations import (
    EssentialEigenvector,
    burau_reduced_generator,
    burau_word,
    essential_eigenvector,
    krammer_basis,
    krammer_dimension,
    krammer_generator,
    krammer_word,
    nontrivial_column,
)

__version__ = "0.1.0"

__all__ = [
    "BraidWord",
    "CompletelyReducibleCurve",
    "CurveReport",
    "DimensionMismatch",
    "EssentialEigenvector",
    "FreeGroupWord",
    "IndexOutOfRange",
    "InvariantResult",
    "IrrationalCollisionUnresolved",
    "KrampolyError",
    "LaurentPoly",
    "MonodromyList",
    "NegativePowerOfNonUnit",
    "NotDivisible",
    "NotSquare",
    "OneFiberFamily",
    "ParseError",
    "PartTooSmall",
    "PolyMatrix",
    "SingularFiberInfo",
    "__version__",
    "alexander_polynomial",
    "analyze",
    "burau_reduced_generator",
    "burau_word",
    "essential_eigenvector",
    "exact_div",
    "format_poly",
    "gcd",
    "krammer_basis",
    "krammer_dimension",
    "krammer_generator",
    "krammer_polynomial",
    "krammer_word",
    "libgober_matrix",
    "nontrivial_column",
    "one_fiber_monodromy",
    "parse_poly",
    "partial_fiber_monodromy",
    "singular_fibers",
]
