"""Libgober matrices of braid monodromies and their gcd-of-minors invariants.

A monodromy list holds one braid word per singular fiber.  Stacking the blocks
K(w_j) - I gives the Libgober matrix; the Krammer polynomial is the normalized
gcd of its maximal minors.  Full minor enumeration over C(N, d) row subsets can
explode for several fibers, so `krammer_polynomial` accepts a cap: a capped run
reports the partial gcd with exact=False, and that value is always a multiple
of the true invariant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braid import BraidWord
from .errors import DimensionMismatch
from .laurent import LaurentPoly
from .polymatrix import PolyMatrix
from .representations import burau_word, krammer_dimension, krammer_word


@dataclass(frozen=True)
class MonodromyList:
    """Ordered local monodromies, one braid word per singular fiber."""

    strands: int
    words: tuple[BraidWord, ...]

    def __post_init__(self):
        words = tuple(self.words)
        object.__setattr__(self, "words", words)
        if not words:
            raise DimensionMismatch("monodromy list needs at least one word")
        for w in words:
            if w.strands != self.strands:
                raise DimensionMismatch(
                    f"word on {w.strands} strands in a {self.strands}-strand list"
                )

    @classmethod
    def single(cls, w: BraidWord) -> "MonodromyList":
        return cls(w.strands, (w,))

    @classmethod
    def parse(cls, strands: int, texts: list[str]) -> "MonodromyList":
        return cls(strands, tuple(BraidWord.parse(s, strands) for s in texts))

    def to_json(self) -> dict:
        return {"n": self.strands, "words": [w.to_text() for w in self.words]}


@dataclass(frozen=True)
class InvariantResult:
    """Global invariant plus the per-fiber local data it was built from.

    polynomial is the normalized gcd of the enumerated maximal minors; when
    exact is False the cap stopped enumeration early and polynomial is only
    known to be a multiple of the true invariant.  per_fiber_polynomials[j] is
    the normalized determinant of block j alone.
    """

    libgober_matrix: PolyMatrix
    polynomial: LaurentPoly
    per_fiber_polynomials: tuple[LaurentPoly, ...]
    exact: bool
    minors_enumerated: int

    def to_json(self) -> dict:
        return {
            "polynomial": self.polynomial.to_json_terms(),
            "per_fiber": [p.to_json_terms() for p in self.per_fiber_polynomials],
            "exact": self.exact,
            "minors_enumerated": self.minors_enumerated,
        }


def libgober_matrix(m: MonodromyList) -> PolyMatrix:
    """Vertical stack of K(w_j) - I blocks in fiber order (N x d, N = r*d)."""
    return PolyMatrix.vstack([krammer_word(w).sub_identity() for w in m.words])


def krammer_polynomial(m: MonodromyList, minor_cap: int | None = None) -> InvariantResult:
    """Normalized gcd of the order-d minors of the Libgober matrix.

    d = C(n,2).  For a single fiber there is exactly one minor (the block
    determinant).  minor_cap, when given, bounds how many minors are
    enumerated; hitting it yields exact=False.
    """
    d = krammer_dimension(m.strands)
    blocks = [krammer_word(w).sub_identity() for w in m.words]
    per_fiber = tuple(b.det().normalize() for b in blocks)
    stacked = PolyMatrix.vstack(blocks)
    if len(blocks) == 1:
        return InvariantResult(
            libgober_matrix=stacked,
            polynomial=per_fiber[0],
            per_fiber_polynomials=per_fiber,
            exact=True,
            minors_enumerated=1,
        )
    poly, exact, count = stacked.minors_gcd_capped(d, minor_cap)
    return InvariantResult(
        libgober_matrix=stacked,
        polynomial=poly.normalize(),
        per_fiber_polynomials=per_fiber,
        exact=exact,
        minors_enumerated=count,
    )


def alexander_polynomial(m: MonodromyList) -> LaurentPoly:
    """Same gcd-of-minors construction under reduced Burau; one-variable in t."""
    d = m.strands - 1
    blocks = [burau_word(w).sub_identity() for w in m.words]
    stacked = PolyMatrix.vstack(blocks)
    if len(blocks) == 1:
        return blocks[0].det().normalize()
    return stacked.minors_gcd(d)
