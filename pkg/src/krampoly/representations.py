"""Lawrence-Krammer and reduced Burau representations as exact matrices.

Conventions, used consistently across the package:

* Basis of the Krammer module: pairs (i, j) with 1 <= i < j <= n in
  lexicographic order, so the pairs with first index k form the contiguous
  block delta_k of size n-k.
* Row action: vectors are rows and act by v |-> v * M, and the row of
  K(sigma_k) indexed by (i, j) holds the coefficients of the image of
  e_{i,j}.  This is the one convention under which the standard printed B_3
  matrices agree with the case formula below.
* Words act left to right: the matrix of the word [g1, g2] is M(g1) @ M(g2).

Inverse generators are exact: adjugate divided by the (unit) determinant.
Generator matrices are cached per (n, k, sign); the cache is only ever
appended to and a racing first computation is idempotent, so concurrent
readers are safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .braid import BraidWord
from .errors import IndexOutOfRange
from .laurent import LaurentPoly
from .polymatrix import PolyMatrix

_ONE = LaurentPoly.one()
_Q = LaurentPoly.monomial(1, 0, 1)
_QM1 = _Q - _ONE  # q - 1
_1MQ = _ONE - _Q  # 1 - q


def krammer_dimension(n: int) -> int:
    return n * (n - 1) // 2


@lru_cache(maxsize=None)
def krammer_basis(n: int) -> tuple[tuple[int, int], ...]:
    """Ordered basis pairs (i, j), 1 <= i < j <= n, lexicographic."""
    if n < 2:
        raise IndexOutOfRange(f"need >= 2 strands, got {n}")
    return tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))


@lru_cache(maxsize=None)
def _basis_positions(n: int) -> dict[tuple[int, int], int]:
    return {pair: idx for idx, pair in enumerate(krammer_basis(n))}


def basis_index(n: int, i: int, j: int) -> int:
    """0-based position of pair (i, j) in the lex basis."""
    pos = _basis_positions(n).get((i, j))
    if pos is None:
        raise IndexOutOfRange(f"({i},{j}) is not a basis pair for n={n}")
    return pos


def _check_generator_index(n: int, k: int) -> None:
    if not 1 <= k <= n - 1:
        raise IndexOutOfRange(f"generator index {k} outside [1, {n - 1}]")


@lru_cache(maxsize=None)
def krammer_generator(n: int, k: int, sign: int = 1) -> PolyMatrix:
    """Matrix of K(sigma_k^sign) on the C(n,2)-dimensional module."""
    _check_generator_index(n, k)
    if sign == 1:
        return _krammer_positive(n, k)
    if sign == -1:
        return krammer_generator(n, k, 1).inverse_via_adjugate()
    raise IndexOutOfRange(f"sign must be +1 or -1, got {sign}")


def _krammer_positive(n: int, k: int) -> PolyMatrix:
    basis = krammer_basis(n)
    pos = _basis_positions(n)
    m = len(basis)
    entries = [LaurentPoly.zero()] * (m * m)

    def put(row: int, pair: tuple[int, int], value: LaurentPoly) -> None:
        entries[row * m + pos[pair]] = value

    for row, (i, j) in enumerate(basis):
        if i == k and j == k + 1:
            put(row, (k, k + 1), LaurentPoly.monomial(1, 1, 2))  # tq^2
        elif j == k:
            put(row, (i, k), _1MQ)
            put(row, (i, k + 1), _Q)
        elif j == k + 1 and i < k:
            put(row, (i, k), _ONE)
            put(row, (k, k + 1), LaurentPoly.monomial(1, 1, k - i + 1) * _QM1)
        elif i == k and j > k + 1:
            put(row, (k, k + 1), LaurentPoly.monomial(1, 1, 1) * _QM1)
            put(row, (k + 1, j), _Q)
        elif i == k + 1:
            put(row, (k, j), _ONE)
            put(row, (k + 1, j), _1MQ)
        elif i < k and j > k + 1:
            put(row, (i, j), _ONE)
            put(row, (k, k + 1), LaurentPoly.monomial(1, 1, k - i) * _QM1 * _QM1)
        else:  # j < k or i > k + 1: basis vector untouched
            put(row, (i, j), _ONE)
    return PolyMatrix(m, m, entries)


def krammer_word(w: BraidWord) -> PolyMatrix:
    """Product of generator matrices in letter order; empty word gives I."""
    n = w.strands
    result = PolyMatrix.identity(krammer_dimension(n))
    for g in w.letters:
        result = result @ krammer_generator(n, abs(g), 1 if g > 0 else -1)
    return result


def nontrivial_column(n: int, k: int) -> tuple[LaurentPoly, ...]:
    """Column of K(sigma_k) at basis position (k, k+1) - the only column where
    the generator differs from a q-scaled permutation action."""
    _check_generator_index(n, k)
    return krammer_generator(n, k, 1).column_entries(basis_index(n, k, k + 1))


# -- essential-braid eigenvector ----------------------------------------------


@dataclass(frozen=True)
class EssentialEigenvector:
    """Row vector v' in A^m with v'*K(sigma_k) = v' for every k != missing.

    v' is the scaled form of the rational fixed vector built from constants

        x = t*q*(1 - q^(n-i)) / (t*q^i - 1)
        y = t*q^(n-i+1)*(1 - q^i) / (t*q^(n-i) - 1)

    with i = missing; `scale` clears both denominators, so the entry slots
    hold x*scale*q^e, scale*q^e, or y*scale*q^e per the delta-block pattern
    (see `symbolic_pattern`).
    """

    n: int
    missing: int
    scale: LaurentPoly
    entries: tuple[LaurentPoly, ...]

    def as_row_matrix(self) -> PolyMatrix:
        return PolyMatrix(1, len(self.entries), self.entries)

    def is_fixed_by(self, k: int) -> bool:
        row = self.as_row_matrix()
        return row @ krammer_generator(self.n, k, 1) == row

    def symbolic_pattern(self) -> tuple[tuple[str, int], ...]:
        """Per-slot ("x" | "1" | "y", q-exponent) tags in basis order."""
        return eigenvector_pattern(self.n, self.missing)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "missing": self.missing,
            "scale": self.scale.to_json_terms(),
            "entries": [e.to_json_terms() for e in self.entries],
            "basis": [list(p) for p in krammer_basis(self.n)],
        }


def eigenvector_pattern(n: int, missing: int) -> tuple[tuple[str, int], ...]:
    """Unscaled slot pattern: delta_k = [x*q^(k-1) .. x*q^(i-2), 1, q, ..,
    q^(n-i-1)] for k < i, [1, q, .., q^(n-i-1)] for k = i, and
    [y*q^(k-i-1) .. y*q^(n-i-2)] for k > i."""
    _check_eigenvector_args(n, missing)
    i = missing
    slots: list[tuple[str, int]] = []
    for k in range(1, n):
        if k < i:
            slots.extend(("x", e) for e in range(k - 1, i - 1))
            slots.extend(("1", e) for e in range(n - i))
        elif k == i:
            slots.extend(("1", e) for e in range(n - i))
        else:
            slots.extend(("y", e) for e in range(k - i - 1, n - i - 1))
    assert len(slots) == krammer_dimension(n)
    return tuple(slots)


def _check_eigenvector_args(n: int, missing: int) -> None:
    if n < 4:
        raise IndexOutOfRange(f"essential eigenvector needs n >= 4, got n={n}")
    if not 1 < missing < n - 1:
        raise IndexOutOfRange(
            f"missing index must satisfy 1 < i < n-1, got i={missing} for n={n}"
        )


def essential_eigenvector(n: int, missing: int) -> EssentialEigenvector:
    """Fixed row vector of every K(sigma_k), k != missing, scaled into the ring.

    The denominators of x and y are t*q^i - 1 and t*q^(n-i) - 1; the scale is
    their product (just the one factor when i = n-i).
    """
    _check_eigenvector_args(n, missing)
    i = missing
    one = _ONE
    d_i = LaurentPoly.monomial(1, 1, i) - one  # t q^i - 1
    d_ni = LaurentPoly.monomial(1, 1, n - i) - one  # t q^(n-i) - 1
    x_num = LaurentPoly.monomial(1, 1, 1) * (one - LaurentPoly.monomial(1, 0, n - i))
    y_num = LaurentPoly.monomial(1, 1, n - i + 1) * (
        one - LaurentPoly.monomial(1, 0, i)
    )
    if i == n - i:
        scale = d_i
        x_val = x_num
        y_val = y_num
    else:
        scale = d_i * d_ni
        x_val = x_num * d_ni
        y_val = y_num * d_i
    by_symbol = {"x": x_val, "1": scale, "y": y_val}
    entries = tuple(
        by_symbol[sym] * LaurentPoly.monomial(1, 0, e)
        for sym, e in eigenvector_pattern(n, i)
    )
    return EssentialEigenvector(n=n, missing=i, scale=scale, entries=entries)


# -- reduced Burau -------------------------------------------------------------


@lru_cache(maxsize=None)
def burau_reduced_generator(n: int, k: int, sign: int = 1) -> PolyMatrix:
    """(n-1)x(n-1) reduced Burau matrix of sigma_k^sign in the variable t."""
    _check_generator_index(n, k)
    if sign == -1:
        return burau_reduced_generator(n, k, 1).inverse_via_adjugate()
    if sign != 1:
        raise IndexOutOfRange(f"sign must be +1 or -1, got {sign}")
    size = n - 1
    t = LaurentPoly.monomial(1, 1, 0)
    ents = [LaurentPoly.zero()] * (size * size)
    for r in range(size):
        ents[r * size + r] = _ONE
    p = k - 1
    ents[p * size + p] = -t
    if p >= 1:
        ents[(p - 1) * size + p] = t
    if p + 1 < size:
        ents[(p + 1) * size + p] = _ONE
    return PolyMatrix(size, size, ents)


def burau_word(w: BraidWord) -> PolyMatrix:
    """Product of reduced Burau generator matrices in letter order."""
    n = w.strands
    result = PolyMatrix.identity(n - 1)
    for g in w.letters:
        result = result @ burau_reduced_generator(n, abs(g), 1 if g > 0 else -1)
    return result
