"""Dense matrices over Z[t^+-1, q^+-1] with fraction-free exact kernels.

Matrices are immutable, row-major tuples of LaurentPoly.  Determinants are
fraction-free: single-step Bareiss elimination whose divisions are exact in
the ring (cofactor expansion doubles as an independent oracle and is the
default for very small sizes).  Inverses exist only when the determinant is a
unit and are computed as adjugate times the inverted unit, which keeps every
intermediate inside the ring.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence

from . import laurent
from .errors import DimensionMismatch, NotDivisible, NotSquare
from .laurent import LaurentPoly

_ZERO = LaurentPoly.zero()
_ONE = LaurentPoly.one()


class PolyMatrix:
    """Immutable rows x cols matrix over the Laurent ring."""

    __slots__ = ("_nrows", "_ncols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[LaurentPoly]):
        rows, cols = int(rows), int(cols)
        if rows < 1 or cols < 1:
            raise DimensionMismatch(f"matrix shape {rows}x{cols} must be positive")
        ents = tuple(entries)
        if len(ents) != rows * cols:
            raise DimensionMismatch(
                f"expected {rows * cols} entries for {rows}x{cols}, got {len(ents)}"
            )
        for e in ents:
            if not isinstance(e, LaurentPoly):
                raise TypeError(f"matrix entries must be LaurentPoly, got {type(e)}")
        object.__setattr__(self, "_nrows", rows)
        object.__setattr__(self, "_ncols", cols)
        object.__setattr__(self, "_entries", ents)

    @classmethod
    def _raw(cls, rows: int, cols: int, entries: tuple) -> "PolyMatrix":
        self = object.__new__(cls)
        object.__setattr__(self, "_nrows", rows)
        object.__setattr__(self, "_ncols", cols)
        object.__setattr__(self, "_entries", entries)
        return self

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "PolyMatrix":
        nrows = len(rows)
        if nrows == 0:
            raise DimensionMismatch("matrix needs at least one row")
        ncols = len(rows[0])
        flat: list[LaurentPoly] = []
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
            for e in r:
                flat.append(e if isinstance(e, LaurentPoly) else LaurentPoly.monomial(e))
        return cls(nrows, ncols, flat)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        return cls._raw(rows, cols, (_ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        ents = [_ZERO] * (n * n)
        for i in range(n):
            ents[i * n + i] = _ONE
        return cls._raw(n, n, tuple(ents))

    # -- shape and access ----------------------------------------------------

    @property
    def rows(self) -> int:
        return self._nrows

    @property
    def cols(self) -> int:
        return self._ncols

    def entry(self, i: int, j: int) -> LaurentPoly:
        if not (0 <= i < self._nrows and 0 <= j < self._ncols):
            raise IndexError(f"entry ({i},{j}) outside {self._nrows}x{self._ncols}")
        return self._entries[i * self._ncols + j]

    def __getitem__(self, key: tuple[int, int]) -> LaurentPoly:
        return self.entry(*key)

    def row_entries(self, i: int) -> tuple[LaurentPoly, ...]:
        return self._entries[i * self._ncols : (i + 1) * self._ncols]

    def column_entries(self, j: int) -> tuple[LaurentPoly, ...]:
        return tuple(self._entries[i * self._ncols + j] for i in range(self._nrows))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (
            self._nrows == other._nrows
            and self._ncols == other._ncols
            and self._entries == other._entries
        )

    def __hash__(self):
        return hash((self._nrows, self._ncols, self._entries))

    # -- arithmetic -----------------------------------------------------------

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self._ncols != other._nrows:
            raise DimensionMismatch(
                f"cannot multiply {self._nrows}x{self._ncols} by "
                f"{other._nrows}x{other._ncols}"
            )
        n, m, p = self._nrows, self._ncols, other._ncols
        b_sparse_rows = [
            [(j, e) for j, e in enumerate(other.row_entries(k)) if not e.is_zero()]
            for k in range(m)
        ]
        out: list[LaurentPoly] = []
        for i in range(n):
            accs: list[dict] = [{} for _ in range(p)]
            base = i * m
            for k in range(m):
                a_ik = self._entries[base + k]
                if a_ik.is_zero():
                    continue
                for j, b_kj in b_sparse_rows[k]:
                    laurent.accumulate_product(accs[j], a_ik, b_kj)
            out.extend(LaurentPoly._raw(d) for d in accs)
        return PolyMatrix._raw(n, p, tuple(out))

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if (self._nrows, self._ncols) != (other._nrows, other._ncols):
            raise DimensionMismatch("shape mismatch in matrix addition")
        return PolyMatrix._raw(
            self._nrows,
            self._ncols,
            tuple(a + b for a, b in zip(self._entries, other._entries)),
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if (self._nrows, self._ncols) != (other._nrows, other._ncols):
            raise DimensionMismatch("shape mismatch in matrix subtraction")
        return PolyMatrix._raw(
            self._nrows,
            self._ncols,
            tuple(a - b for a, b in zip(self._entries, other._entries)),
        )

    def scale(self, c) -> "PolyMatrix":
        c = c if isinstance(c, LaurentPoly) else LaurentPoly.monomial(c)
        return PolyMatrix._raw(
            self._nrows, self._ncols, tuple(c * e for e in self._entries)
        )

    def sub_identity(self) -> "PolyMatrix":
        """self - I; requires a square matrix."""
        if self._nrows != self._ncols:
            raise NotSquare(f"sub_identity on {self._nrows}x{self._ncols}")
        ents = list(self._entries)
        n = self._ncols
        for i in range(n):
            ents[i * n + i] = ents[i * n + i] - _ONE
        return PolyMatrix._raw(n, n, tuple(ents))

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix._raw(
            self._ncols,
            self._nrows,
            tuple(
                self._entries[i * self._ncols + j]
                for j in range(self._ncols)
                for i in range(self._nrows)
            ),
        )

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "PolyMatrix":
        row_idx = tuple(row_idx)
        col_idx = tuple(col_idx)
        ents = tuple(
            self._entries[i * self._ncols + j] for i in row_idx for j in col_idx
        )
        return PolyMatrix(len(row_idx), len(col_idx), ents)

    @classmethod
    def vstack(cls, blocks: Sequence["PolyMatrix"]) -> "PolyMatrix":
        if not blocks:
            raise DimensionMismatch("vstack of no blocks")
        cols = blocks[0]._ncols
        ents: list[LaurentPoly] = []
        rows = 0
        for b in blocks:
            if b._ncols != cols:
                raise DimensionMismatch("vstack blocks must share column count")
            ents.extend(b._entries)
            rows += b._nrows
        return cls._raw(rows, cols, tuple(ents))

    # -- determinants ----------------------------------------------------------

    def det(self) -> LaurentPoly:
        """Exact determinant: cofactor expansion up to 4x4, Bareiss beyond."""
        if self._nrows != self._ncols:
            raise NotSquare(f"det of {self._nrows}x{self._ncols}")
        if self._nrows <= 4:
            return self.det_cofactor()
        return self.det_bareiss()

    def det_bareiss(self) -> LaurentPoly:
        """Fraction-free Gaussian elimination (single-step Bareiss).

        Pivots are the first nonzero entry in column order; a pivotless column
        short-circuits to zero.  Every division is exact by Sylvester's
        determinant identity.
        """
        if self._nrows != self._ncols:
            raise NotSquare(f"det of {self._nrows}x{self._ncols}")
        n = self._nrows
        if n == 1:
            return self._entries[0]
        m = [list(self.row_entries(i)) for i in range(n)]
        sign = 1
        prev = _ONE
        for k in range(n - 1):
            piv = None
            for r in range(k, n):
                if not m[r][k].is_zero():
                    piv = r
                    break
            if piv is None:
                return _ZERO
            if piv != k:
                m[k], m[piv] = m[piv], m[k]
                sign = -sign
            pivot = m[k][k]
            row_k = m[k]
            for i in range(k + 1, n):
                row_i = m[i]
                mik = row_i[k]
                if mik.is_zero():
                    for j in range(k + 1, n):
                        row_i[j] = laurent.exact_div(pivot * row_i[j], prev)
                else:
                    for j in range(k + 1, n):
                        row_i[j] = laurent.exact_div(
                            pivot * row_i[j] - mik * row_k[j], prev
                        )
                row_i[k] = _ZERO
            prev = pivot
        d = m[n - 1][n - 1]
        return d if sign > 0 else -d

    def det_cofactor(self) -> LaurentPoly:
        """First-column cofactor expansion; independent oracle for det_bareiss."""
        if self._nrows != self._ncols:
            raise NotSquare(f"det of {self._nrows}x{self._ncols}")
        rows = [list(self.row_entries(i)) for i in range(self._nrows)]
        return _det_cofactor_rec(rows)

    def is_unit_det_invertible(self) -> bool:
        return self.det().is_unit()

    def inverse_via_adjugate(self) -> "PolyMatrix":
        """Inverse as adjugate(M) * det(M)^-1; requires the det to be a unit."""
        d = self.det()
        if not d.is_unit():
            raise NotDivisible(f"determinant {d} is not a unit; no inverse in the ring")
        dinv = d ** -1
        n = self._nrows
        if n == 1:
            return PolyMatrix._raw(1, 1, (dinv,))
        idx = range(n)
        ents: list[LaurentPoly] = []
        for i in idx:
            cols = [j for j in idx if j != i]
            for j in idx:
                rows = [r for r in idx if r != j]
                minor = self.submatrix(rows, cols).det()
                if (i + j) % 2:
                    minor = -minor
                ents.append(minor * dinv)
        return PolyMatrix._raw(n, n, tuple(ents))

    # -- minors ---------------------------------------------------------------

    def minors_gcd(self, d: int) -> LaurentPoly:
        """Normalized gcd of all order-d minors taken over row subsets.

        Requires cols == d and rows >= d.  Row subsets are enumerated in
        lexicographic order with an early exit once the running gcd is 1.
        """
        poly, _, _ = self.minors_gcd_capped(d, None)
        return poly

    def minors_gcd_capped(
        self, d: int, limit: int | None
    ) -> tuple[LaurentPoly, bool, int]:
        """(gcd, exact, minors_enumerated); exact=False when the cap truncated
        enumeration, in which case the value is a multiple of the true gcd."""
        if d < 1 or self._ncols != d or self._nrows < d:
            raise DimensionMismatch(
                f"minors_gcd needs cols == d <= rows, got d={d}, "
                f"shape {self._nrows}x{self._ncols}"
            )
        cols = tuple(range(d))
        g = _ZERO
        count = 0
        for combo in itertools.combinations(range(self._nrows), d):
            if limit is not None and count >= limit:
                return g, False, count
            minor = self.submatrix(combo, cols).det()
            count += 1
            g = laurent.gcd(g, minor)
            if g == 1:
                return g, True, count
        return g, True, count

    def scalar_value(self) -> LaurentPoly | None:
        """The scalar c when self == c*I, else None."""
        if self._nrows != self._ncols:
            return None
        n = self._nrows
        c = self._entries[0]
        for i in range(n):
            for j in range(n):
                e = self._entries[i * n + j]
                if i == j:
                    if e != c:
                        return None
                elif not e.is_zero():
                    return None
        return c

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "rows": self._nrows,
            "cols": self._ncols,
            "entries": [e.to_json_terms() for e in self._entries],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "PolyMatrix":
        rows = int(payload["rows"])
        cols = int(payload["cols"])
        entries = [LaurentPoly.from_json_terms(e) for e in payload["entries"]]
        return cls(rows, cols, entries)

    def pretty(self) -> str:
        texts = [str(e) for e in self._entries]
        widths = [
            max(len(texts[i * self._ncols + j]) for i in range(self._nrows))
            for j in range(self._ncols)
        ]
        lines = []
        for i in range(self._nrows):
            cells = [
                texts[i * self._ncols + j].ljust(widths[j])
                for j in range(self._ncols)
            ]
            lines.append("[ " + "  ".join(cells).rstrip() + " ]")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.pretty()

    def __repr__(self) -> str:
        return f"PolyMatrix({self._nrows}x{self._ncols})"


def _det_cofactor_rec(rows: list[list[LaurentPoly]]) -> LaurentPoly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = _ZERO
    for i, row in enumerate(rows):
        c = row[0]
        if c.is_zero():
            continue
        minor = [r[1:] for j, r in enumerate(rows) if j != i]
        term = c * _det_cofactor_rec(minor)
        total = total + term if i % 2 == 0 else total - term
    return total
