"""Exact linear algebra over the rationals: rref, rank, nullspace, det.

All arithmetic uses Fraction, so elimination is exact and the results
are deterministic: pivots are always the first nonzero entry in column
order, and nullspace free variables are set to one in column order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Tuple

from cliffta.algebra import as_fraction


@dataclass(frozen=True)
class RatMatrix:
    """Dense rational matrix; immutable.

    `width` is stored explicitly so matrices with zero rows keep a
    well-defined column count.
    """

    entries: tuple  # tuple of row tuples of Fraction
    width: int = -1

    def __post_init__(self):
        inferred = len(self.entries[0]) if self.entries else 0
        if self.width < 0:
            object.__setattr__(self, "width", inferred)
        if any(len(row) != self.width for row in self.entries):
            raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int = -1) -> "RatMatrix":
        return cls(tuple(tuple(as_fraction(v) for v in row) for row in rows), cols)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(tuple((Fraction(0),) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, size: int) -> "RatMatrix":
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(size)] for i in range(size)]
        )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return self.width

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i][j]

    def mat_vec(self, vec) -> list:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((r[j] * vec[j] for j in range(self.cols)), Fraction(0))
                for r in self.entries]

    def submatrix(self, rows: int, cols: int) -> "RatMatrix":
        return RatMatrix(tuple(row[:cols] for row in self.entries[:rows]))


def rref(m: RatMatrix) -> Tuple[RatMatrix, tuple]:
    """Reduced row-echelon form and pivot columns, exact."""
    rows = [list(r) for r in m.entries]
    nrows, ncols = m.rows, m.cols
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return RatMatrix.from_rows(rows), tuple(pivots)


def rank(m: RatMatrix) -> int:
    return len(rref(m)[1])


def nullspace(m: RatMatrix) -> list:
    """Basis of {x : Mx = 0} as Fraction tuples.

    Free variables are set to 1 one at a time in column order, so the
    basis (and its order) is reproducible bit-for-bit.
    """
    ncols = m.cols
    if m.rows == 0:
        return [tuple(Fraction(1 if i == j else 0) for i in range(ncols))
                for j in range(ncols)]
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -reduced.at(row_idx, fc)
        basis.append(tuple(vec))
    return basis


def det(m: RatMatrix) -> Fraction:
    """Exact determinant by Gaussian elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    size = m.rows
    rows = [list(r) for r in m.entries]
    result = Fraction(1)
    for c in range(size):
        pivot_row = next((i for i in range(c, size) if rows[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            result = -result
        pv = rows[c][c]
        result *= pv
        for i in range(c + 1, size):
            if rows[i][c] != 0:
                f = rows[i][c] / pv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return result
