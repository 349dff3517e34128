"""Immutable exact matrices.

Row reduction, rank and products go through sympy's ``DomainMatrix``; this
wrapper keeps the shape explicit so that empty (0 x n, n x 0) matrices, which
show up constantly for zero-dimensional vertex spaces, behave uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

from sympy.polys.matrices import DomainMatrix

from envlab.errors import DimensionMismatchError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from envlab.algebra.field import Field


@dataclass(frozen=True)
class Matrix:
    """A matrix over an exact field acting on column vectors."""

    field: Field
    nrows: int
    ncols: int
    rows: tuple[tuple[Any, ...], ...]

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> Matrix:
        """The zero matrix of the given shape."""
        zero = field.zero
        return cls(field, nrows, ncols, tuple(tuple(zero for _ in range(ncols)) for _ in range(nrows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        """The n x n identity."""
        zero, one = field.zero, field.one
        return cls(field, n, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable[Any]], ncols: int | None = None) -> Matrix:
        """Build from nested rows, converting every entry into the field."""
        converted = tuple(tuple(field(x) for x in row) for row in rows)
        width = ncols if ncols is not None else (len(converted[0]) if converted else 0)
        if any(len(row) != width for row in converted):
            msg = f"Ragged matrix rows, expected width {width}"
            raise DimensionMismatchError(msg)
        return cls(field, len(converted), width, converted)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence[Any]], nrows: int) -> Matrix:
        """Build from a list of column vectors of length ``nrows``."""
        if any(len(col) != nrows for col in columns):
            msg = f"Column length mismatch, expected {nrows}"
            raise DimensionMismatchError(msg)
        rows = tuple(tuple(col[i] for col in columns) for i in range(nrows))
        return cls(field, nrows, len(columns), rows)

    @classmethod
    def block_diagonal(cls, field: Field, blocks: Sequence[Matrix]) -> Matrix:
        """Direct sum of matrices."""
        nrows = sum(b.nrows for b in blocks)
        ncols = sum(b.ncols for b in blocks)
        out = [[field.zero] * ncols for _ in range(nrows)]
        r0 = c0 = 0
        for block in blocks:
            for i, row in enumerate(block.rows):
                out[r0 + i][c0 : c0 + block.ncols] = row
            r0 += block.nrows
            c0 += block.ncols
        return cls(field, nrows, ncols, tuple(tuple(row) for row in out))

    @property
    def shape(self) -> tuple[int, int]:
        """(rows, columns)."""
        return self.nrows, self.ncols

    def entry(self, i: int, j: int) -> Any:  # noqa: ANN401
        """Entry (i, j)."""
        return self.rows[i][j]

    def column(self, j: int) -> tuple[Any, ...]:
        """Column j as a tuple."""
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[tuple[Any, ...]]:
        """All columns."""
        return [self.column(j) for j in range(self.ncols)]

    def _to_domain(self) -> DomainMatrix:
        return DomainMatrix([list(row) for row in self.rows], (self.nrows, self.ncols), self.field.domain)

    def _check_same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            msg = f"Shape mismatch {self.shape} vs {other.shape}"
            raise DimensionMismatchError(msg)

    def __matmul__(self, other: Matrix) -> Matrix:
        """Matrix product."""
        if self.ncols != other.nrows:
            msg = f"Cannot multiply {self.shape} by {other.shape}"
            raise DimensionMismatchError(msg)
        if 0 in (self.nrows, self.ncols, other.ncols):
            return Matrix.zeros(self.field, self.nrows, other.ncols)
        product = self._to_domain().matmul(other._to_domain())
        return Matrix(self.field, self.nrows, other.ncols, tuple(tuple(row) for row in product.to_list()))

    def __add__(self, other: Matrix) -> Matrix:
        """Entrywise sum."""
        self._check_same_shape(other)
        rows = tuple(
            tuple(a + b for a, b in zip(r, s, strict=True)) for r, s in zip(self.rows, other.rows, strict=True)
        )
        return Matrix(self.field, self.nrows, self.ncols, rows)

    def __sub__(self, other: Matrix) -> Matrix:
        """Entrywise difference."""
        self._check_same_shape(other)
        rows = tuple(
            tuple(a - b for a, b in zip(r, s, strict=True)) for r, s in zip(self.rows, other.rows, strict=True)
        )
        return Matrix(self.field, self.nrows, self.ncols, rows)

    def __neg__(self) -> Matrix:
        """Entrywise negation."""
        return Matrix(self.field, self.nrows, self.ncols, tuple(tuple(-a for a in row) for row in self.rows))

    def scale(self, c: Any) -> Matrix:  # noqa: ANN401
        """Multiply every entry by the scalar ``c``."""
        return Matrix(self.field, self.nrows, self.ncols, tuple(tuple(c * a for a in row) for row in self.rows))

    def transpose(self) -> Matrix:
        """Transpose."""
        rows = tuple(tuple(self.rows[i][j] for i in range(self.nrows)) for j in range(self.ncols))
        return Matrix(self.field, self.ncols, self.nrows, rows)

    def is_zero(self) -> bool:
        """True when every entry vanishes."""
        return not any(a for row in self.rows for a in row)

    def hstack(self, *others: Matrix) -> Matrix:
        """Place matrices side by side."""
        if any(o.nrows != self.nrows for o in others):
            msg = "hstack needs equal row counts"
            raise DimensionMismatchError(msg)
        rows = tuple(sum((o.rows[i] for o in others), self.rows[i]) for i in range(self.nrows))
        return Matrix(self.field, self.nrows, self.ncols + sum(o.ncols for o in others), rows)

    def vstack(self, *others: Matrix) -> Matrix:
        """Stack matrices vertically."""
        if any(o.ncols != self.ncols for o in others):
            msg = "vstack needs equal column counts"
            raise DimensionMismatchError(msg)
        rows = self.rows + sum((o.rows for o in others), ())
        return Matrix(self.field, len(rows), self.ncols, rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        """Extract the given rows and columns, in order."""
        return Matrix(self.field, len(rows), len(cols), tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def rref(self) -> tuple[Matrix, tuple[int, ...]]:
        """Reduced row echelon form and pivot columns."""
        if self.nrows == 0 or self.ncols == 0:
            return self, ()
        reduced, pivots = self._to_domain().rref()
        return (
            Matrix(self.field, self.nrows, self.ncols, tuple(tuple(row) for row in reduced.to_list())),
            tuple(int(p) for p in pivots),
        )

    def rank(self) -> int:
        """Rank."""
        if self.nrows == 0 or self.ncols == 0:
            return 0
        return int(self._to_domain().rank())

    def nullspace(self) -> list[tuple[Any, ...]]:
        """Basis of ``{x : A x = 0}``, one vector per free column, in column order."""
        zero, one = self.field.zero, self.field.one
        reduced, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for f in free:
            vec = [zero] * self.ncols
            vec[f] = one
            for i, p in enumerate(pivots):
                vec[p] = -reduced.rows[i][f]
            basis.append(tuple(vec))
        return basis

    def kernel_matrix(self) -> Matrix:
        """The nullspace basis as the columns of a matrix."""
        return Matrix.from_columns(self.field, self.nullspace(), self.ncols)

    def left_kernel_matrix(self) -> Matrix:
        """Matrix whose rows span ``{y : y A = 0}``; its kernel is exactly the column space of A."""
        vectors = self.transpose().nullspace()
        return Matrix(self.field, len(vectors), self.nrows, tuple(vectors))

    def column_space(self) -> Matrix:
        """Basis of the column space, taken from the pivot columns."""
        _, pivots = self.rref()
        return self.submatrix(range(self.nrows), pivots)

    def solve(self, rhs: Matrix) -> Matrix | None:
        """A solution X of ``self @ X == rhs`` (free variables set to zero), or None."""
        if rhs.nrows != self.nrows:
            msg = f"Right-hand side has {rhs.nrows} rows, expected {self.nrows}"
            raise DimensionMismatchError(msg)
        if self.ncols == 0 or self.nrows == 0:
            return Matrix.zeros(self.field, self.ncols, rhs.ncols) if rhs.is_zero() else None
        reduced, pivots = self.hstack(rhs).rref()
        if any(p >= self.ncols for p in pivots):
            return None
        out = [[self.field.zero] * rhs.ncols for _ in range(self.ncols)]
        for i, p in enumerate(pivots):
            out[p] = list(reduced.rows[i][self.ncols :])
        return Matrix(self.field, self.ncols, rhs.ncols, tuple(tuple(row) for row in out))

    def complement_columns(self) -> Matrix:
        """Standard basis vectors completing the columns of ``self`` to a basis of the ambient space."""
        n = self.nrows
        chosen: list[tuple[Any, ...]] = []
        current = self
        rank = current.rank()
        for k in range(n):
            unit = tuple(self.field.one if i == k else self.field.zero for i in range(n))
            candidate = current.hstack(Matrix.from_columns(self.field, [unit], n))
            new_rank = candidate.rank()
            if new_rank > rank:
                chosen.append(unit)
                current, rank = candidate, new_rank
        return Matrix.from_columns(self.field, chosen, n)

    def flatten(self) -> tuple[Any, ...]:
        """Row-major entries."""
        return tuple(a for row in self.rows for a in row)

    def to_json(self) -> list[list[int | str]]:
        """Nested lists of JSON scalars."""
        return [[self.field.to_json(a) for a in row] for row in self.rows]
