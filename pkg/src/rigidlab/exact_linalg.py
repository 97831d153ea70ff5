"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`.  Ranks are computed by clearing
denominators row by row and running fraction-free (Bareiss) elimination on
Python integers, so no intermediate fractions ever appear.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParseError, PreconditionError

Rational = Fraction

#: Mersenne prime used by the modular rank prefilter.
PRIME = (1 << 61) - 1


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {x!r}") from exc
    if isinstance(x, float):
        raise TypeError("floating point scalars are not accepted")
    return Fraction(x)


class Matrix:
    """Immutable dense matrix of Fractions.

    ``row_labels`` optionally names each row (edges ``(i, j)``) and
    ``block_width`` records that the columns form ``cols // block_width``
    consecutive blocks.
    """

    __slots__ = ("rows", "cols", "_entries", "row_labels", "block_width")

    def __init__(
        self,
        entries: Iterable[Iterable],
        cols: int | None = None,
        row_labels: Sequence | None = None,
        block_width: int | None = None,
    ):
        grid = tuple(tuple(as_rational(x) for x in row) for row in entries)
        if cols is None:
            if not grid:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(grid[0])
        for r in grid:
            if len(r) != cols:
                raise ValueError(f"ragged matrix: row of length {len(r)}, expected {cols}")
        if row_labels is not None:
            row_labels = tuple(row_labels)
            if len(row_labels) != len(grid):
                raise ValueError("one label per row required")
            if len(set(row_labels)) != len(row_labels):
                raise ValueError("row labels must be distinct")
        if block_width is not None and (block_width <= 0 or cols % block_width):
            raise ValueError(f"block width {block_width} does not divide {cols} columns")
        self.rows = len(grid)
        self.cols = cols
        self._entries = grid
        self.row_labels = row_labels
        self.block_width = block_width

    # -- construction helpers -------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(([1 if i == j else 0 for j in range(n)] for i in range(n)), cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(([0] * cols for _ in range(rows)), cols=cols)

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls(([values[i] if i == j else 0 for j in range(n)] for i in range(n)), cols=n)

    # -- access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._entries

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._entries[i]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._entries[i][j]

    def __iter__(self):
        return iter(self._entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.shape, self._entries))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols})"

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self._entries), cols=self.rows) if self.rows else Matrix.zeros(self.cols, 0)

    def select_rows(self, indices: Iterable[int]) -> "Matrix":
        idx = list(indices)
        labels = None if self.row_labels is None else [self.row_labels[i] for i in idx]
        return Matrix((self._entries[i] for i in idx), cols=self.cols,
                      row_labels=labels, block_width=self.block_width)

    def with_labels(self, row_labels=None, block_width=None) -> "Matrix":
        return Matrix(self._entries, cols=self.cols, row_labels=row_labels,
                      block_width=block_width)

    def col_block(self, b: int, width: int | None = None) -> "Matrix":
        w = width or self.block_width
        if w is None:
            raise ValueError("matrix has no block structure")
        return Matrix((r[b * w:(b + 1) * w] for r in self._entries), cols=w)

    # -- text format ----------------------------------------------------------

    def to_text(self, header: str | None = None) -> str:
        lines = []
        if header:
            lines.extend("# " + h for h in header.splitlines())
        lines.append(f"{self.rows} {self.cols}")
        lines.extend(" ".join(str(x) for x in r) for r in self._entries)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Matrix":
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines:
            raise ParseError("empty matrix text")
        head = lines[0].split()
        if len(head) != 2:
            raise ParseError(f"bad matrix header: {lines[0]!r}")
        try:
            rows, cols = int(head[0]), int(head[1])
        except ValueError as exc:
            raise ParseError(f"bad matrix header: {lines[0]!r}") from exc
        if rows < 0 or cols < 0 or len(lines) - 1 != rows:
            raise ParseError(f"expected {rows} matrix rows, found {len(lines) - 1}")
        body = [ln.split() for ln in lines[1:]]
        for k, r in enumerate(body):
            if len(r) != cols:
                raise ParseError(f"matrix row {k + 1} has {len(r)} entries, expected {cols}")
        return cls((as_rational(x) for x in r) for r in body) if rows else cls.zeros(0, cols)


# -- elimination ---------------------------------------------------------------


def integer_rows(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    """Scale every row by the lcm of its denominators (row rank is unchanged)."""
    out = []
    for r in rows:
        den = 1
        for x in r:
            if x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def bareiss_rank(rows: list[list[int]], ncols: int | None = None) -> int:
    """Rank of an integer matrix by fraction-free elimination.

    ``rows`` is consumed (modified in place).  Pivots are chosen by largest
    absolute value in the current column.
    """
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0]) if ncols is None else ncols
    rank = 0
    prev = 1
    for c in range(n):
        if rank == m:
            break
        piv = -1
        best = 0
        for r in range(rank, m):
            v = rows[r][c]
            if v and abs(v) > best:
                best = abs(v)
                piv = r
        if piv < 0:
            continue
        if piv != rank:
            rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        pv = prow[c]
        for r in range(rank + 1, m):
            row = rows[r]
            a = row[c]
            if a:
                for k in range(c + 1, n):
                    row[k] = (pv * row[k] - a * prow[k]) // prev
            else:
                for k in range(c + 1, n):
                    row[k] = (pv * row[k]) // prev
            row[c] = 0
        prev = pv
        rank += 1
    return rank


def rank(M: Matrix) -> int:
    """Exact rank of ``M`` over the rationals."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return bareiss_rank(integer_rows(M.entries), M.cols)


def rank_mod_p(M: Matrix, p: int = PRIME) -> int:
    """Rank over GF(p).  A lower bound for the rational rank, equal to it
    unless ``p`` divides some maximal nonzero minor.  Prefilter only."""
    rows = []
    for r in integer_rows(M.entries):
        rows.append([x % p for x in r])
    m, n = len(rows), M.cols
    rk = 0
    for c in range(n):
        piv = next((r for r in range(rk, m) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = pow(rows[rk][c], p - 2, p)
        prow = [x * inv % p for x in rows[rk]]
        rows[rk] = prow
        for r in range(rk + 1, m):
            a = rows[r][c]
            if a:
                row = rows[r]
                for k in range(c, n):
                    row[k] = (row[k] - a * prow[k]) % p
        rk += 1
        if rk == m:
            break
    return rk


def left_nullspace_dim(M: Matrix) -> int:
    return M.rows - rank(M)


def rref(M: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with Fractions; returns (rows, pivot columns)."""
    A = [list(r) for r in M.entries]
    m, n = M.rows, M.cols
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def nullspace(M: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel ``{x : M x = 0}``."""
    A, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * M.cols
        x[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -A[i][f]
        basis.append(tuple(x))
    return basis


def left_nullspace(M: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of ``{y : y^T M = 0}``."""
    return nullspace(M.transpose())


def solve(A: Matrix, B: Matrix) -> Matrix:
    """Unique solution X of ``A X = B`` for square invertible ``A``."""
    if A.rows != A.cols:
        raise PreconditionError("solve needs a square coefficient matrix")
    if A.rows != B.rows:
        raise PreconditionError(f"shape mismatch: {A.shape} vs {B.shape}")
    aug = Matrix((list(a) + list(b) for a, b in zip(A.entries, B.entries)), cols=A.cols + B.cols)
    R, pivots = rref(aug)
    if pivots[:A.cols] != list(range(A.cols)):
        raise PreconditionError("coefficient matrix is singular")
    return Matrix((r[A.cols:] for r in R[:A.rows]), cols=B.cols)


def inverse(A: Matrix) -> Matrix:
    return solve(A, Matrix.identity(A.rows))


def determinant(A: Matrix) -> Fraction:
    if A.rows != A.cols:
        raise PreconditionError("determinant of a non-square matrix")
    rows = [list(r) for r in A.entries]
    n = A.rows
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        for r in range(c + 1, n):
            f = rows[r][c] / rows[c][c]
            if f:
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    return det


# -- products and scalings ----------------------------------------------------


def multiply(A: Matrix, B: Matrix) -> Matrix:
    if A.cols != B.rows:
        raise PreconditionError(f"cannot multiply {A.shape} by {B.shape}")
    Bt = list(zip(*B.entries)) if B.rows else [()] * B.cols
    out = []
    for r in A.entries:
        nz = [(k, x) for k, x in enumerate(r) if x]
        out.append([sum((x * col[k] for k, x in nz), Fraction(0)) for col in Bt])
    return Matrix(out, cols=B.cols, row_labels=A.row_labels,
                  block_width=B.block_width)


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    grid = [[Fraction(0)] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.entries):
            grid[r0 + i][c0:c0 + b.cols] = row
        r0 += b.rows
        c0 += b.cols
    widths = {b.cols for b in blocks}
    bw = widths.pop() if len(widths) == 1 and blocks and blocks[0].cols else None
    return Matrix(grid, cols=cols, block_width=bw)


def _check_scalars(s: Sequence, count: int, what: str) -> list[Fraction]:
    vals = [as_rational(x) for x in s]
    if len(vals) != count:
        raise PreconditionError(f"expected {count} {what} scalars, got {len(vals)}")
    if any(v == 0 for v in vals):
        raise PreconditionError("scaling by zero is not allowed")
    return vals


def scale_rows(M: Matrix, s: Sequence) -> Matrix:
    vals = _check_scalars(s, M.rows, "row")
    return Matrix(([v * x for x in r] for v, r in zip(vals, M.entries)), cols=M.cols,
                  row_labels=M.row_labels, block_width=M.block_width)


def scale_col_blocks(M: Matrix, s: Sequence, block_width: int | None = None) -> Matrix:
    """Multiply every column of block ``b`` by ``s[b]``."""
    w = block_width or M.block_width
    if w is None:
        raise PreconditionError("matrix has no column-block structure")
    if M.cols % w:
        raise PreconditionError(f"block width {w} does not divide {M.cols}")
    vals = _check_scalars(s, M.cols // w, "block")
    col_scale = [vals[c // w] for c in range(M.cols)]
    return Matrix(([x * f for x, f in zip(r, col_scale)] for r in M.entries), cols=M.cols,
                  row_labels=M.row_labels, block_width=w)
