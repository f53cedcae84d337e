"""Exact integer and half-integer matrix arithmetic.

Everything here is computed over Z (or (1/2)Z) with Python's arbitrary
precision integers; there is deliberately no floating point anywhere in
this module.  The three workhorses are

* ``hnf`` -- row-style Hermite normal form with a unimodular witness,
  used to extract canonical bases of row lattices,
* ``det`` -- fraction-free (Bareiss) determinant,
* ``square_submatrices`` -- deterministic enumeration of k x k
  submatrices, which feeds total-unimodularity checking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, gcd


class MatrixError(ValueError):
    """Raised for malformed matrix inputs (shape or format)."""


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise MatrixError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise MatrixError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        if not all(isinstance(x, int) for x in self.entries):
            raise MatrixError("matrix entries must be integers")

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise MatrixError("ragged rows")
        return cls(n, m, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise MatrixError("incompatible shapes for multiplication")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other.entry(k, j) for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def submatrix(self, row_idx, col_idx) -> "IntMatrix":
        row_idx = tuple(row_idx)
        col_idx = tuple(col_idx)
        return IntMatrix(
            len(row_idx),
            len(col_idx),
            tuple(self.entry(i, j) for i in row_idx for j in col_idx),
        )

    def column_submatrix(self, col_idx) -> "IntMatrix":
        return self.submatrix(range(self.rows), col_idx)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"IntMatrix({self.rows}x{self.cols}: {body})"


@dataclass(frozen=True)
class RationalMatrix:
    """Matrix over (1/2)Z: integer numerator with a global denominator of 1 or 2.

    Canonical form: if the denominator is 2 but every numerator entry is
    even, the matrix is reduced to denominator 1.
    """

    numerator: IntMatrix
    denominator: int = 1

    def __post_init__(self):
        if self.denominator not in (1, 2):
            raise MatrixError("denominator must be 1 or 2")
        if self.denominator == 2 and all(x % 2 == 0 for x in self.numerator.entries):
            reduced = IntMatrix(
                self.numerator.rows,
                self.numerator.cols,
                tuple(x // 2 for x in self.numerator.entries),
            )
            object.__setattr__(self, "numerator", reduced)
            object.__setattr__(self, "denominator", 1)

    @property
    def rows(self) -> int:
        return self.numerator.rows

    @property
    def cols(self) -> int:
        return self.numerator.cols

    def doubled(self) -> IntMatrix:
        """The integer matrix 2 * self (exact)."""
        if self.denominator == 2:
            return self.numerator
        return IntMatrix(
            self.numerator.rows,
            self.numerator.cols,
            tuple(2 * x for x in self.numerator.entries),
        )

    def __repr__(self):
        return f"RationalMatrix({self.numerator!r} / {self.denominator})"


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, s, t) with g = s*a + t*b, g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H = U @ M``, ``U`` unimodular
    (``|det U| = 1``).  ``H`` is in row echelon form with positive pivots
    and entries above each pivot reduced into ``[0, pivot)``; its nonzero
    rows are a canonical basis of the row lattice of ``M``.
    """
    if M.rows == 0 or M.cols == 0:
        raise MatrixError("hnf requires a nonempty matrix")
    A = M.row_list()
    U = IntMatrix.identity(M.rows).row_list()
    n, m = M.rows, M.cols
    r = 0
    for c in range(m):
        pivot = next((i for i in range(r, n) if A[i][c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            A[r], A[pivot] = A[pivot], A[r]
            U[r], U[pivot] = U[pivot], U[r]
        for i in range(r + 1, n):
            if A[i][c] == 0:
                continue
            a, b = A[r][c], A[i][c]
            g, s, t = _xgcd(a, b)
            p, q = a // g, b // g
            # [[s, t], [-q, p]] has determinant s*p + t*q = 1
            A[r], A[i] = (
                [s * x + t * y for x, y in zip(A[r], A[i])],
                [-q * x + p * y for x, y in zip(A[r], A[i])],
            )
            U[r], U[i] = (
                [s * x + t * y for x, y in zip(U[r], U[i])],
                [-q * x + p * y for x, y in zip(U[r], U[i])],
            )
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q != 0:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return IntMatrix.from_rows(A), IntMatrix.from_rows(U)


def hnf_basis(M: IntMatrix) -> IntMatrix:
    """The nonzero rows of hnf(M): a canonical basis of the row lattice."""
    H, _ = hnf(M)
    rows = [H.row(i) for i in range(H.rows) if any(H.row(i))]
    if not rows:
        return IntMatrix(0, M.cols, ())
    return IntMatrix.from_rows(rows)


def rank(M: IntMatrix) -> int:
    """Rank over the rationals (= number of nonzero rows of the HNF)."""
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.is_zero():
        return 0
    return hnf_basis(M).rows


def row_lattice_contains(M: IntMatrix, v) -> bool:
    """Whether integer vector ``v`` lies in the row lattice of ``M``."""
    v = tuple(int(x) for x in v)
    if len(v) != M.cols:
        raise MatrixError("vector length does not match column count")
    basis = hnf_basis(M)
    if basis.rows == 0:
        return all(x == 0 for x in v)
    stacked = IntMatrix.from_rows(basis.row_list() + [list(v)])
    return hnf_basis(stacked) == basis


def det(M: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise MatrixError("determinant requires a square matrix")
    n = M.rows
    if n == 0:
        return 1
    if n == 1:
        return M.entries[0]
    if n == 2:
        a, b, c, d = M.entries
        return a * d - b * c
    a = M.row_list()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def square_submatrices(M: IntMatrix, k: int):
    """Yield every k x k submatrix exactly once.

    Yields ``(row_idx, col_idx, submatrix)`` in lexicographic order of the
    index sets; emits exactly C(rows, k) * C(cols, k) items.
    """
    if k < 1 or k > min(M.rows, M.cols):
        raise MatrixError(f"submatrix size {k} out of range for {M.rows}x{M.cols}")
    for row_idx in itertools.combinations(range(M.rows), k):
        for col_idx in itertools.combinations(range(M.cols), k):
            yield row_idx, col_idx, M.submatrix(row_idx, col_idx)


def square_submatrix_count(M: IntMatrix, k: int) -> int:
    return comb(M.rows, k) * comb(M.cols, k)


def column_gcd(M: IntMatrix, j: int) -> int:
    g = 0
    for x in M.column(j):
        g = gcd(g, x)
    return g


# ---------------------------------------------------------------------------
# Text format: first line "rows cols", then one line of integers per row.
# A RationalMatrix file carries an optional leading line "denominator 2".
# ---------------------------------------------------------------------------


def parse_matrix_text(text: str) -> IntMatrix | RationalMatrix:
    """Parse the matrix text format; '#' comments and blank lines are skipped."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((lineno, stripped))
    if not lines:
        raise MatrixError("empty matrix file")
    denominator = 1
    pos = 0
    first = lines[0][1].split()
    if first[0] == "denominator":
        if len(first) != 2 or first[1] not in ("1", "2"):
            raise MatrixError(f"line {lines[0][0]}: bad denominator line")
        denominator = int(first[1])
        pos = 1
    if pos >= len(lines):
        raise MatrixError("missing size line")
    header = lines[pos][1].split()
    if len(header) != 2:
        raise MatrixError(f"line {lines[pos][0]}: expected 'rows cols'")
    try:
        nrows, ncols = int(header[0]), int(header[1])
    except ValueError:
        raise MatrixError(f"line {lines[pos][0]}: expected 'rows cols'") from None
    body = lines[pos + 1 :]
    if len(body) != nrows:
        raise MatrixError(f"expected {nrows} data lines, found {len(body)}")
    rows = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) != ncols:
            raise MatrixError(f"line {lineno}: expected {ncols} entries, got {len(parts)}")
        try:
            rows.append([int(p) for p in parts])
        except ValueError:
            raise MatrixError(f"line {lineno}: non-integer entry") from None
    matrix = IntMatrix.from_rows(rows) if rows else IntMatrix(0, ncols, ())
    if denominator == 1:
        return matrix
    return RationalMatrix(matrix, 2)


def format_matrix_text(M: IntMatrix | RationalMatrix) -> str:
    lines = []
    if isinstance(M, RationalMatrix):
        if M.denominator == 2:
            lines.append("denominator 2")
        M = M.numerator
    lines.append(f"{M.rows} {M.cols}")
    for i in range(M.rows):
        lines.append(" ".join(str(x) for x in M.row(i)))
    return "\n".join(lines) + "\n"
