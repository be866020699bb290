"""Exact matrices over complex rationals and tolerance-free rank.

The exact rank path scales each row to Gaussian-integer form, drops zero and
duplicate rows/columns (rank-invariant), and runs one-step fraction-free
(Bareiss) elimination on raw integer pairs. The numeric path is an SVD
cross-check only; classification never depends on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import List, Sequence, Tuple

import numpy as np

from .scalars import ComplexRational, ONE, ZERO


class ExactMatrix:
    """Dense matrix of ComplexRational entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence[ComplexRational]]):
        data = [list(row) for row in data]
        if not data or not data[0]:
            raise ValueError("empty matrix")
        cols = len(data[0])
        if any(len(row) != cols for row in data):
            raise ValueError("ragged rows")
        self.rows = len(data)
        self.cols = cols
        self.data = data

    @classmethod
    def from_ints(cls, grid: Sequence[Sequence[int]]) -> "ExactMatrix":
        return cls([[ComplexRational(x) for x in row] for row in grid])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(
            [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        )

    def __getitem__(self, rc) -> ComplexRational:
        r, c = rc
        return self.data[r][c]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [[self.data[r][c] for r in range(self.rows)] for c in range(self.cols)]
        )

    def dagger(self) -> "ExactMatrix":
        return ExactMatrix(
            [
                [self.data[r][c].conjugate() for r in range(self.rows)]
                for c in range(self.cols)
            ]
        )

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
            )
        out = [[ZERO] * other.cols for _ in range(self.rows)]
        for i, row in enumerate(self.data):
            out_i = out[i]
            for k, a in enumerate(row):
                if a.is_zero():
                    continue
                other_k = other.data[k]
                for j, b in enumerate(other_k):
                    if not b.is_zero():
                        out_i[j] = out_i[j] + a * b
        return ExactMatrix(out)

    def __matmul__(self, other):
        return self.matmul(other)

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        out = []
        for i in range(self.rows):
            for k in range(other.rows):
                row = []
                for j in range(self.cols):
                    a = self.data[i][j]
                    if a.is_zero():
                        row.extend([ZERO] * other.cols)
                    else:
                        row.extend(a * b for b in other.data[k])
                out.append(row)
        return ExactMatrix(out)

    def scale_row(self, r: int, factor: ComplexRational) -> "ExactMatrix":
        data = [list(row) for row in self.data]
        data[r] = [factor * x for x in data[r]]
        return ExactMatrix(data)

    def to_numpy(self) -> np.ndarray:
        return np.array(
            [[complex(x) for x in row] for row in self.data], dtype=complex
        )


def kron_all(mats: Sequence[ExactMatrix]) -> ExactMatrix:
    out = mats[0]
    for m in mats[1:]:
        out = out.kron(m)
    return out


@dataclass(frozen=True)
class RankResult:
    rank: int
    method: str  # "exact" | "numeric"
    pivots: Tuple[Tuple[int, int], ...] = ()


def _gaussian_rows(m: ExactMatrix) -> List[List[Tuple[int, int]]]:
    """Scale each row by the lcm of its denominators (rank-invariant)."""
    out = []
    for row in m.data:
        den = 1
        for x in row:
            if x.d != 1:
                den = den * x.d // gcd(den, x.d)
        if den == 1:
            out.append([(x.a, x.b) for x in row])
        else:
            out.append([(x.a * (den // x.d), x.b * (den // x.d)) for x in row])
    return out


def _bareiss_rank(rows: List[List[Tuple[int, int]]]) -> Tuple[int, List[Tuple[int, int]]]:
    """Fraction-free elimination over Gaussian integers; first-nonzero pivoting.

    Returns (rank, pivot positions in the given grid's coordinates).
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    row_ids = list(range(nrows))
    piv = 0
    prev_a, prev_b = 1, 0  # previous pivot (Bareiss denominator)
    pivots: List[Tuple[int, int]] = []
    for col in range(ncols):
        sel = None
        for r in range(piv, nrows):
            a, b = rows[r][col]
            if a or b:
                sel = r
                break
        if sel is None:
            continue
        if sel != piv:
            rows[piv], rows[sel] = rows[sel], rows[piv]
            row_ids[piv], row_ids[sel] = row_ids[sel], row_ids[piv]
        pa, pb = rows[piv][col]
        pivots.append((row_ids[piv], col))
        pn = prev_a * prev_a + prev_b * prev_b
        prow = rows[piv]
        for r in range(piv + 1, nrows):
            row = rows[r]
            fa, fb = row[col]
            # the f == 0 case still needs the pivot/prev rescale: one-step
            # Bareiss exact divisibility relies on every row being updated
            new = []
            for c in range(ncols):
                xa, xb = row[c]
                ya, yb = prow[c]
                # pivot*x - factor*y, then exact division by previous pivot
                ta = pa * xa - pb * xb - (fa * ya - fb * yb)
                tb = pa * xb + pb * xa - (fa * yb + fb * ya)
                if prev_b == 0 and prev_a == 1:
                    new.append((ta, tb))
                else:
                    new.append(
                        (
                            (ta * prev_a + tb * prev_b) // pn,
                            (tb * prev_a - ta * prev_b) // pn,
                        )
                    )
            row[:] = new
        piv += 1
        prev_a, prev_b = pa, pb
        if piv == nrows:
            break
    return piv, pivots


def rank_exact(m: ExactMatrix) -> RankResult:
    """Exact rank over the complex rationals; deterministic for equal input."""
    grid = _gaussian_rows(m)
    zero = (0, 0)
    # drop zero rows, dedupe rows (keep first occurrence)
    seen = {}
    kept_rows: List[int] = []
    for r, row in enumerate(grid):
        key = tuple(row)
        if all(x == zero for x in row):
            continue
        if key not in seen:
            seen[key] = r
            kept_rows.append(r)
    if not kept_rows:
        return RankResult(0, "exact", ())
    sub = [grid[r] for r in kept_rows]
    # restrict to nonzero columns, dedupe columns
    ncols = m.cols
    col_seen = {}
    kept_cols: List[int] = []
    for c in range(ncols):
        col = tuple(row[c] for row in sub)
        if all(x == zero for x in col):
            continue
        if col not in col_seen:
            col_seen[col] = c
            kept_cols.append(c)
    reduced = [[row[c] for c in kept_cols] for row in sub]
    rank, piv = _bareiss_rank(reduced)
    pivots = tuple((kept_rows[r], kept_cols[c]) for r, c in piv)
    return RankResult(rank, "exact", pivots)


def rank_numeric(m: ExactMatrix, safety: float = 100.0) -> RankResult:
    """Floating rank: singular values above smax * max(shape) * eps * safety."""
    try:
        arr = m.to_numpy()
    except OverflowError as exc:
        raise OverflowError(f"entries too large for float conversion: {exc}")
    s = np.linalg.svd(arr, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return RankResult(0, "numeric", ())
    thresh = s[0] * max(m.rows, m.cols) * np.finfo(float).eps * safety
    return RankResult(int(np.sum(s > thresh)), "numeric", ())


def det_exact(m: ExactMatrix) -> ComplexRational:
    """Exact determinant (square matrices) via rational elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    a = [list(row) for row in m.data]
    det = ONE
    for col in range(n):
        sel = None
        for r in range(col, n):
            if not a[r][col].is_zero():
                sel = r
                break
        if sel is None:
            return ZERO
        if sel != col:
            a[col], a[sel] = a[sel], a[col]
            det = -det
        pivot = a[col][col]
        det = det * pivot
        for r in range(col + 1, n):
            f = a[r][col] / pivot
            if f.is_zero():
                continue
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def invert_exact(m: ExactMatrix) -> ExactMatrix:
    """Exact inverse of a square invertible matrix (Gauss-Jordan)."""
    if m.rows != m.cols:
        raise ValueError("inverse needs a square matrix")
    n = m.rows
    a = [list(row) + list(ident_row) for row, ident_row in
         zip(m.data, ExactMatrix.identity(n).data)]
    for col in range(n):
        sel = None
        for r in range(col, n):
            if not a[r][col].is_zero():
                sel = r
                break
        if sel is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[sel] = a[sel], a[col]
        pivot = a[col][col]
        a[col] = [x / pivot for x in a[col]]
        for r in range(n):
            if r == col or a[r][col].is_zero():
                continue
            f = a[r][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return ExactMatrix([row[n:] for row in a])
