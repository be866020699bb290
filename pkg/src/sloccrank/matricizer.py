"""Coefficient matrices, the qudit-permutation set, and split selection.

A split l puts the first l (permuted) sites on the rows of the matricization
and the remaining n-l sites on the columns, both blocks in lexicographic
order. Permutations are products of disjoint row<->column transpositions
(r_i, c_i) with ascending r_i on the row side and ascending c_i on the column
side, paired by sorted order.

Known quirk, implemented as specified: for odd n and l = (n-1)/2 the k-cap
l - (n mod 2) excludes the full-replacement permutation even though the row
and column pools would allow it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .linalg import ExactMatrix
from .scalars import ComplexRational, ZERO
from .states import (
    QuditState,
    check_dims,
    flat_index,
    multiindex_of,
    total_dim,
)


@dataclass(frozen=True)
class QuditPermutation:
    """Product of disjoint row<->column transpositions; () is the identity."""

    transpositions: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        ts = tuple((int(r), int(c)) for r, c in self.transpositions)
        object.__setattr__(self, "transpositions", ts)
        rows = [r for r, _ in ts]
        cols = [c for _, c in ts]
        if rows != sorted(set(rows)) or cols != sorted(set(cols)):
            raise ValueError(
                f"transpositions must have strictly ascending rows and columns: {ts}"
            )

    @property
    def k(self) -> int:
        return len(self.transpositions)

    def is_identity(self) -> bool:
        return not self.transpositions

    def site_order(self, n: int) -> Tuple[int, ...]:
        """Permuted site sequence: position i holds site site_order[i]."""
        order = list(range(1, n + 1))
        for r, c in self.transpositions:
            if not (1 <= r <= n and 1 <= c <= n):
                raise ValueError(f"transposition ({r},{c}) out of range for n={n}")
            order[r - 1], order[c - 1] = order[c - 1], order[r - 1]
        return tuple(order)

    def label(self) -> str:
        if self.is_identity():
            return "I"
        return "".join(f"({r},{c})" for r, c in self.transpositions)

    @classmethod
    def parse(cls, text: str) -> "QuditPermutation":
        text = text.strip()
        if text in ("I", "", "()"):
            return cls(())
        parts = text.replace(" ", "")
        if not (parts.startswith("(") and parts.endswith(")")):
            raise ValueError(f"cannot parse permutation {text!r}")
        ts = []
        for chunk in parts[1:-1].split(")("):
            r, c = chunk.split(",")
            ts.append((int(r), int(c)))
        return cls(tuple(ts))


@dataclass(frozen=True)
class PermutationSet:
    n: int
    l: int
    sigmas: Tuple[QuditPermutation, ...]

    def __len__(self):
        return len(self.sigmas)

    def __iter__(self):
        return iter(self.sigmas)

    def labels(self) -> Tuple[str, ...]:
        return tuple(s.label() for s in self.sigmas)


def _check_split(n: int, l: int) -> int:
    l = int(l)
    if not 1 <= l <= n - 1:
        raise ValueError(f"split l={l} out of range [1, {n - 1}]")
    return l


def _sigmas_general(n: int, l: int) -> List[QuditPermutation]:
    """Transposition set for l >= 2 (degenerates to {I} for tiny pools)."""
    row_pool = tuple(range(1, l + (n % 2)))
    col_pool = tuple(range(l + 1, n + 1))
    kmax = min(l - (n % 2), len(row_pool), len(col_pool))
    out = [QuditPermutation(())]
    for k in range(1, kmax + 1):
        for rows in combinations(row_pool, k):
            for cols in combinations(col_pool, k):
                out.append(QuditPermutation(tuple(zip(rows, cols))))
    return out


def permutation_set(n: int, l: int, dims: Sequence[int] | None = None) -> PermutationSet:
    """Canonical permutation set: ascending k, then lex on rows, then columns.

    For l = 1 this is the single-site family sigma_k = (1, k+1), k = 0..n-1.
    """
    l = _check_split(n, l)
    if l == 1:
        sigmas = [QuditPermutation(())]
        sigmas += [QuditPermutation(((1, j),)) for j in range(2, n + 1)]
    else:
        sigmas = _sigmas_general(n, l)
    return PermutationSet(n, l, tuple(sigmas))


@dataclass(frozen=True)
class CoefficientMatrix:
    """Matricization of a state for a given split and permutation (sparse)."""

    split: int
    sigma: QuditPermutation
    row_dims: Tuple[int, ...]
    col_dims: Tuple[int, ...]
    entries: Tuple[Tuple[int, int, ComplexRational], ...]  # (row, col, value)

    @property
    def rows(self) -> int:
        return total_dim(self.row_dims)

    @property
    def cols(self) -> int:
        return total_dim(self.col_dims)

    def to_matrix(self) -> ExactMatrix:
        grid = [[ZERO] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            grid[r][c] = v
        return ExactMatrix(grid)


def _matricize_by_order(
    state: QuditState, order: Sequence[int], l: int
) -> Tuple[Tuple[int, ...], Tuple[int, ...], Dict[Tuple[int, int], ComplexRational]]:
    dims = state.dims
    perm_dims = tuple(dims[q - 1] for q in order)
    row_dims, col_dims = perm_dims[:l], perm_dims[l:]
    entries: Dict[Tuple[int, int], ComplexRational] = {}
    for i, a in state.amplitudes.items():
        digits = multiindex_of(i, dims)
        pd = tuple(digits[q - 1] for q in order)
        r = flat_index(pd[:l], row_dims)
        c = flat_index(pd[l:], col_dims)
        entries[(r, c)] = a
    return row_dims, col_dims, entries


def coefficient_matrix(
    state: QuditState, l: int, sigma: QuditPermutation = QuditPermutation(())
) -> CoefficientMatrix:
    """Coefficient matrix of the state under split l and permutation sigma."""
    n = state.n
    l = _check_split(n, l)
    for r, c in sigma.transpositions:
        if not (1 <= r <= l and l < c <= n):
            raise ValueError(
                f"transposition ({r},{c}) invalid for n={n}, l={l}: "
                "rows must come from the row block, columns from the column block"
            )
    order = sigma.site_order(n)
    row_dims, col_dims, entries = _matricize_by_order(state, order, l)
    packed = tuple(
        (r, c, v) for (r, c), v in sorted(entries.items())
    )
    return CoefficientMatrix(l, sigma, row_dims, col_dims, packed)


def reduced_density(state: QuditState, row_qudits: Sequence[int]) -> ExactMatrix:
    """Single/multi-site reduced density matrix M M^dagger (unnormalized)."""
    n = state.n
    sites = [int(q) for q in row_qudits]
    if not sites or len(sites) >= n:
        raise ValueError(
            f"row qudits must be a nonempty proper subset of 1..{n}, got {sites}"
        )
    if len(set(sites)) != len(sites) or any(not 1 <= q <= n for q in sites):
        raise ValueError(f"invalid site subset {sites} for n={n}")
    rest = [q for q in range(1, n + 1) if q not in sites]
    order = tuple(sites + rest)
    row_dims, col_dims, entries = _matricize_by_order(state, order, len(sites))
    rows, cols = total_dim(row_dims), total_dim(col_dims)
    grid = [[ZERO] * cols for _ in range(rows)]
    for (r, c), v in entries.items():
        grid[r][c] = v
    m = ExactMatrix(grid)
    return m.matmul(m.dagger())


# ---------------------------------------------------------------------------
# split capacity and optimal split
# ---------------------------------------------------------------------------

def _capacity_sigma_count_shapes(n: int, l: int, dims: Tuple[int, ...]):
    """(row product, col product) per sigma for the capacity formula."""
    shapes = []
    for sigma in _sigmas_general(n, l):
        order = sigma.site_order(n)
        perm = tuple(dims[q - 1] for q in order)
        shapes.append((total_dim(perm[:l]), total_dim(perm[l:])))
    return shapes


def split_capacity(dims: Sequence[int], l: int) -> int:
    """Family-count capacity of a split.

    Arrangement-independent: dims are sorted descending and the split is
    mirrored to l* = min(l, n-l) (transposing a matricization never changes
    its rank), then the capacity is the product over the l* permutation set
    of min(row product, column product). At l* = 1 the set degenerates to
    {I}, which reproduces the reference values (4, 64, 4) for dims (2,2,2,4).
    """
    dims = check_dims(dims)
    n = len(dims)
    l = _check_split(n, l)
    l_star = min(l, n - l)
    sorted_dims = tuple(sorted(dims, reverse=True))
    p = 1
    for rows, cols in _capacity_sigma_count_shapes(n, l_star, sorted_dims):
        p *= min(rows, cols)
    return p


def optimal_split(dims: Sequence[int]) -> int:
    """The l maximizing split_capacity; ties broken by the smallest l."""
    dims = check_dims(dims)
    n = len(dims)
    best_l, best_p = 1, split_capacity(dims, 1)
    for l in range(2, n):
        p = split_capacity(dims, l)
        if p > best_p:
            best_l, best_p = l, p
    return best_l
