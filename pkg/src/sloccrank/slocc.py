"""Tensor-factored local operators and randomized theorem verification.

Everything here is exact: random local operators have Gaussian-integer
entries, so the matricization identity for locally transformed states and
the rank-nonincrease checks are decided with no tolerance at all.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import ExactMatrix, det_exact, invert_exact, kron_all, rank_exact
from .matricizer import (
    QuditPermutation,
    coefficient_matrix,
    permutation_set,
)
from .scalars import ComplexRational, ZERO
from .states import QuditState, ZeroStateError, multiindex_of, total_dim


class ZeroResultError(ZeroStateError):
    """A (singular) local operator set annihilated the state."""


@dataclass(frozen=True)
class LocalOperator:
    site: int  # 1-based
    matrix: ExactMatrix

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols:
            raise ValueError("local operators must be square")

    @property
    def dim(self) -> int:
        return self.matrix.rows


class LocalOperatorSet:
    """One local operator per site, sites 1..n."""

    def __init__(self, operators: Sequence[LocalOperator]):
        ops = sorted(operators, key=lambda op: op.site)
        if [op.site for op in ops] != list(range(1, len(ops) + 1)):
            raise ValueError("need exactly one operator per site 1..n")
        self.operators = tuple(ops)

    def __iter__(self):
        return iter(self.operators)

    def __len__(self):
        return len(self.operators)

    def __getitem__(self, site: int) -> LocalOperator:
        return self.operators[site - 1]

    def check_dims(self, dims: Sequence[int]) -> None:
        if len(self.operators) != len(dims):
            raise ValueError("operator count does not match number of sites")
        for op, d in zip(self.operators, dims):
            if op.dim != d:
                raise ValueError(
                    f"operator at site {op.site} is {op.dim}x{op.dim}, "
                    f"site dimension is {d}"
                )

    @property
    def invertible(self) -> bool:
        return all(not det_exact(op.matrix).is_zero() for op in self.operators)

    def inverses(self) -> "LocalOperatorSet":
        return LocalOperatorSet(
            [LocalOperator(op.site, invert_exact(op.matrix)) for op in self.operators]
        )

    @classmethod
    def identity(cls, dims: Sequence[int]) -> "LocalOperatorSet":
        return cls(
            [LocalOperator(k + 1, ExactMatrix.identity(d)) for k, d in enumerate(dims)]
        )


def apply_local(state: QuditState, ops: LocalOperatorSet) -> QuditState:
    """Apply the tensor product of local operators to the state, exactly.

    Raises ZeroResultError if the result is the zero vector (possible when
    some factor is singular).
    """
    dims = state.dims
    ops.check_dims(dims)
    n = len(dims)
    strides = [1] * n
    for k in range(n - 2, -1, -1):
        strides[k] = strides[k + 1] * dims[k + 1]
    amps: Dict[int, ComplexRational] = dict(state.amplitudes)
    for k in range(n):
        mat = ops[k + 1].matrix.data
        d = dims[k]
        stride = strides[k]
        new: Dict[int, ComplexRational] = {}
        for i, a in amps.items():
            s = (i // stride) % d
            base = i - s * stride
            for t in range(d):
                f = mat[t][s]
                if f.is_zero():
                    continue
                j = base + t * stride
                cur = new.get(j)
                new[j] = f * a if cur is None else cur + f * a
        amps = {j: v for j, v in new.items() if not v.is_zero()}
        if not amps:
            raise ZeroResultError(
                "local operator set annihilated the state (singular factors)"
            )
    return QuditState(dims, amps)


def verify_theorem1(
    state: QuditState,
    ops: LocalOperatorSet,
    l: int,
    sigma: QuditPermutation = QuditPermutation(()),
) -> bool:
    """Exact check of the matricization identity for local transformations.

    With psi = (F_1 x ... x F_n) phi, the coefficient matrix of psi under
    (l, sigma) must equal (x_{row block} F) M^sigma(phi) (x_{col block} F)^T,
    each factor travelling with its qudit under sigma. Holds for arbitrary,
    including singular, factors; if the transformed state is the zero vector
    the identity is checked against the zero matrix.
    """
    ops.check_dims(state.dims)
    n = state.n
    order = sigma.site_order(n)
    row_factors = [ops[q].matrix for q in order[:l]]
    col_factors = [ops[q].matrix for q in order[l:]]
    m_phi = coefficient_matrix(state, l, sigma).to_matrix()
    rhs = kron_all(row_factors).matmul(m_phi).matmul(kron_all(col_factors).transpose())
    try:
        psi = apply_local(state, ops)
    except ZeroResultError:
        return all(x.is_zero() for row in rhs.data for x in row)
    m_psi = coefficient_matrix(psi, l, sigma).to_matrix()
    return m_psi == rhs


def rank_table(state: QuditState) -> Dict[Tuple[int, str], int]:
    """Exact ranks at every split l and every sigma in its canonical set."""
    out: Dict[Tuple[int, str], int] = {}
    n = state.n
    for l in range(1, n):
        for sigma in permutation_set(n, l, state.dims):
            m = coefficient_matrix(state, l, sigma).to_matrix()
            out[(l, sigma.label())] = rank_exact(m).rank
    return out


def check_monotone_nonincrease(
    state: QuditState, ops: LocalOperatorSet
) -> Tuple[bool, Dict[Tuple[int, str], Tuple[int, int]]]:
    """True iff no coefficient-matrix rank grows under the local operators.

    Returns (ok, {(l, sigma): (rank_before, rank_after)}). Raises
    ZeroResultError when the operators annihilate the state; callers count
    those trials as skips, not failures.
    """
    before = rank_table(state)
    after = rank_table(apply_local(state, ops))
    pairs = {key: (before[key], after[key]) for key in before}
    ok = all(b >= a for b, a in pairs.values())
    return ok, pairs


# ---------------------------------------------------------------------------
# random sampling (all deterministic given the seed)
# ---------------------------------------------------------------------------

def _random_matrix(d: int, rng: random.Random, entry_bound: int) -> ExactMatrix:
    return ExactMatrix(
        [
            [
                ComplexRational(
                    rng.randint(-entry_bound, entry_bound),
                    rng.randint(-entry_bound, entry_bound),
                )
                for _ in range(d)
            ]
            for _ in range(d)
        ]
    )


def random_ilo(
    d: int,
    seed: Optional[int] = None,
    entry_bound: int = 3,
    rng: Optional[random.Random] = None,
) -> ExactMatrix:
    """Random Gaussian-integer matrix resampled until exactly invertible."""
    if d < 2 or entry_bound < 1:
        raise ValueError(f"need d >= 2 and entry_bound >= 1, got {d}, {entry_bound}")
    if rng is None:
        rng = random.Random(seed)
    for _ in range(1000):
        m = _random_matrix(d, rng, entry_bound)
        if not det_exact(m).is_zero():
            return m
    raise RuntimeError("could not sample an invertible matrix in 1000 attempts")


def random_local_possibly_singular(
    d: int,
    seed: Optional[int] = None,
    entry_bound: int = 3,
    force_singular: bool = False,
    rng: Optional[random.Random] = None,
) -> ExactMatrix:
    """Unconstrained random matrix, or one with determinant exactly zero.

    Singular matrices are sums of at most d-1 outer products of random
    Gaussian-integer vectors, so their rank deficiency is structural.
    """
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    if rng is None:
        rng = random.Random(seed)
    if not force_singular:
        return _random_matrix(d, rng, entry_bound)
    terms = rng.randint(1, d - 1)
    grid = [[ZERO] * d for _ in range(d)]
    for _ in range(terms):
        u = [
            ComplexRational(
                rng.randint(-entry_bound, entry_bound),
                rng.randint(-entry_bound, entry_bound),
            )
            for _ in range(d)
        ]
        v = [
            ComplexRational(
                rng.randint(-entry_bound, entry_bound),
                rng.randint(-entry_bound, entry_bound),
            )
            for _ in range(d)
        ]
        for i in range(d):
            for j in range(d):
                grid[i][j] = grid[i][j] + u[i] * v[j]
    return ExactMatrix(grid)


def random_ilo_set(
    dims: Sequence[int], rng: random.Random, entry_bound: int = 3
) -> LocalOperatorSet:
    return LocalOperatorSet(
        [
            LocalOperator(k + 1, random_ilo(d, entry_bound=entry_bound, rng=rng))
            for k, d in enumerate(dims)
        ]
    )


def random_possibly_singular_set(
    dims: Sequence[int], rng: random.Random, entry_bound: int = 3
) -> LocalOperatorSet:
    ops = []
    for k, d in enumerate(dims):
        force = rng.random() < 0.5
        ops.append(
            LocalOperator(
                k + 1,
                random_local_possibly_singular(
                    d, entry_bound=entry_bound, force_singular=force, rng=rng
                ),
            )
        )
    return LocalOperatorSet(ops)


def random_dims(
    rng: random.Random,
    max_sites: int = 5,
    max_dim: int = 4,
    max_total: int = 1024,
) -> Tuple[int, ...]:
    while True:
        n = rng.randint(2, max_sites)
        dims = tuple(rng.randint(2, max_dim) for _ in range(n))
        if total_dim(dims) <= max_total:
            return dims


def random_sparse_state(
    dims: Sequence[int],
    rng: random.Random,
    max_terms: int = 8,
    entry_bound: int = 3,
) -> QuditState:
    D = total_dim(dims)
    k = rng.randint(1, min(max_terms, D))
    indices = rng.sample(range(D), k)
    amps: Dict[int, ComplexRational] = {}
    for i in indices:
        while True:
            a = rng.randint(-entry_bound, entry_bound)
            b = rng.randint(-entry_bound, entry_bound)
            if a or b:
                break
        amps[i] = ComplexRational(a, b)
    return QuditState(dims, amps)


# ---------------------------------------------------------------------------
# trial harnesses (shared by the CLI and the acceptance suite)
# ---------------------------------------------------------------------------

def run_theorem1_trials(
    trials: int,
    seed: int,
    dims: Optional[Sequence[int]] = None,
    entry_bound: int = 3,
) -> List[dict]:
    """Randomized identity + signature-invariance trials for invertible ops."""
    from .classifier import signature

    rng = random.Random(seed)
    records = []
    for t in range(trials):
        trial_dims = tuple(dims) if dims else random_dims(rng)
        state = random_sparse_state(trial_dims, rng)
        ops = random_ilo_set(trial_dims, rng, entry_bound)
        n = len(trial_dims)
        identity_ok = True
        pair_ranks = {}
        for l in range(1, n):
            for sigma in permutation_set(n, l, trial_dims):
                if not verify_theorem1(state, ops, l, sigma):
                    identity_ok = False
        sig_before = signature(state)
        sig_after = signature(apply_local(state, ops))
        sig_ok = sig_before.ranks == sig_after.ranks
        for (l, lab), (b, a) in check_monotone_nonincrease(state, ops)[1].items():
            pair_ranks[f"l={l} sigma={lab}"] = [b, a]
        records.append(
            {
                "trial": t,
                "dims": list(trial_dims),
                "identity_ok": identity_ok,
                "signature_ok": sig_ok,
                "result": "pass" if identity_ok and sig_ok else "fail",
                "ranks": pair_ranks,
            }
        )
    return records


def run_monotone_trials(
    trials: int,
    seed: int,
    dims: Optional[Sequence[int]] = None,
    entry_bound: int = 3,
) -> List[dict]:
    """Randomized rank-nonincrease trials with possibly singular operators."""
    rng = random.Random(seed)
    records = []
    for t in range(trials):
        trial_dims = tuple(dims) if dims else random_dims(rng)
        state = random_sparse_state(trial_dims, rng)
        ops = random_possibly_singular_set(trial_dims, rng, entry_bound)
        rec = {"trial": t, "dims": list(trial_dims), "invertible": ops.invertible}
        try:
            ok, pairs = check_monotone_nonincrease(state, ops)
        except ZeroResultError:
            rec["result"] = "skip"
            records.append(rec)
            continue
        if ops.invertible:
            ok = ok and all(b == a for b, a in pairs.values())
        rec["result"] = "pass" if ok else "fail"
        rec["ranks"] = {
            f"l={l} sigma={lab}": [b, a] for (l, lab), (b, a) in pairs.items()
        }
        records.append(rec)
    return records
