"""Local operator application, matricization identity, rank monotonicity."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from sloccrank.linalg import ExactMatrix, det_exact, rank_exact
from sloccrank.matricizer import QuditPermutation, permutation_set
from sloccrank.scalars import ComplexRational
from sloccrank.slocc import (
    LocalOperator,
    LocalOperatorSet,
    ZeroResultError,
    apply_local,
    check_monotone_nonincrease,
    random_dims,
    random_ilo,
    random_ilo_set,
    random_local_possibly_singular,
    random_possibly_singular_set,
    random_sparse_state,
    rank_table,
    run_monotone_trials,
    run_theorem1_trials,
    verify_theorem1,
)
from sloccrank.states import QuditState, flat_index, gen_ghz, gen_w, total_dim

from oracles import apply_dense


def dicts_equal(state, amp_map):
    return state.amplitudes == amp_map


# -- LocalOperatorSet -------------------------------------------------------

def test_operator_set_validates_sites_and_dims():
    ops = LocalOperatorSet(
        [
            LocalOperator(2, ExactMatrix.identity(3)),
            LocalOperator(1, ExactMatrix.identity(2)),
        ]
    )
    assert [op.site for op in ops] == [1, 2]
    ops.check_dims((2, 3))
    with pytest.raises(ValueError):
        ops.check_dims((3, 2))
    with pytest.raises(ValueError):
        LocalOperatorSet([LocalOperator(2, ExactMatrix.identity(2))])
    with pytest.raises(ValueError):
        LocalOperator(1, ExactMatrix.from_ints([[1, 2]]))


def test_operator_set_inverses():
    rng = random.Random(3)
    ops = random_ilo_set((2, 3), rng)
    inv = ops.inverses()
    for op, iop in zip(ops, inv):
        assert op.matrix.matmul(iop.matrix) == ExactMatrix.identity(op.dim)


# -- apply_local ------------------------------------------------------------

def test_apply_identity_is_noop():
    s = gen_w(3)
    assert apply_local(s, LocalOperatorSet.identity(s.dims)) == s


def test_apply_single_site_example():
    # X on site 2 of |00>: |00> -> |01>
    x = ExactMatrix.from_ints([[0, 1], [1, 0]])
    i2 = ExactMatrix.identity(2)
    s = QuditState((2, 2), {0: ComplexRational(1)})
    out = apply_local(
        s, LocalOperatorSet([LocalOperator(1, i2), LocalOperator(2, x)])
    )
    assert out.amplitude((0, 1)) == ComplexRational(1)
    assert len(out.amplitudes) == 1


def test_apply_superposition_example():
    # F = |0><0| + |0><1| on site 1 maps both |0> and |1> to |0>,
    # so GHZ_2 = |00> + |11> goes to |00> + |01>
    f = ExactMatrix.from_ints([[1, 1], [0, 0]])
    i2 = ExactMatrix.identity(2)
    s = gen_ghz(2, 2)
    out = apply_local(
        s, LocalOperatorSet([LocalOperator(1, f), LocalOperator(2, i2)])
    )
    assert out.amplitude((0, 0)) == ComplexRational(1)
    assert out.amplitude((0, 1)) == ComplexRational(1)
    assert len(out.amplitudes) == 2


def test_apply_annihilation_raises():
    zero_op = ExactMatrix.from_ints([[0, 0], [1, 0]])  # kills |1>
    i2 = ExactMatrix.identity(2)
    s = QuditState((2, 2), {flat_index((1, 0), (2, 2)): ComplexRational(1)})
    with pytest.raises(ZeroResultError):
        apply_local(
            s, LocalOperatorSet([LocalOperator(1, zero_op), LocalOperator(2, i2)])
        )


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_apply_matches_dense_kron_oracle(seed):
    rng = random.Random(seed)
    dims = random_dims(rng, max_sites=3, max_dim=3, max_total=27)
    s = random_sparse_state(dims, rng)
    ops = random_possibly_singular_set(dims, rng)
    expected = apply_dense(s, [op.matrix for op in ops])
    try:
        out = apply_local(s, ops)
    except ZeroResultError:
        assert expected == {}
        return
    assert dicts_equal(out, expected)


@given(st.integers(0, 10**6))
@settings(max_examples=20, deadline=None)
def test_apply_inverse_restores_state(seed):
    rng = random.Random(seed)
    dims = random_dims(rng, max_sites=4, max_dim=3, max_total=81)
    s = random_sparse_state(dims, rng)
    ops = random_ilo_set(dims, rng)
    assert apply_local(apply_local(s, ops), ops.inverses()) == s


# -- matricization identity -------------------------------------------------

def test_identity_holds_for_identity_ops():
    s = gen_ghz(4, 2)
    ops = LocalOperatorSet.identity(s.dims)
    for l in range(1, 4):
        for sigma in permutation_set(4, l):
            assert verify_theorem1(s, ops, l, sigma)


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_identity_holds_for_random_invertible_ops(seed):
    rng = random.Random(seed)
    dims = random_dims(rng, max_sites=4, max_dim=3, max_total=81)
    s = random_sparse_state(dims, rng)
    ops = random_ilo_set(dims, rng)
    n = len(dims)
    for l in range(1, n):
        for sigma in permutation_set(n, l, dims):
            assert verify_theorem1(s, ops, l, sigma)


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_identity_holds_for_singular_ops(seed):
    rng = random.Random(seed)
    dims = random_dims(rng, max_sites=3, max_dim=3, max_total=27)
    s = random_sparse_state(dims, rng)
    ops = random_possibly_singular_set(dims, rng)
    n = len(dims)
    for l in range(1, n):
        for sigma in permutation_set(n, l, dims):
            assert verify_theorem1(s, ops, l, sigma)


def test_identity_detects_wrong_routing():
    # a deliberately broken check: compare against factors NOT routed by sigma
    from sloccrank.linalg import kron_all
    from sloccrank.matricizer import coefficient_matrix

    rng = random.Random(12)
    dims = (2, 2, 2)
    sigma = QuditPermutation(((1, 3),))
    for _ in range(20):
        s = random_sparse_state(dims, rng)
        ops = random_ilo_set(dims, rng)
        psi = apply_local(s, ops)
        m_phi = coefficient_matrix(s, 1, sigma).to_matrix()
        m_psi = coefficient_matrix(psi, 1, sigma).to_matrix()
        unrouted = (
            kron_all([ops[1].matrix])
            .matmul(m_phi)
            .matmul(kron_all([ops[2].matrix, ops[3].matrix]).transpose())
        )
        if m_psi != unrouted:
            return  # mis-routing is observable, as it should be
    pytest.fail("unrouted factors never disagreed; test has no power")


# -- monotonicity -----------------------------------------------------------

def test_rank_table_ghz():
    table = rank_table(gen_ghz(4, 3))
    assert set(r for r in table.values()) == {3}
    assert len(table) == 4 + 3 + 3  # l=1: 4 sigmas, l=2: 3, l=3: 3


def test_projector_collapses_ranks():
    # projecting site 1 of GHZ onto |0> leaves the product state |000>
    p0 = ExactMatrix.from_ints([[1, 0], [0, 0]])
    i2 = ExactMatrix.identity(2)
    s = gen_ghz(3, 2)
    ops = LocalOperatorSet(
        [LocalOperator(1, p0), LocalOperator(2, i2), LocalOperator(3, i2)]
    )
    ok, pairs = check_monotone_nonincrease(s, ops)
    assert ok
    assert all(b == 2 and a == 1 for b, a in pairs.values())


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_monotone_never_increases(seed):
    rng = random.Random(seed)
    dims = random_dims(rng, max_sites=4, max_dim=3, max_total=81)
    s = random_sparse_state(dims, rng)
    ops = random_possibly_singular_set(dims, rng)
    try:
        ok, pairs = check_monotone_nonincrease(s, ops)
    except ZeroResultError:
        return
    assert ok
    if ops.invertible:
        assert all(b == a for b, a in pairs.values())


# -- random samplers --------------------------------------------------------

def test_random_ilo_always_invertible():
    rng = random.Random(0)
    for _ in range(200):
        m = random_ilo(4, rng=rng)
        assert not det_exact(m).is_zero()


def test_random_singular_has_deficient_rank():
    rng = random.Random(1)
    for _ in range(50):
        m = random_local_possibly_singular(4, force_singular=True, rng=rng)
        assert det_exact(m).is_zero()
        assert rank_exact(m).rank <= 3


def test_random_ilo_seed_reproducible():
    assert random_ilo(3, seed=42) == random_ilo(3, seed=42)
    assert random_sparse_state((2, 3), random.Random(7)) == random_sparse_state(
        (2, 3), random.Random(7)
    )


def test_random_dims_respects_caps():
    rng = random.Random(9)
    for _ in range(100):
        dims = random_dims(rng)
        assert 2 <= len(dims) <= 5
        assert all(2 <= d <= 4 for d in dims)
        assert total_dim(dims) <= 1024


# -- trial harnesses --------------------------------------------------------

def test_theorem1_harness_passes_and_is_deterministic():
    a = run_theorem1_trials(5, seed=123)
    b = run_theorem1_trials(5, seed=123)
    assert a == b
    assert all(r["result"] == "pass" for r in a)


def test_monotone_harness_passes_and_reports_skips():
    records = run_monotone_trials(30, seed=321)
    assert all(r["result"] in ("pass", "skip") for r in records)
    # skip records must carry no rank table
    for r in records:
        if r["result"] == "skip":
            assert "ranks" not in r
