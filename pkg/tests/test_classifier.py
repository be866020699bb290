"""Rank signatures, family labels, the reference table, Dicke scans."""

import random
from fractions import Fraction

import pytest

from sloccrank.classifier import (
    RankSignature,
    ScanRow,
    classify,
    classify_to_csv,
    dicke_scan,
    family_label,
    scan_to_csv,
    signature,
    table1_suite,
)
from sloccrank.linalg import rank_exact, rank_numeric
from sloccrank.matricizer import coefficient_matrix, permutation_set
from sloccrank.scalars import ComplexRational
from sloccrank.slocc import apply_local, random_ilo_set
from sloccrank.states import QuditState, flat_index, gen_dicke3, gen_ghz, gen_w

from oracles import matched_occupation_classes, rank_mod_prime


# -- signatures and labels --------------------------------------------------

def test_signature_ghz4():
    sig = signature(gen_ghz(4, 2), 2)
    assert sig.ranks == (2, 2, 2)
    assert sig.sigma_set.labels() == ("I", "(1,3)", "(1,4)")
    assert family_label(sig) == "F{2,2,2}@{I,(1,3),(1,4)}"


def test_signature_product_state():
    dims = (2, 2, 2, 4)
    s = QuditState(dims, {0: ComplexRational(1)})
    assert signature(s, 2).ranks == (1, 1, 1)


def test_signature_auto_split():
    sig = signature(gen_ghz(4, 2))
    assert sig.split == 2


def test_signature_w4():
    assert signature(gen_w(4), 2).ranks == (2, 2, 2)


def test_signature_rejects_mismatched_ranks():
    pset = permutation_set(4, 2)
    with pytest.raises(ValueError):
        RankSignature(2, pset, (1, 2))


def test_signature_invariant_under_invertible_ops():
    rng = random.Random(77)
    s = gen_w(4)
    for _ in range(5):
        ops = random_ilo_set(s.dims, rng)
        t = apply_local(s, ops)
        assert signature(t, 2).ranks == signature(s, 2).ranks


# -- classify ---------------------------------------------------------------

def test_classify_groups_equal_signatures():
    states = [gen_ghz(4, 2), gen_w(4), QuditState((2,) * 4, {0: ComplexRational(1)})]
    groups = classify(states, 2, ids=["ghz", "w", "product"])
    assert groups == {
        "F{1,1,1}@{I,(1,3),(1,4)}": ["product"],
        "F{2,2,2}@{I,(1,3),(1,4)}": ["ghz", "w"],
    }


def test_classify_validation():
    with pytest.raises(ValueError):
        classify([gen_ghz(3, 2), gen_ghz(3, 3)], 1)
    with pytest.raises(ValueError):
        classify([gen_ghz(3, 2)], 1, ids=["a", "b"])
    assert classify([], 1) == {}


def test_classify_csv_shape():
    groups = classify([gen_ghz(4, 2), gen_w(4)], 2, ids=["g", "w"])
    csv = classify_to_csv(groups, 2, permutation_set(4, 2))
    lines = csv.strip().splitlines()
    assert lines[1] == "state_id,l,sigma_list,ranks,family_label"
    assert 'g,2,"I;(1,3);(1,4)","2,2,2","F{2,2,2}@{I,(1,3),(1,4)}"' in lines


# -- reference table --------------------------------------------------------

def test_table_has_24_states_and_22_families():
    suite = table1_suite()
    assert len(suite) == 24
    labels = {expected for _, _, expected in suite}
    assert len(labels) == 22


def test_table_signatures_match_their_subscripts():
    for name, state, expected in table1_suite():
        assert family_label(signature(state, 2)) == expected, name


def test_table_shared_families_are_the_rank222_trio():
    suite = table1_suite()
    by_label = {}
    for name, _, expected in suite:
        by_label.setdefault(expected, []).append(name)
    shared = {lab: names for lab, names in by_label.items() if len(names) > 1}
    assert set(shared) == {"F{2,2,2}@{I,(1,3),(1,4)}"}
    assert sorted(shared["F{2,2,2}@{I,(1,3),(1,4)}"]) == [
        "F222a", "F222b_W", "F222c_GHZ"
    ]


def test_table_product_and_maximal_rows():
    suite = {name: (state, expected) for name, state, expected in suite_list()}
    _, expected = suite["F111"]
    assert expected == "F{1,1,1}@{I,(1,3),(1,4)}"
    _, expected = suite["F444"]
    assert expected == "F{4,4,4}@{I,(1,3),(1,4)}"


def suite_list():
    return table1_suite()


# -- Dicke scans ------------------------------------------------------------

def test_dicke_scan_small_matches_generic_signature():
    pset, rows = dicke_scan(3, 5)
    assert pset.labels() == permutation_set(5, 2).labels()
    for row in rows:
        l1, l2 = row.occupations[1], row.occupations[2]
        state = gen_dicke3(5, l1, l2)
        sig = signature(state, 2)
        assert row.ranks == sig.ranks, row.occupations


def test_dicke_scan_rank_matches_occupation_class_oracle():
    _, rows = dicke_scan(3, 7)
    for row in rows:
        expected = matched_occupation_classes(7, 3, row.occupations[1:])
        assert row.ranks[0] == expected, row.occupations


def test_dicke_scan_pure_zero_occupation_is_product():
    _, rows = dicke_scan(3, 4)
    by_occ = {row.occupations: row for row in rows}
    assert set(by_occ[(4, 0, 0)].ranks) == {1}


def test_dicke_scan_variance_is_exact():
    _, rows = dicke_scan(3, 4)
    by_occ = {row.occupations: row for row in rows}
    assert by_occ[(2, 1, 1)].variance == Fraction(2, 9)
    assert by_occ[(4, 0, 0)].variance == Fraction(
        (Fraction(8, 3) ** 2 + 2 * Fraction(4, 3) ** 2), 3
    )


def test_dicke_scan_d39_pinned_ranks():
    _, rows = dicke_scan(3, 9)
    by_occ = {row.occupations: row for row in rows}
    assert by_occ[(3, 3, 3)].ranks[0] == 12
    assert by_occ[(7, 1, 1)].ranks[0] == 4
    assert by_occ[(8, 0, 1)].ranks[0] == 2


def test_dicke_d39_balanced_rank_confirmed_by_dual_oracle():
    state = gen_dicke3(9, 3, 3)
    m = coefficient_matrix(state, 4).to_matrix()
    assert rank_exact(m).rank == 12
    assert rank_mod_prime(m) == 12
    assert rank_numeric(m).rank == 12


def test_dicke_scan_rejects_out_of_range():
    with pytest.raises(ValueError):
        dicke_scan(5, 4)
    with pytest.raises(ValueError):
        dicke_scan(3, 11)
    with pytest.raises(ValueError):
        dicke_scan(4, 9)


def test_scan_csv_layout():
    pset, rows = dicke_scan(3, 4)
    csv = scan_to_csv(3, pset, rows)
    lines = csv.splitlines()
    assert lines[0].startswith("# columns: l0,l1,l2,variance,rank_sigma0")
    assert lines[1] == "# sigma order: I;(1,3);(1,4)"
    assert lines[2] == (
        "l0,l1,l2,variance,rank_sigma0,rank_sigma1,rank_sigma2,family_label"
    )
    assert len(lines) == 3 + len(rows)
    import csv as csv_mod

    cells = next(csv_mod.reader([lines[3]]))
    assert len(cells) == 8
    assert cells[-1].startswith("F{")


def test_scan_csv_levels4_has_l3_column():
    pset, rows = dicke_scan(4, 4)
    csv = scan_to_csv(4, pset, rows)
    header = csv.splitlines()[2]
    assert header.startswith("l0,l1,l2,l3,variance")
