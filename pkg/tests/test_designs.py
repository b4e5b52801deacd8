import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import check_design_invariants
from minor_designs import constructions as C
from minor_designs.designs import (
    BlockSet,
    extract_blocks,
    five_subset_property,
    render_parameters,
    verify_pbibd,
    verify_regular_pbd,
    verify_t_design,
)
from minor_designs.errors import InvalidParams, SchemeMismatch
from minor_designs.scalar import Scalar
from minor_designs.schemes import bgw_3class, hadamard_3class, hamming, srg_2class


def full(v, k):
    return BlockSet.uniform(v, k, list(itertools.combinations(range(v), k)))


def test_skew_conference_blocks(skew8):
    bs = extract_blocks(skew8, 4, 9)
    assert len(bs) == 28
    rep = verify_t_design(bs, 3)
    assert render_parameters(rep) == "3-(8,4,2)"
    assert rep.parameters["replication"] == 14 and rep.parameters["block_count"] == 28
    check_design_invariants(bs, rep)


def test_symmetric_conference_order_ten():
    S = C.paley_conference(9)
    bs = extract_blocks(S, 4, 5)
    rep = verify_t_design(bs, 3)
    assert render_parameters(rep) == "3-(10,4,6)"
    check_design_invariants(bs, rep)


def test_absent_value_gives_empty_blocks(skew8):
    bs = extract_blocks(skew8, 4, 7)
    assert len(bs) == 0
    rep = verify_t_design(bs, 3)
    assert render_parameters(rep) == "3-(8,4,0)"
    assert rep.degenerate == "empty"


def test_petersen_triples():
    bs = extract_blocks(C.srg_catalog("petersen"), 3, 0)
    assert len(bs) == 120
    rep = verify_t_design(bs, 2)
    assert rep.degenerate == "trivial"
    assert render_parameters(rep) == "2-(10,3,8)"


@pytest.mark.parametrize("v, k, t", [(6, 3, 2), (8, 4, 3), (7, 5, 1), (5, 2, 2)])
def test_full_block_set_is_trivial(v, k, t):
    rep = verify_t_design(full(v, k), t)
    assert rep.parameters["lambda"] == math.comb(v - t, k - t)
    assert rep.degenerate == "trivial"


def test_t_larger_than_k():
    with pytest.raises(InvalidParams):
        verify_t_design(full(6, 2), 3)


def test_non_design_witness_is_colex_minimal():
    bs = BlockSet.from_blocks(6, [(0, 1, 2), (0, 3, 4), (1, 3, 5)])
    rep = verify_t_design(bs, 2)
    assert rep.kind == "not_a_design"
    w = rep.witness
    assert w["level"] == 1
    assert w["reference_subset"] == [1]
    # point 3 (1-based) sits in 1 block while point 1 sits in 2
    assert w["subset"] == [3] and w["count"] == 1


def test_signed_cube_pbibd(s3):
    X = hamming(3)
    bs4 = extract_blocks(s3, 4, 4)
    rep = verify_pbibd(bs4, X)
    assert rep.kind == "pbibd"
    assert rep.parameters["lambda_vector"] == [2, 1, 0]
    check_design_invariants(bs4, rep, X)
    bs1 = extract_blocks(s3, 4, 1)
    rep = verify_pbibd(bs1, X)
    assert rep.parameters["lambda_vector"] == [7, 5, 9]
    check_design_invariants(bs1, rep, X)


def test_bgw_pbibd():
    W = C.bgw_from_conference(5)
    A = C.bgw_block(W)
    X = bgw_3class(W)
    bs = extract_blocks(A, 4, 1)
    rep = verify_pbibd(bs, X)
    assert rep.parameters["lambda_vector"] == [13, 9, 25]
    check_design_invariants(bs, rep, X)


def test_pbibd_with_equal_lambdas_is_a_two_design(skew8):
    # the skew conference 3-design is in particular a PBIBD on any scheme
    bs = extract_blocks(skew8, 4, 9)
    rep = verify_pbibd(bs, hamming(3))
    assert rep.kind == "t_design"
    assert render_parameters(rep) == "2-(8,4,6)"


def test_pbibd_scheme_size_mismatch(skew8):
    with pytest.raises(SchemeMismatch):
        verify_pbibd(extract_blocks(skew8, 4, 9), hamming(4))


def test_pbibd_pair_witness():
    A = C.srg_catalog("paley_graph(9)")
    X = srg_2class(A)
    bs = BlockSet.from_blocks(9, [(0, 1, 2), (3, 4, 5), (6, 7, 8)])
    rep = verify_pbibd(bs, X)
    assert rep.kind == "not_a_design"
    assert rep.witness["level"] == 2


def test_bordered_hadamard_pbd():
    A = C.hadamard_bordered(4)
    b3, b4 = extract_blocks(A, 3, -1), extract_blocks(A, 4, -2)
    rep = verify_regular_pbd([b3, b4], [3, 4])
    assert render_parameters(rep) == "regular PBD(8,{3,4},12)"
    check_design_invariants(b3.union(b4), rep)
    X = hadamard_3class(4)
    assert verify_pbibd(b3, X).parameters["lambda_vector"] == [4, 6]


def test_paley_nine_pbd():
    A = C.srg_catalog("paley_graph(9)")
    rep = verify_regular_pbd([extract_blocks(A, 3, 0), extract_blocks(A, 5, -4)], [3, 5])
    assert render_parameters(rep) == "regular PBD(9,{3,5},9)"


def test_irregular_union_has_pair_witness():
    A = C.srg_catalog("paley_graph(9)")
    rep = verify_regular_pbd([extract_blocks(A, 3, 0)])
    assert rep.kind == "not_a_design"
    assert rep.witness["level"] == 2


def test_pbd_block_sizes_must_fit_k():
    with pytest.raises(InvalidParams):
        verify_regular_pbd([full(6, 3)], [4])


def test_trivial_pbd_flag():
    rep = verify_regular_pbd([full(7, 3)], [3])
    assert rep.degenerate == "trivial"


@pytest.mark.parametrize("q", [7, 11])
def test_five_subset_property(q):
    ok, witness = five_subset_property(extract_blocks(C.paley_conference(q), 4, 9))
    assert ok and witness is None


def test_five_subset_property_witness():
    ok, witness = five_subset_property(full(8, 4))
    assert not ok
    assert witness == {"subset": [1, 2, 3, 4, 5], "count": 5}
    with pytest.raises(InvalidParams):
        five_subset_property(full(8, 3))


def test_block_set_union_keeps_colex_order():
    a = BlockSet.from_blocks(6, [(3, 4, 5), (0, 1, 2)])
    b = BlockSet.from_blocks(6, [(0, 1, 3)])
    u = a.union(b)
    assert u.blocks() == [(0, 1, 2), (0, 1, 3), (3, 4, 5)]
    assert u.uniform_k == 3 and len(u) == 3


@settings(max_examples=40)
@given(st.integers(min_value=4, max_value=8), st.data())
def test_random_block_sets_follow_double_count(v, data):
    k = data.draw(st.integers(min_value=2, max_value=min(4, v - 1)))
    subsets = list(itertools.combinations(range(v), k))
    chosen = data.draw(st.lists(st.sampled_from(subsets), unique=True, max_size=len(subsets)))
    bs = BlockSet.uniform(v, k, sorted(chosen, key=lambda s: tuple(reversed(s))))
    for t in range(0, min(k, 3) + 1):
        rep = verify_t_design(bs, t)
        if rep.ok:
            check_design_invariants(bs, rep)


@pytest.mark.parametrize("workers", [1, 4])
def test_reports_do_not_depend_on_workers(workers, skew8):
    bs = extract_blocks(skew8.shift(1), 5, Scalar(16), workers)
    assert verify_t_design(bs, 3, workers).to_dict() == verify_t_design(bs, 3, 1).to_dict()
