import math
from fractions import Fraction

import pytest

from minor_designs import constructions as C
from minor_designs.coefficients import coeff_of
from minor_designs.designs import extract_blocks, verify_pbibd, verify_regular_pbd, verify_t_design
from minor_designs.errors import EtaMissing, HypothesesNotSatisfied, InvalidParams, UnknownSource
from minor_designs.minors import minor_spectrum
from minor_designs.predictor import (
    CLOSED_FORMS,
    check_des_hypotheses,
    closed_form,
    des_lambda,
    eta_from_blocks,
    predict_lambda,
    predict_pbibd,
    predict_pbibd_three,
    reconcile,
)
from minor_designs.scalar import Scalar
from minor_designs.schemes import bgw_3class, group_divisible, hadamard_3class, hamming, srg_2class


def test_skew_conference_hypotheses(skew8):
    st = check_des_hypotheses(skew8, 4, 3)
    assert st.satisfied
    assert st.minor_values == [Scalar(1), Scalar(9)]
    assert st.constants[0] == 294


def test_shifted_skew_conference_hypotheses():
    # order 12: two 5x5 minor values and constant coefficients
    S = C.paley_conference(11)
    for eps in (1, -1):
        assert check_des_hypotheses(S.shift(eps), 5, 3).satisfied
    # order 8: the 16-blocks are empty, so a single value remains and only constancy holds
    st = check_des_hypotheses(C.paley_conference(7).shift(1), 5, 3)
    assert st.minor_values == [Scalar(32)]
    assert st.level is None


def test_signed_cube_violates_at_level_two(s3):
    st = check_des_hypotheses(s3, 4, 2)
    assert not st.satisfied
    assert st.level == 2
    assert [str(v) for v in st.minor_values] == ["0", "1", "4"]
    a, b = st.witness
    assert a["value"] != b["value"]
    with pytest.raises(HypothesesNotSatisfied):
        predict_lambda(s3, 4, 2, 1)


def test_predict_skew_conference(skew8):
    p = predict_lambda(skew8, 4, 3, 9)
    assert p.expected["lambda"] == 2
    assert p.expected["b"] == 1 and p.expected["c0"] == 294
    assert not p.non_integral
    assert reconcile(p, verify_t_design(extract_blocks(skew8, 4, 9), 3)) == []


def test_predict_symmetric_conference_order_six(sym6):
    p = predict_lambda(sym6, 4, 3, 5)
    assert p.expected["lambda"] == 3
    assert p.expected["c0"] == 75
    # every 4x4 minor equals 5 at this order, so the design is the trivial one
    assert p.expected["degenerate"] == "trivial"
    empty = predict_lambda(sym6, 4, 3, -3)
    assert empty.expected["lambda"] == 0 and empty.expected["degenerate"] == "empty"


def test_des_formula_symmetric_in_the_nominal_second_value():
    # with c0 = 75 and a = 5 the formula gives lambda = 3 whether b is -3 or anything else
    for b in (-3, 1, 7):
        assert des_lambda(6, 4, 3, 5, b, 75) == 3


@pytest.mark.parametrize("n", [16, 64])
def test_predict_graphical_hadamard(n):
    H = C.graphical_hadamard(n)
    eps = int(H[0, 0].to_fraction())
    got = predict_lambda(H, 3, 2, -4 * eps)
    report = verify_t_design(extract_blocks(H, 3, -4 * eps), 2)
    assert reconcile(got, report) == []
    assert got.expected["lambda"] == n // 2


@pytest.mark.parametrize("q", [5, 9, 13])
def test_seidel_table_from_coefficients(q):
    """The two-eigenvalue table rows agree with predict_lambda for symmetric conference matrices."""
    S = C.paley_conference(q)
    v = q + 1
    compared = 0
    for eps in (1, -1):
        M = S.shift(eps)
        for k, a in ((3, 0), (3, -4 * eps), (4, 0), (4, -16)):
            st = check_des_hypotheses(M, k, 2)
            values = minor_spectrum(M, k).values()
            if Scalar(a) not in values or not st.satisfied:
                continue
            c = coeff_of(M, [], k).to_fraction()
            (row,) = closed_form("tab:ETF", v=v, epsilon=eps, k=k, a=a, c=c)
            assert row.expected["lambda"] == predict_lambda(M, k, 2, a, status=st).expected["lambda"]
            compared += 1
    assert compared >= 4


@pytest.mark.parametrize("q", [7, 11, 19])
def test_block_count_complementarity(q):
    S = C.paley_conference(q)
    st = check_des_hypotheses(S, 4, 3)
    a, b = st.minor_values
    pa = predict_lambda(S, 4, 3, a, status=st)
    pb = predict_lambda(S, 4, 3, b, status=st)
    assert pa.expected["block_count"] + pb.expected["block_count"] == math.comb(q + 1, 4)
    assert pa.expected["lambda"] + pb.expected["lambda"] == math.comb(q + 1 - 3, 1)


def test_predict_pbibd_skew_bush():
    A = C.skew_bush_tournament(C.skew_bush_search(4))
    X = group_divisible(4)
    p = predict_pbibd(A, 3, X, 1)
    assert p.expected["lambda_vector"] == [0, 2]
    assert reconcile(p, verify_pbibd(extract_blocks(A, 3, 1), X)) == []
    p0 = predict_pbibd(A, 4, X, 0)
    assert reconcile(p0, verify_pbibd(extract_blocks(A, 4, 0), X)) == []
    assert p0.expected["lambda_vector"] == [75, 71]


def test_predict_pbibd_bose_mesner():
    for name in ("petersen", "paley_graph(13)", "triangular(6)", "clebsch"):
        A = C.srg_catalog(name)
        X = srg_2class(A)
        for a in minor_spectrum(A, 3).values():
            if len(minor_spectrum(A, 3)) != 2:
                break
            assert reconcile(predict_pbibd(A, 3, X, a), verify_pbibd(extract_blocks(A, 3, a), X)) == []


def test_predict_pbibd_three_signed_cube(s3):
    X = hamming(3)
    p = predict_pbibd_three(s3, 4, X, 1, 4, eta=[2, 1, 0])
    assert p.expected["lambda_vector"] == [7, 5, 9]
    eta = eta_from_blocks(s3, 4, 4, X)
    p = predict_pbibd_three(s3, 4, X, 1, 4, eta=eta)
    assert reconcile(p, verify_pbibd(extract_blocks(s3, 4, 1), X)) == []


def test_predict_pbibd_three_bgw():
    W = C.bgw_from_conference(5)
    A = C.bgw_block(W)
    X = bgw_3class(W)
    p = predict_pbibd_three(A, 4, X, 1, 4, eta=[8, 4, 0])
    assert p.expected["lambda_vector"] == [13, 9, 25]


def test_predict_pbibd_three_bordered_hadamard():
    A = C.hadamard_bordered(4)
    X = hadamard_3class(4)
    p = predict_pbibd_three(A, 4, X, -2, -3, eta=[2, 3])
    assert p.expected["lambda_vector"] == [8, 6]


def test_eta_required(s3):
    with pytest.raises(EtaMissing):
        predict_pbibd_three(s3, 4, hamming(3), 1, 4)
    with pytest.raises(EtaMissing):
        predict_pbibd_three(s3, 4, hamming(3), 1, 4, eta=[1, 2])


def test_closed_form_examples():
    herm = closed_form("ex:herm", n=3)
    assert [(p.selector["k"], p.expected["lambda"]) for p in herm] == [(3, 6), (3, 1), (4, 9), (4, 12)]
    doubly = closed_form("tab:doubly", n=1)
    assert [p.expected["lambda"] for p in doubly] == [3, 2, 6, 4, 0, 10]
    assert [p.expected["lambda"] for p in closed_form("tab:doubly", n=2)] == [6, 3, 18, 18, 6, 30]
    pbd = closed_form("thm:hmpbd", v=8)[-1]
    assert pbd.expected["lambda"] == 56 and pbd.expected["K"] == [3, 4] and pbd.expected["v"] == 16
    (lem,) = closed_form("lem:bgw", v=6, k=5, lam=4)
    assert lem.expected["lambda_vector"] == [8, 4, 0]


def test_one_design_closed_form_uses_triangle_count():
    A = C.srg_catalog("paley_graph(9)")
    rows = closed_form("ex:1des", A=A)
    assert [p.expected["lambda"] for p in rows] == [26, 2]
    assert closed_form("ex:1des", v=9, delta=6)[1].expected["lambda"] == 2


def test_printed_variants_break_the_double_count():
    n = 16
    printed = closed_form("ex:graphHadamard", n=n, epsilon=-1, printed=True)
    fixed = closed_form("ex:graphHadamard", n=n, epsilon=-1)
    assert printed[1].expected["lambda"] == Fraction(n, 4)
    assert fixed[0].expected["lambda"] + fixed[1].expected["lambda"] == n - 2
    assert fixed[2].expected["lambda"] + fixed[3].expected["lambda"] == math.comb(n - 2, 2)
    assert printed[2].expected["lambda"] + printed[3].expected["lambda"] != math.comb(n - 2, 2)
    gdd = closed_form("cor:gdd", n=4)
    gdd_printed = closed_form("cor:gdd", n=4, printed=True)
    for i in (0, 1):
        assert gdd[2].expected["lambda_vector"][i] + gdd[3].expected["lambda_vector"][i] == math.comb(14, 2)
    assert gdd_printed[2].expected["lambda_vector"][0] + gdd_printed[3].expected["lambda_vector"][0] != 91


def test_unknown_source_and_missing_params():
    with pytest.raises(UnknownSource):
        closed_form("thm:nothing")
    with pytest.raises(InvalidParams):
        closed_form("ex:sym3")
    assert "thm:hmpbd" in CLOSED_FORMS


def test_reconcile_reports_differences(skew8):
    p = predict_lambda(skew8, 4, 3, 9)
    wrong = verify_t_design(extract_blocks(skew8, 4, 1), 3)
    diffs = reconcile(p, wrong)
    assert ("lambda", 2, 3) in diffs
    not_design = verify_regular_pbd([extract_blocks(C.srg_catalog("paley_graph(9)"), 3, 0)])
    assert reconcile(p, not_design) == [("kind", "design", "not_a_design")]


def test_prediction_json_shape(skew8):
    d = predict_lambda(skew8, 4, 3, 9).to_dict()
    assert d["source"] == "thm:des"
    assert d["expected"]["lambda"] == 2
    assert d["selector"] == {"k": 4, "a": "9", "t": 3}
    assert d["hypothesis_status"]["satisfied"] is True
