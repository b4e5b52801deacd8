import numpy as np
import pytest

from minor_designs import constructions as C
from minor_designs.constructions import FAMILIES, FamilySpec, construct
from minor_designs.errors import InvalidParams, SymmetryMismatch, UnknownName, ValidatorFailed
from minor_designs.formats import format_matrix, load_matrix, parse_matrix, save_matrix
from minor_designs.matrix import ExactMatrix, charpoly
from minor_designs.minors import minor_spectrum
from minor_designs.scalar import I, OMEGA, OMEGA2, ONE, Scalar

ODD_PRIME_POWERS = [3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49]


def ints(M):
    return np.array([[int(x.to_fraction()) for x in row] for row in M.entries], dtype=np.int64)


@pytest.mark.parametrize("q", ODD_PRIME_POWERS)
def test_paley_conference(q):
    S = C.paley_conference(q)
    A = ints(S)
    assert S.n == q + 1
    assert not np.diag(A).any()
    off = A[~np.eye(q + 1, dtype=bool)]
    assert set(off.tolist()) == {1, -1}
    assert np.array_equal(A @ A.T, q * np.eye(q + 1, dtype=np.int64))
    if q % 4 == 1:
        assert S.symmetry == "symmetric" and np.array_equal(A, A.T)
    else:
        assert S.symmetry == "skew-symmetric" and np.array_equal(A, -A.T)


@pytest.mark.parametrize("q", [q for q in ODD_PRIME_POWERS if q % 4 == 3])
def test_paley_tournament(q):
    A = ints(C.paley_tournament(q))
    t = (q - 3) // 4
    J, Id = np.ones((q, q), dtype=np.int64), np.eye(q, dtype=np.int64)
    assert np.array_equal(A + A.T, J - Id)
    assert np.array_equal(A @ A.T, t * J + (t + 1) * Id)


@pytest.mark.parametrize("q", [4, 15, 21, 5])
def test_paley_tournament_rejects_bad_q(q):
    with pytest.raises(InvalidParams):
        C.paley_tournament(q)


@pytest.mark.parametrize("q", [1, 15, 21, 2])
def test_paley_conference_rejects_bad_q(q):
    with pytest.raises(InvalidParams):
        C.paley_conference(q)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_graphical_hadamard(m):
    n = 4**m
    H = ints(C.graphical_hadamard(n))
    assert np.array_equal(H, H.T)
    assert len(set(np.diag(H).tolist())) == 1
    assert np.array_equal(H @ H.T, n * np.eye(n, dtype=np.int64))


@pytest.mark.parametrize("d", range(0, 7))
def test_signed_hypercube(d):
    S = ints(C.signed_hypercube(d))
    assert np.array_equal(S @ S, d * np.eye(2**d, dtype=np.int64))
    assert np.array_equal(S, S.T)


def test_signed_hypercube_first_step():
    assert C.signed_hypercube(1) == ExactMatrix([[0, 1], [1, 0]])


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13])
def test_bgw(q):
    W = C.bgw_from_conference(q)
    Wa = ints(W)
    v = q + 1
    assert np.array_equal(Wa @ Wa.T, q * np.eye(v, dtype=np.int64))
    assert np.array_equal(np.abs(Wa), np.ones((v, v), dtype=np.int64) - np.eye(v, dtype=np.int64))
    A = ints(C.bgw_block(W))
    assert np.array_equal(A @ A, q * np.eye(2 * v, dtype=np.int64))


@pytest.mark.parametrize("v", [1, 2, 4, 8, 16])
def test_hadamard_bordered(v):
    A = ints(C.hadamard_bordered(v))
    Id = np.eye(2 * v, dtype=np.int64)
    assert np.array_equal(A @ A - 2 * A - (v - 1) * Id, 0 * Id)


@pytest.mark.parametrize("name", sorted(set(C.SRG_BY_PARAMETERS.values()) | {"triangular(8)", "paley_graph(29)"}))
def test_srg_catalog(name):
    A = C.srg_catalog(name)
    assert C.srg_parameters(ints(A)) == C.expected_srg_parameters(name)


def test_srg_examples():
    assert C.srg_parameters(ints(C.srg_catalog("rook(4)"))) == (16, 6, 2, 2)
    assert C.srg_parameters(ints(C.srg_catalog("paley_graph(25)"))) == (25, 12, 5, 6)
    assert C.srg_parameters(ints(C.srg_catalog("complement(rook(4))"))) == (16, 9, 4, 6)
    assert C.srg_parameters(ints(C.srg_catalog("schlafli"))) == (27, 16, 10, 8)
    for params, name in C.SRG_BY_PARAMETERS.items():
        assert C.expected_srg_parameters(name) == params
    with pytest.raises(UnknownName):
        C.srg_catalog("heawood")


def test_e8_gram():
    G = C.e8_gram()
    assert G.n == 240
    assert all(G[i, i] == 2 for i in range(240))
    assert G.entry_set() <= {Scalar(x) for x in (0, 1, -1, 2, -2)}


def test_e7_gram():
    G = C.e7_gram()
    assert G.n == 126
    assert minor_spectrum(G, 3).values() == [Scalar(x) for x in (0, 4, 6, 8)]


@pytest.mark.slow
def test_e8_three_minors():
    assert minor_spectrum(C.e8_gram(), 3).values() == [Scalar(x) for x in (0, 4, 6, 8)]


def test_mub_gram():
    G = C.mub_gram()
    assert G.n == 80
    half = Scalar(1) / 2
    allowed = {Scalar(0), ONE, -ONE, I, -I, half, -half, I / 2, -I / 2}
    assert G.entry_set() <= allowed
    assert all(G[i, i] == 1 for i in range(80))
    assert G.is_hermitian()


def test_bh9_figure1():
    H = C.bh9_figure1()
    assert H.is_symmetric()
    assert H @ H.conj_transpose() == ExactMatrix.identity(9).scale(9)
    assert H.entry_set() <= {ONE, OMEGA, OMEGA2}


def test_hermitian_bh9():
    H = C.hermitian_bh9()
    assert H.is_hermitian()
    assert H @ H.conj_transpose() == ExactMatrix.identity(9).scale(9)
    assert H.entry_set() <= {ONE, OMEGA, OMEGA2}
    cp = charpoly(H)
    assert cp(3) == 0 and cp(-3) == 0


def test_hoggar_seidel():
    S = C.hoggar_seidel()
    assert S.n == 64 and S.is_hermitian()
    assert S.entry_set() <= {Scalar(0), ONE, -ONE, I, -I}
    assert minor_spectrum(S, 3).values() == [Scalar(-2), Scalar(0), Scalar(2)]


@pytest.mark.slow
def test_hoggar_four_minors():
    assert minor_spectrum(C.hoggar_seidel(), 4).values() == [Scalar(x) for x in (-3, 1, 5, 9)]


def test_skew_bush_search():
    H = C.skew_bush_search(4)
    assert C.validate_skew_bush(H, 4)
    Ha = ints(H)
    assert np.array_equal(Ha[:4, :4], np.ones((4, 4), dtype=np.int64))
    A = C.skew_bush_tournament(H)
    n = 4
    eig = np.linalg.eigvals(ints(A).astype(float))
    assert np.sum(np.isclose(eig, n * (n - 1) / 2)) == 1
    assert np.sum(np.isclose(eig, -n / 2)) == n - 1
    assert np.sum(np.isclose(eig, 1j * n / 2)) == (n * n - n) // 2
    assert np.sum(np.isclose(eig, -1j * n / 2)) == (n * n - n) // 2


def test_skew_bush_budget():
    from minor_designs.errors import SearchExhausted

    with pytest.raises(SearchExhausted):
        C.skew_bush_search(4, budget=0)
    with pytest.raises(InvalidParams):
        C.skew_bush_search(6)


def test_construct_dispatch():
    assert construct(FamilySpec("paley_conference", {"q": 5})) == C.paley_conference(5)
    assert construct("srg", name="petersen") == C.srg_catalog("petersen")
    assert construct("signed_hypercube", d="3") == C.signed_hypercube(3)
    with pytest.raises(UnknownName):
        construct("nope")
    with pytest.raises(InvalidParams):
        construct("paley_conference")
    assert len(FAMILIES) == len(set(FAMILIES))


def test_matrix_round_trip(tmp_path):
    S = construct("paley_conference", q=5)
    path = tmp_path / "s.mat"
    save_matrix(S, path)
    assert load_matrix(path) == S
    H = C.bh9_figure1()
    assert parse_matrix(format_matrix(H)) == H


def test_header_claiming_wrong_symmetry():
    S = C.paley_conference(7)
    text = format_matrix(S).replace("skew-symmetric", "symmetric")
    with pytest.raises(SymmetryMismatch):
        parse_matrix(text)


def test_validators_reject_broken_matrices():
    S = C.paley_conference(5)
    rows = [list(r) for r in S.entries]
    rows[0][1] = -rows[0][1]
    with pytest.raises(ValidatorFailed):
        C.validate_conference(ExactMatrix(rows))
