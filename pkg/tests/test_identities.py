import math

import pytest

from conftest import random_matrix
from minor_designs import constructions as C
from minor_designs import identities
from minor_designs.errors import IdentityViolated
from minor_designs.identities import describe, identity_checks, quadratic_annihilator
from minor_designs.minors import MinorEngine
from minor_designs.scalar import I, OMEGA, Scalar
from minor_designs.matrix import ExactMatrix


def test_paley_conference_order_six(sym6):
    rep = identity_checks(sym6, max_alpha=2, max_k=4)
    assert rep.checked["coef"] > 0
    assert rep.checked["mu"] > 0
    assert rep.checked["jacobi"] > 0
    assert rep.checked["two_eigen"] > 0
    assert not rep.skipped


def test_minor_counts_on_tournament_order_seven():
    A = C.paley_tournament(7)
    rep = identity_checks(A, max_alpha=2, max_k=5, checks=("mu",))
    # one check per (alpha, k) with |alpha| <= 2 and 1 <= k <= min(5, 7 - |alpha|)
    assert rep.checked["mu"] == sum(math.comb(7, s) * min(5, 7 - s) for s in range(3))


@pytest.mark.parametrize("seed", range(3))
def test_random_order_six(seed):
    rep = identity_checks(random_matrix(6, seed, values=(-2, -1, 0, 1, 2)), max_alpha=2, max_k=4)
    assert "two_eigen" in rep.skipped
    assert rep.checked["jacobi"] > 0


def test_complex_matrix():
    A = ExactMatrix([[1, I, 0], [OMEGA, 2, -1], [Scalar(1) / 2, I, OMEGA]])
    rep = identity_checks(A, max_alpha=2, max_k=3)
    assert set(rep.checked) == {"coef", "mu", "jacobi"}


def test_quadratic_annihilator():
    assert quadratic_annihilator(C.signed_hypercube(3)) == (Scalar(0), Scalar(-3))
    assert quadratic_annihilator(C.hadamard_bordered(4)) == (Scalar(2), Scalar(-3))
    assert quadratic_annihilator(random_matrix(5, 0)) is None


def test_jacobi_skipped_above_limit():
    rep = identity_checks(C.signed_hypercube(3), max_alpha=1, max_k=2, jacobi_max_order=4)
    assert "jacobi" in rep.skipped
    assert "jacobi: skipped" in describe(rep)


def test_tampered_minor_sum_is_caught(monkeypatch, sym6):
    real = MinorEngine.minor_sum

    def off_by_one(self, k, avoid=(), workers=None):
        return real(self, k, avoid, workers) + (1 if k == 3 else 0)

    monkeypatch.setattr(identities.MinorEngine, "minor_sum", off_by_one)
    with pytest.raises(IdentityViolated):
        identity_checks(sym6, checks=("coef",))
