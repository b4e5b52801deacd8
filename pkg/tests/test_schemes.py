import math
import random

import numpy as np
import pytest

from minor_designs import constructions as C
from minor_designs.errors import UnknownName, ValueNotCovered
from minor_designs.scalar import Scalar
from minor_designs.schemes import (
    bgw_3class,
    bh9_scheme,
    classify_pair,
    gram_value,
    group_divisible,
    hadamard_3class,
    hamming,
    load_scheme,
    mub_scheme,
    parse_scheme_spec,
    parse_value_list,
    root_system_scheme,
    save_scheme,
    scheme_catalog,
    srg_2class,
    validate_scheme,
)


def catalog_schemes():
    yield from (hamming(d) for d in (1, 2, 3, 4, 5))
    yield from (group_divisible(n) for n in (2, 3, 4))
    yield from (hadamard_3class(v) for v in (2, 4, 8))
    yield from (bgw_3class(C.bgw_from_conference(q)) for q in (5, 7, 9))
    yield from (srg_2class(C.srg_catalog(name), name) for name in C.SRG_BY_PARAMETERS.values())
    yield root_system_scheme(C.e7_gram(check_minors=False), "e7")
    yield root_system_scheme(C.e8_gram(), "e8")
    yield mub_scheme(C.mub_gram())
    yield bh9_scheme()


@pytest.mark.parametrize("scheme", list(catalog_schemes()), ids=lambda s: s.name)
def test_catalog_schemes_satisfy_axioms(scheme):
    rep = validate_scheme(scheme)
    assert rep.ok, rep.violations
    assert sum(scheme.class_sizes()) == math.comb(scheme.v, 2)
    assert np.array_equal(scheme.classes, scheme.classes.T)
    assert sum(scheme.valencies()) == scheme.v


def test_scheme_shapes():
    assert hamming(3).valencies() == (1, 3, 3, 1)
    assert bgw_3class(C.bgw_from_conference(5)).v == 12
    assert bgw_3class(C.bgw_from_conference(5)).d == 3
    assert root_system_scheme(C.e8_gram(), "e8").d == 4
    assert mub_scheme(C.mub_gram()).d == 6
    assert bh9_scheme().d == 4


def test_classify_pair_examples():
    assert classify_pair(hamming(3), 0, 3) == 2
    assert classify_pair(group_divisible(4), 0, 1) == 1
    assert classify_pair(hadamard_3class(4), 0, 4) == 2
    with pytest.raises(Exception):
        classify_pair(hamming(3), 2, 2)


def test_classify_pair_is_symmetric_and_total():
    X = bgw_3class(C.bgw_from_conference(7))
    for x in range(X.v):
        for y in range(x + 1, X.v):
            j = classify_pair(X, x, y)
            assert 1 <= j <= X.d and classify_pair(X, y, x) == j


def test_petersen_partition():
    A = np.array([[int(x.to_fraction()) for x in r] for r in C.srg_catalog("petersen").entries])
    Id = np.eye(10, dtype=np.int64)
    assert validate_scheme([Id, A, np.ones_like(A) - Id - A]).ok


def random_graph(n, rng):
    A = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            A[i, j] = A[j, i] = rng.random() < 0.5
    return A


def test_random_graph_breaks_closure():
    rng = random.Random(7)
    for _ in range(100):
        A = random_graph(9, rng)
        if not A.any() or A.sum() == 9 * 8:
            continue
        Id = np.eye(9, dtype=np.int64)
        rep = validate_scheme([Id, A, np.ones_like(A) - Id - A])
        if not rep.ok:
            assert any("not constant" in v for v in rep.violations)
            return
    pytest.fail("random search found only strongly regular graphs")


def test_srg_closure_matches_graph_validator():
    rng = random.Random(3)
    for _ in range(60):
        A = random_graph(8, rng)
        Id = np.eye(8, dtype=np.int64)
        if not A.any() or not (np.ones_like(A) - Id - A).any():
            continue
        closure = validate_scheme([Id, A, np.ones_like(A) - Id - A]).ok
        assert closure == (C.srg_parameters(A) is not None)


def test_axiom_violations_are_listed_not_raised():
    Id = np.eye(3, dtype=np.int64)
    rep = validate_scheme([Id, np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]])])
    assert not rep.ok
    assert any("symmetric" in v for v in rep.violations)
    assert not validate_scheme([]).ok


def test_gram_value_uncovered_entry():
    with pytest.raises(ValueNotCovered):
        gram_value(C.e8_gram(), [[1], [0], [-1]])


def test_scheme_catalog_dispatch():
    assert scheme_catalog("hamming", 3) == hamming(3)
    assert scheme_catalog("group_divisible", n=4) == group_divisible(4)
    assert parse_scheme_spec("hadamard_3class:4") == hadamard_3class(4)
    assert parse_scheme_spec("srg_2class:petersen").v == 10
    assert parse_scheme_spec("bgw_3class:5") == bgw_3class(C.bgw_from_conference(5))
    with pytest.raises(UnknownName):
        scheme_catalog("johnson", 3)


def test_value_lists():
    assert parse_value_list("1;0;-1;-2") == [[Scalar(1)], [Scalar(0)], [Scalar(-1)], [Scalar(-2)]]
    assert len(parse_value_list("i,-i;i/2,-i/2")[0]) == 2


def test_save_load_round_trip(tmp_path):
    X = bgw_3class(C.bgw_from_conference(5))
    path = tmp_path / "x.json"
    save_scheme(X, path)
    Y = load_scheme(path)
    assert Y == X
    assert [Y.label(j) for j in (1, 2, 3)] == [X.label(j) for j in (1, 2, 3)]
