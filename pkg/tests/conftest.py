import os
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from minor_designs import constructions as C
from minor_designs.matrix import ExactMatrix
from minor_designs.scalar import Scalar

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def scalars(draw, nonzero=False):
    num = tuple(draw(small_ints) for _ in range(4))
    den = draw(st.integers(min_value=1, max_value=4))
    x = Scalar(num, den)
    if nonzero and x.is_zero():
        x = Scalar(1)
    return x


@st.composite
def scalar_matrices(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    return ExactMatrix([[draw(scalars()) for _ in range(n)] for _ in range(n)])


def random_matrix(n, seed, values=(-1, 0, 1, 2)):
    rng = random.Random(seed)
    return ExactMatrix([[Scalar(rng.choice(values)) for _ in range(n)] for _ in range(n)])


def random_symmetric_pm1(n, seed):
    rng = random.Random(seed)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.choice((-1, 1))
    return ExactMatrix([[Scalar(x) for x in r] for r in rows], "symmetric")


@pytest.fixture(scope="session")
def skew8():
    return C.paley_conference(7)


@pytest.fixture(scope="session")
def sym6():
    return C.paley_conference(5)


@pytest.fixture(scope="session")
def s3():
    return C.signed_hypercube(3)


def check_design_invariants(bs, report, scheme=None, ie_limit=12):
    """Double counts on any verified design, plus inclusion-exclusion when v is small."""
    import itertools
    import math

    from minor_designs.designs import lambda_of, mu_of

    p = report.parameters
    b, v = len(bs), bs.v
    if report.kind == "t_design" and "t" in p and "lambda_vector" not in p:
        t, k, lam = p["t"], p["k"], p["lambda"]
        assert b * math.comb(k, t) == lam * math.comb(v, t)
        if v <= ie_limit:
            for size in range(t + 1):
                for beta in itertools.combinations(range(v), size):
                    alt = sum(
                        (-1) ** len(g) * mu_of(bs, g)
                        for s in range(size + 1)
                        for g in itertools.combinations(beta, s)
                    )
                    assert lambda_of(bs, beta) == alt
    if report.kind in ("pbibd", "t_design") and "lambda_vector" in p and scheme is not None:
        k = p["k"]
        assert b * k == v * p["replication"]
        sizes = scheme.class_sizes()
        assert sum(lam * n for lam, n in zip(p["lambda_vector"], sizes) if lam is not None) == b * math.comb(k, 2)
    if report.kind == "regular_pbd":
        blocks = bs.blocks()
        assert sum(len(B) for B in blocks) == v * p["replication"]
        assert sum(math.comb(len(B), 2) for B in blocks) == p["lambda"] * math.comb(v, 2)


# -- acceptance bookkeeping -----------------------------------------------------------------------
# Tests marked ``criterion(n)`` are grouped and summarised as one line per criterion.

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        n = mark.args[0]
        titles = getattr(item.module, "CRITERIA", {})
        entry = _CRITERIA.setdefault(n, {"title": titles.get(n, ""), "parts": {}})
        entry["parts"][item.name] = "skipped" if rep.skipped else ("passed" if rep.passed else "failed")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        entry = _CRITERIA[n]
        parts = entry["parts"]
        failed = [name for name, s in parts.items() if s == "failed"]
        skipped = [name for name, s in parts.items() if s == "skipped"]
        status = "FAIL" if failed else ("SKIP" if skipped and len(skipped) == len(parts) else "PASS")
        line = f"criterion {n:2d} {status}: {entry['title']} ({len(parts) - len(failed)}/{len(parts)} checks)"
        if failed:
            line += " failing: " + ", ".join(failed)
        tr.write_line(line)
