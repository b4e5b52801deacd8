"""Internal-consistency identities between minors and characteristic polynomials.

These hold for every matrix, so a failure always means a bug somewhere in the
arithmetic stack. Four families are checked:

* Jacobi: det(xI - A[~a]) = det(xI - A) * det((xI - A)^-1 [a]) at x = 2, 3, 5;
* the two-eigenvalue factorisation, when A satisfies a quadratic
  A^2 - e1 A + e2 I = 0:
  det(xI - A[~a]) * (x^2 - e1 x + e2)^|a| = det(xI - A) * det(A[a] + (x - e1) I);
* coefficients as signed minor sums: c_A(a, k) = (-1)^k sum det(A[b]) over b disjoint from a;
* minor counts: the values mu_A(a, k, d) sum to C(n - |a|, k) and weight to (-1)^k c_A(a, k).
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .errors import IdentityViolated
from .matrix import ExactMatrix, complement, det, lane_matmul, solve_inverse, submatrix
from .minors import MinorEngine
from .modular import CoefficientEngine
from .scalar import ONE, ZERO

JACOBI_POINTS = (2, 3, 5)


@dataclass
class IdentityReport:
    checked: dict = field(default_factory=dict)
    skipped: dict = field(default_factory=dict)

    def bump(self, name, by=1):
        self.checked[name] = self.checked.get(name, 0) + by

    def to_dict(self):
        return {"checked": dict(self.checked), "skipped": dict(self.skipped)}


# -- small polynomial helpers (coefficients lowest degree first) -----------------------


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1].is_zero():
        p.pop()
    return p


def poly_mul(p, q):
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return _trim(out)


def poly_pow(p, e):
    out = [ONE]
    for _ in range(e):
        out = poly_mul(out, p)
    return out


def poly_shift(p, c):
    """p(x + c) by Horner on polynomials."""
    out = [ZERO]
    for a in reversed(p):
        out = poly_mul(out, [c, ONE])
        out[0] = out[0] + a
    return _trim(out)


def _fail(name, detail):
    raise IdentityViolated(f"{name} identity failed: {detail}")


# -- index sets -------------------------------------------------------------------------------


def _alpha_sets(n, max_alpha, exhaustive_order, samples, rng):
    """Index sets of sizes 0..max_alpha: all of them for small n, else a seeded sample."""
    out = []
    for s in range(0, min(max_alpha, n - 1) + 1):
        if n <= exhaustive_order or math.comb(n, s) <= samples:
            out.extend(itertools.combinations(range(n), s))
        else:
            seen = set()
            while len(seen) < samples:
                seen.add(tuple(sorted(rng.sample(range(n), s))))
            out.extend(sorted(seen))
    return out


# -- individual identities ---------------------------------------------------------------------


def check_coef(A, alphas, max_k, report, coeffs=None, minors=None, workers=None):
    coeffs = coeffs or CoefficientEngine(A)
    minors = minors or MinorEngine(A)
    for alpha in alphas:
        rest = complement(A.n, alpha)
        ks = list(range(0, min(max_k, len(rest)) + 1))
        cs = coeffs.coefficients(rest, ks)
        for k in ks:
            s = minors.minor_sum(k, alpha, workers)
            expected = s if k % 2 == 0 else -s
            if cs[k] != expected:
                _fail("coefficient", f"alpha={list(alpha)}, k={k}: {cs[k]} != {expected}")
            report.bump("coef")


def check_mu(A, alphas, max_k, report, coeffs=None, workers=None):
    coeffs = coeffs or CoefficientEngine(A)
    n = A.n
    for alpha in alphas:
        rest = complement(n, alpha)
        if not rest:
            continue
        sub = submatrix(A, rest)
        eng = MinorEngine(sub)
        for k in range(1, min(max_k, len(rest)) + 1):
            spec = eng.spectrum(k, workers)
            if spec.total() != math.comb(n - len(alpha), k):
                _fail("minor count", f"alpha={list(alpha)}, k={k}: {spec.total()} subsets")
            weighted = ZERO
            for d, cnt in spec.counts.items():
                weighted = weighted + d * cnt
            c = coeffs.coefficient(rest, k)
            if c != (weighted if k % 2 == 0 else -weighted):
                _fail("minor weight", f"alpha={list(alpha)}, k={k}")
            report.bump("mu")


def check_jacobi(A, alphas, report, coeffs=None, max_order=64):
    n = A.n
    if n > max_order:
        report.skipped["jacobi"] = f"order {n} exceeds {max_order}"
        return
    coeffs = coeffs or CoefficientEngine(A)
    full = coeffs.charpoly()
    sub_polys = {alpha: coeffs.charpoly(complement(n, alpha)) for alpha in alphas if alpha}
    for x in JACOBI_POINTS:
        M = A.scale(-1).shift(x)
        inv = solve_inverse(M)
        if inv is None:
            continue
        dM = full(x)
        for alpha, p in sub_polys.items():
            lhs = p(x)
            rhs = dM * det(submatrix(inv, alpha))
            if lhs != rhs:
                _fail("Jacobi", f"x={x}, alpha={list(alpha)}: {lhs} != {rhs}")
            report.bump("jacobi")


def quadratic_annihilator(A):
    """(e1, e2) with A^2 = e1 A - e2 I, or None when A satisfies no such relation."""
    n = A.n
    s, L = A.lanes()
    L2 = lane_matmul(L, L)
    sq = ExactMatrix.from_lanes(L2, scale=s * s)
    e = A.entries
    pos = next(((i, j) for i in range(n) for j in range(n) if i != j and not e[i][j].is_zero()), None)
    if pos is None:
        return None
    i, j = pos
    e1 = sq[i, j] / e[i][j]
    e2 = e1 * e[0][0] - sq[0, 0]
    for r in range(n):
        for c in range(n):
            want = e1 * e[r][c] - (e2 if r == c else ZERO)
            if sq[r, c] != want:
                return None
    return e1, e2


def check_two_eigen(A, alphas, report, coeffs=None):
    quad = quadratic_annihilator(A)
    if quad is None:
        report.skipped["two_eigen"] = "matrix satisfies no quadratic relation"
        return
    e1, e2 = quad
    coeffs = coeffs or CoefficientEngine(A)
    n = A.n
    full = list(reversed(coeffs.charpoly().coeffs))
    g = [e2, -e1, ONE]
    for alpha in alphas:
        if not alpha:
            continue
        m = len(alpha)
        left = poly_mul(list(reversed(coeffs.charpoly(complement(n, alpha)).coeffs)), poly_pow(g, m))
        # det(A[a] + yI) = (-1)^m chi_{A[a]}(-y), then y = x - e1
        sub = CoefficientEngine(submatrix(A, alpha)).charpoly()
        q = [c * ((-1) ** (m + d)) for d, c in enumerate(reversed(sub.coeffs))]
        right = poly_mul(full, poly_shift(q, -e1))
        if _trim(left) != _trim(right):
            _fail("two-eigenvalue", f"alpha={list(alpha)}")
        report.bump("two_eigen")


# -- driver -------------------------------------------------------------------------------------


def identity_checks(
    A,
    max_alpha=2,
    max_k=4,
    samples=3,
    seed=0,
    exhaustive_order=12,
    jacobi_max_order=64,
    checks=("jacobi", "two_eigen", "coef", "mu"),
    workers=None,
):
    """Run the identities over |alpha| <= max_alpha and k <= max_k.

    Exhaustive over index sets when the order is at most ``exhaustive_order``,
    otherwise on ``samples`` seeded index sets per size. Raises IdentityViolated
    on the first failure; returns an IdentityReport of what ran.
    """
    rng = random.Random(seed)
    alphas = _alpha_sets(A.n, max_alpha, exhaustive_order, samples, rng)
    report = IdentityReport()
    coeffs = CoefficientEngine(A)
    if "coef" in checks:
        check_coef(A, alphas, max_k, report, coeffs, workers=workers)
    if "mu" in checks:
        check_mu(A, alphas, max_k, report, coeffs, workers=workers)
    if "jacobi" in checks:
        check_jacobi(A, alphas, report, coeffs, jacobi_max_order)
    if "two_eigen" in checks:
        check_two_eigen(A, alphas, report, coeffs)
    return report


def describe(report):
    parts = [f"{k}: {v} checks" for k, v in sorted(report.checked.items())]
    parts += [f"{k}: skipped ({v})" for k, v in sorted(report.skipped.items())]
    return "; ".join(parts)


__all__ = [
    "IdentityReport",
    "identity_checks",
    "quadratic_annihilator",
    "check_coef",
    "check_mu",
    "check_jacobi",
    "check_two_eigen",
    "describe",
]
