"""The characteristic-coefficient functionals c_A(alpha, k).

c_A(alpha, k) is the coefficient of x^(n-k-|alpha|) in det(xI - A[complement of alpha]).
Values come from the multimodular engine; the equality with signed sums of
principal minors is enforced by the test suite and by ``identity_checks``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import IndexOutOfRange, InvalidParams, SchemeMismatch
from .matrix import complement
from .modular import CoefficientEngine
from .scalar import Scalar, render_scalar
from .subsets import chunk_ranges, colex_unrank, map_chunks, unrank_range


def _engine(A, engine):
    return engine if engine is not None else CoefficientEngine(A)


def _check_alpha(n, alpha):
    alpha = sorted(set(int(i) for i in alpha))
    if alpha and (alpha[0] < 0 or alpha[-1] >= n):
        raise IndexOutOfRange(f"index set {alpha} is not inside 0..{n - 1}")
    return alpha


def coeff_of(A, alpha, k, engine=None):
    """c_A(alpha, k) with 0-based alpha."""
    alpha = _check_alpha(A.n, alpha)
    if k < 0 or len(alpha) + k > A.n:
        raise InvalidParams(f"need 0 <= k and |alpha| + k <= {A.n}")
    return _engine(A, engine).coefficient(complement(A.n, alpha), k)


@dataclass
class LevelConstancy:
    level: int
    constant: object = None
    witness: tuple = None  # ((beta, value), (beta', value')) with 0-based subsets

    @property
    def constant_ok(self):
        return self.witness is None

    def to_dict(self):
        d = {"level": self.level}
        if self.witness is None:
            d["constant"] = render_scalar(self.constant)
        else:
            d["witness"] = [
                {"subset": [i + 1 for i in s], "value": render_scalar(v)} for s, v in self.witness
            ]
        return d


@dataclass
class ConstancyReport:
    k: int
    levels: list = field(default_factory=list)

    @property
    def constant(self):
        return all(lv.constant_ok for lv in self.levels)

    def first_failure(self):
        for lv in self.levels:
            if not lv.constant_ok:
                return lv
        return None

    def constants(self):
        return [lv.constant for lv in self.levels]


def _level_values(A, engine, k, size, subsets, workers):
    """Coefficient values for the given 0-based subsets (list of tuples), in order."""
    n = A.n

    def work(lo, hi):
        return [engine.coefficient(complement(n, subsets[r]), k) for r in range(lo, hi)]

    out = []
    for part in map_chunks(work, chunk_ranges(len(subsets), 32), workers):
        out.extend(part)
    return out


def _constancy_of(values, subsets, level):
    first = values[0]
    for s, val in zip(subsets, values):
        if val != first:
            return LevelConstancy(level, None, ((tuple(subsets[0]), first), (tuple(s), val)))
    return LevelConstancy(level, first)


def coeff_constancy(A, k, t, workers=None, engine=None):
    """Check that c_A(beta, k) depends only on |beta| for |beta| = 0..t.

    Levels with |beta| + k > n are constant zero (an empty minor sum).
    """
    if k < 0 or t < 0 or t > A.n:
        raise InvalidParams(f"need 0 <= k and 0 <= t <= {A.n}")
    engine = _engine(A, engine)
    report = ConstancyReport(k)
    for i in range(t + 1):
        if i + k > A.n:
            report.levels.append(LevelConstancy(i, Scalar(0)))
            continue
        subsets = [tuple(int(x) for x in row) for row in unrank_range(0, math.comb(A.n, i), A.n, i)] if i else [()]
        values = _level_values(A, engine, k, i, subsets, workers)
        report.levels.append(_constancy_of(values, subsets, i))
    return report


@dataclass
class ClassReport:
    k: int
    c0: object = None
    c1: object = None
    c2: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    @property
    def constant(self):
        return not self.witnesses


def coeff_by_class(A, k, scheme, workers=None, engine=None):
    """c0, c1 and the per-class constants c2(j) over pairs of class j."""
    if scheme.v != A.n:
        raise SchemeMismatch(f"scheme has {scheme.v} points, matrix has order {A.n}")
    if k + 2 > A.n:
        raise InvalidParams(f"need k + 2 <= {A.n}")
    engine = _engine(A, engine)
    base = coeff_constancy(A, k, 1, workers, engine)
    rep = ClassReport(k)
    for lv in base.levels:
        if lv.constant_ok:
            setattr(rep, f"c{lv.level}", lv.constant)
        else:
            rep.witnesses[f"level{lv.level}"] = lv.witness
    pairs = [colex_unrank(r, 2) for r in range(math.comb(A.n, 2))]
    values = _level_values(A, engine, k, 2, pairs, workers)
    by_class = {}
    for pr, val in zip(pairs, values):
        j = int(scheme.classes[pr[0], pr[1]])
        by_class.setdefault(j, []).append((tuple(pr), val))
    for j in range(1, scheme.d + 1):
        items = by_class.get(j, [])
        if not items:
            continue
        ref = items[0]
        bad = next((it for it in items if it[1] != ref[1]), None)
        if bad is None:
            rep.c2[j] = ref[1]
        else:
            rep.witnesses[f"class{j}"] = (ref, bad)
    return rep
