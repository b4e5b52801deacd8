"""Batched exact principal minors.

All k x k principal minors are evaluated chunk by chunk in colex order.  The
matrix is scaled into Z[z] and each chunk of minors is expanded by the
Laplace-by-column-subsets recursion in integer numpy arithmetic, so no
division ever happens.  int64 is used only when an a priori bound guarantees
no overflow; otherwise the arrays fall back to Python integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .matrix import INT64_SAFE, lane_mul
from .scalar import Scalar, render_scalar
from .subsets import chunk_ranges, map_chunks, unrank_range


@dataclass
class MinorSpectrum:
    """Exact count of each k x k principal minor value (the set D_A(k) with multiplicities)."""

    k: int
    counts: dict = field(default_factory=dict)

    def values(self):
        return sorted(self.counts, key=Scalar.sort_key)

    def total(self):
        return sum(self.counts.values())

    def __len__(self):
        return len(self.counts)

    def __contains__(self, a):
        return Scalar.coerce(a) in self.counts

    def count(self, a):
        return self.counts.get(Scalar.coerce(a), 0)

    def to_dict(self):
        return {render_scalar(v): self.counts[v] for v in self.values()}


def _subset_plan(k):
    """For each column subset T (by size), the Laplace terms (column, sign, T - {c})."""
    plan = []
    for r in range(1, k + 1):
        level = {}
        for cols in combinations(range(k), r):
            terms = []
            for pos, c in enumerate(cols):
                rest = cols[:pos] + cols[pos + 1 :]
                terms.append((c, (-1) ** (r - 1 + pos), rest))
            level[cols] = terms
        plan.append(level)
    return plan


class MinorEngine:
    """Evaluates principal minors of one matrix in batches."""

    def __init__(self, A):
        self.A = A
        self.n = A.n
        self.scale, lanes = A.lanes()
        self.rational = not np.asarray(lanes[..., 1:]).any()
        if self.rational:
            self.data = np.asarray(lanes[..., 0])
        else:
            self.data = np.asarray(lanes)
        self.maxnorm = max(1, int(np.abs(np.asarray(lanes, dtype=object)).sum(axis=-1).max()))
        self._plans = {}

    def _dtype(self, k):
        growth = 1 if self.rational else 2 ** (k - 1)
        bound = math.factorial(k) * growth * self.maxnorm**k
        return np.int64 if bound < INT64_SAFE and self.data.dtype != object else object

    def chunk_size(self, k):
        base = 400_000 if self.rational else 100_000
        return max(1000, base // (k * k))

    def dets(self, subsets):
        """Scaled determinants of A[s] for each row s: shape (m,) or (m, 4) integer arrays.

        The true minor equals the returned value divided by ``scale**k``.
        """
        subsets = np.asarray(subsets, dtype=np.int64)
        m, k = subsets.shape
        dtype = self._dtype(k)
        data = self.data if dtype == np.int64 else self.data.astype(object)
        g = data[subsets[:, :, None], subsets[:, None, :]]
        if k not in self._plans:
            self._plans[k] = _subset_plan(k)
        plan = self._plans[k]
        mul = (lambda x, y: x * y) if self.rational else lane_mul
        prev = {(): None}
        for r, level in enumerate(plan, start=1):
            row = g[:, r - 1]
            cur = {}
            for cols, terms in level.items():
                acc = None
                for c, sign, rest in terms:
                    entry = row[:, c]
                    term = entry if rest == () else mul(entry, prev[rest])
                    if sign < 0:
                        term = -term
                    acc = term if acc is None else acc + term
                cur[cols] = acc
            prev = cur
        return prev[tuple(range(k))]

    def scalar_of(self, raw, k):
        den = self.scale**k
        if self.rational:
            return Scalar((int(raw), 0, 0, 0), den)
        return Scalar(tuple(int(x) for x in raw), den)

    def scaled_target(self, a, k):
        """Integer lane form of scale**k * a, or None if no minor can equal a."""
        a = Scalar.coerce(a)
        den = self.scale**k
        if den % a.den:
            return None
        f = den // a.den
        c = tuple(x * f for x in a.num)
        if self.rational:
            return c[0] if c[1:] == (0, 0, 0) else None
        return c

    def spectrum(self, k, workers=None):
        total = math.comb(self.n, k)

        def work(lo, hi):
            subs = unrank_range(lo, hi, self.n, k)
            vals = self.dets(subs)
            if vals.dtype == object:
                keys = [tuple(v) if not self.rational else v for v in vals.tolist()]
                out = {}
                for key in keys:
                    key = tuple(key) if isinstance(key, list) else key
                    out[key] = out.get(key, 0) + 1
                return out
            axis = None if self.rational else 0
            uniq, cnt = np.unique(vals, axis=axis, return_counts=True)
            if self.rational:
                return {int(u): int(c) for u, c in zip(uniq, cnt)}
            return {tuple(int(x) for x in u): int(c) for u, c in zip(uniq, cnt)}

        merged = {}
        for part in map_chunks(work, chunk_ranges(total, self.chunk_size(k)), workers):
            for key, c in part.items():
                merged[key] = merged.get(key, 0) + c
        counts = {self.scalar_of(key, k): c for key, c in merged.items()}
        return MinorSpectrum(k, dict(sorted(counts.items(), key=lambda kv: kv[0].sort_key())))

    def select(self, k, predicate_for_chunk, workers=None):
        total = math.comb(self.n, k)

        def work(lo, hi):
            subs = unrank_range(lo, hi, self.n, k)
            mask = predicate_for_chunk(self.dets(subs))
            return subs[mask]

        parts = map_chunks(work, chunk_ranges(total, self.chunk_size(k)), workers)
        if not parts:
            return np.zeros((0, k), dtype=np.int64)
        return np.concatenate(parts, axis=0)

    def blocks_equal(self, k, a, workers=None):
        """Sorted 0-based k-subsets (colex order) whose minor equals a."""
        target = self.scaled_target(a, k)
        if target is None:
            return np.zeros((0, k), dtype=np.int64)
        if self.rational:
            return self.select(k, lambda v: v == target, workers)
        tgt = np.array(target, dtype=object if self._dtype(k) == object else np.int64)
        return self.select(k, lambda v: np.all(v == tgt, axis=1), workers)

    def minor_sum(self, k, avoid=(), workers=None):
        """Sum of det(A[b]) over k-subsets b disjoint from ``avoid`` (exact Scalar)."""
        keep = [i for i in range(self.n) if i not in set(avoid)]
        nk = len(keep)
        if k > nk:
            return Scalar(0)
        if k == 0:
            return Scalar(1)
        keep_arr = np.array(keep, dtype=np.int64)
        total = math.comb(nk, k)

        def work(lo, hi):
            subs = keep_arr[unrank_range(lo, hi, nk, k)]
            vals = self.dets(subs)
            if self.rational:
                return (int(sum(int(v) for v in vals.tolist())),) if vals.dtype == object else (int(vals.sum(dtype=object)),)
            return tuple(int(x) for x in np.asarray(vals, dtype=object).sum(axis=0))

        acc = [0, 0, 0, 0]
        for part in map_chunks(work, chunk_ranges(total, self.chunk_size(k)), workers):
            for i, x in enumerate(part):
                acc[i] += x
        return Scalar(tuple(acc), self.scale**k)


def minor_spectrum(A, k, workers=None):
    """Count every k x k principal minor value of A (colex enumeration, exact)."""
    if not 1 <= k <= A.n:
        raise ValueError(f"k must lie in 1..{A.n}")
    return MinorEngine(A).spectrum(k, workers)
