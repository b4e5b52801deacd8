"""Block sets from minor values and exhaustive design verification.

Counting is done by ranking every t-subset of every block in colex order and
accumulating with ``np.bincount``; block ranges are processed independently
and summed, so results do not depend on the worker count.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParams, SchemeMismatch
from .minors import MinorEngine
from .scalar import Scalar, render_scalar
from .subsets import chunk_ranges, colex_unrank, map_chunks, rank_array

_BLOCK_CHUNK = 200_000


@dataclass
class BlockSet:
    """Blocks on points 0..v-1, grouped by size; each group is an (m, k) array in colex order."""

    v: int
    groups: dict = field(default_factory=dict)

    @classmethod
    def uniform(cls, v, k, blocks):
        arr = np.asarray(blocks, dtype=np.int64).reshape(-1, k)
        return cls(v, {k: arr})

    @classmethod
    def from_blocks(cls, v, blocks):
        by_size = {}
        for b in blocks:
            b = tuple(sorted(b))
            by_size.setdefault(len(b), []).append(b)
        groups = {}
        for k, bl in sorted(by_size.items()):
            arr = np.array(bl, dtype=np.int64).reshape(-1, k)
            order = np.argsort(rank_array(arr, v), kind="stable") if len(arr) else []
            groups[k] = arr[order]
        return cls(v, groups)

    @property
    def uniform_k(self):
        ks = [k for k, arr in self.groups.items()]
        return ks[0] if len(ks) == 1 else None

    @property
    def sizes(self):
        return tuple(sorted(k for k, arr in self.groups.items() if len(arr)))

    def __len__(self):
        return sum(len(arr) for arr in self.groups.values())

    def blocks(self):
        out = []
        for k in sorted(self.groups):
            out.extend(tuple(int(x) for x in row) for row in self.groups[k])
        return out

    def union(self, other):
        if other.v != self.v:
            raise InvalidParams("block sets live on different point sets")
        groups = {k: arr for k, arr in self.groups.items()}
        for k, arr in other.groups.items():
            if k in groups:
                merged = np.concatenate([groups[k], arr])
                order = np.argsort(rank_array(merged, self.v), kind="stable")
                groups[k] = merged[order]
            else:
                groups[k] = arr
        return BlockSet(self.v, dict(sorted(groups.items())))


@dataclass
class DesignReport:
    kind: str
    parameters: dict = field(default_factory=dict)
    witness: dict = None
    degenerate: str = None
    citations: tuple = ()

    @property
    def ok(self):
        return self.kind != "not_a_design"

    def to_dict(self):
        return {
            "kind": self.kind,
            "parameters": self.parameters,
            "witness": self.witness,
            "degenerate": self.degenerate,
        }


# -- extraction -------------------------------------------------------------------------


def extract_blocks(A, k, a, workers=None, engine=None):
    """All k-subsets whose principal minor equals a, in colex order."""
    engine = engine or MinorEngine(A)
    arr = engine.blocks_equal(k, Scalar.coerce(a), workers)
    return BlockSet.uniform(A.n, k, arr)


# -- counting primitives ---------------------------------------------------------------------


def _subset_index_sets(k, t):
    return np.array(list(itertools.combinations(range(k), t)), dtype=np.int64).reshape(-1, t)


def subset_counts(bs, t, workers=None):
    """counts[r] = number of blocks containing the t-subset of colex rank r."""
    v = bs.v
    total = np.zeros(math.comb(v, t), dtype=np.int64)
    if t == 0:
        total[0] = len(bs)
        return total
    for k, arr in bs.groups.items():
        if k < t or not len(arr):
            continue
        sel = _subset_index_sets(k, t)

        def work(lo, hi, arr=arr, sel=sel):
            sub = arr[lo:hi][:, sel].reshape(-1, t)
            return np.bincount(rank_array(sub, v), minlength=len(total))

        for part in map_chunks(work, chunk_ranges(len(arr), _BLOCK_CHUNK), workers):
            total += part
    return total


def _one_based(subset):
    return [int(x) + 1 for x in subset]


def _level_witness(counts, t):
    """First colex subset whose count differs from the count of the first subset."""
    diff = np.flatnonzero(counts != counts[0])
    if not diff.size:
        return None
    r = int(diff[0])
    return {
        "level": t,
        "subset": _one_based(colex_unrank(r, t)),
        "count": int(counts[r]),
        "reference_subset": _one_based(colex_unrank(0, t)),
        "reference_count": int(counts[0]),
    }


def _degeneracy(bs, k):
    b = len(bs)
    if b == 0:
        return "empty"
    if b == math.comb(bs.v, k):
        return "trivial"
    return None


def lambda_of(bs, beta):
    """Number of blocks containing beta."""
    beta = set(beta)
    return sum(1 for blk in bs.blocks() if beta <= set(blk))


def mu_of(bs, gamma):
    """Number of blocks disjoint from gamma."""
    gamma = set(gamma)
    return sum(1 for blk in bs.blocks() if not gamma & set(blk))


# -- verifiers -----------------------------------------------------------------------------------


def verify_t_design(bs, t, workers=None):
    k = bs.uniform_k
    if k is None:
        if len(bs) == 0 and bs.groups:
            k = next(iter(bs.groups))
        else:
            raise InvalidParams("t-design verification needs a uniform block set")
    if t > k or t < 0:
        raise InvalidParams(f"t={t} must satisfy 0 <= t <= k={k}")
    b = len(bs)
    levels = {}
    for s in range(1, t + 1):
        counts = subset_counts(bs, s, workers)
        w = _level_witness(counts, s)
        if w is not None:
            return DesignReport("not_a_design", {"v": bs.v, "k": k, "t": t}, w)
        levels[s] = int(counts[0])
    lam = levels[t] if t else b
    params = {
        "t": t,
        "v": bs.v,
        "k": k,
        "lambda": lam,
        "replication": levels.get(1, b),
        "block_count": b,
        "level_counts": [b] + [levels[s] for s in range(1, t + 1)],
    }
    return DesignReport("t_design", params, None, _degeneracy(bs, k))


def pair_counts(bs, workers=None):
    """(v, v) symmetric array of pair replication numbers."""
    counts = subset_counts(bs, 2, workers)
    v = bs.v
    pairs = np.array(list(itertools.combinations(range(v), 2)), dtype=np.int64)
    M = np.zeros((v, v), dtype=np.int64)
    if len(pairs):
        r = rank_array(pairs, v)
        M[pairs[:, 0], pairs[:, 1]] = counts[r]
        M[pairs[:, 1], pairs[:, 0]] = counts[r]
    return M


def verify_pbibd(bs, scheme, workers=None):
    k = bs.uniform_k
    if k is None:
        raise InvalidParams("PBIBD verification needs a uniform block set")
    if scheme.v != bs.v:
        raise SchemeMismatch(f"scheme has {scheme.v} points, block set has {bs.v}")
    b = len(bs)
    base = {"v": bs.v, "k": k, "scheme": scheme.name, "class_labels": [scheme.label(j) for j in range(1, scheme.d + 1)]}
    reps = subset_counts(bs, 1, workers)
    w = _level_witness(reps, 1)
    if w is not None:
        return DesignReport("not_a_design", base, w)
    P = pair_counts(bs, workers)
    lams = []
    # scan pairs in colex order, so the first mismatch found is colex-minimal
    order = _colex_pairs(bs.v)
    cls = scheme.classes[order[:, 0], order[:, 1]]
    vals = P[order[:, 0], order[:, 1]]
    for j in range(1, scheme.d + 1):
        mask = cls == j
        if not mask.any():
            lams.append(None)
            continue
        cv = vals[mask]
        bad = np.flatnonzero(cv != cv[0])
        if bad.size:
            idx = np.flatnonzero(mask)
            first, wrong = order[idx[0]], order[idx[bad[0]]]
            return DesignReport(
                "not_a_design",
                base,
                {
                    "level": 2,
                    "class": j,
                    "subset": _one_based(sorted(wrong)),
                    "count": int(cv[bad[0]]),
                    "reference_subset": _one_based(sorted(first)),
                    "reference_count": int(cv[0]),
                },
            )
        lams.append(int(cv[0]))
    params = dict(base, lambda_vector=lams, replication=int(reps[0]), block_count=b)
    present = [x for x in lams if x is not None]
    if present and all(x == present[0] for x in present):
        params.update(t=2, **{"lambda": present[0]})
        return DesignReport("t_design", params, None, _degeneracy(bs, k))
    return DesignReport("pbibd", params, None, _degeneracy(bs, k))


def _colex_pairs(v):
    pairs = [(a, b) for b in range(v) for a in range(b)]
    return np.array(pairs, dtype=np.int64).reshape(-1, 2)


def verify_regular_pbd(bss, K=None, workers=None):
    if isinstance(bss, BlockSet):
        bss = [bss]
    vs = {bs.v for bs in bss}
    if len(vs) != 1:
        raise InvalidParams("block sets must share v")
    union = bss[0]
    for bs in bss[1:]:
        union = union.union(bs)
    sizes = union.sizes
    if K is not None and not set(sizes) <= set(K):
        raise InvalidParams(f"block sizes {sizes} are not contained in K={sorted(K)}")
    K = sorted(K) if K is not None else list(sizes)
    base = {"v": union.v, "K": K}
    reps = subset_counts(union, 1, workers)
    w = _level_witness(reps, 1)
    if w is not None:
        return DesignReport("not_a_design", base, w)
    pairs = subset_counts(union, 2, workers)
    w = _level_witness(pairs, 2)
    if w is not None:
        return DesignReport("not_a_design", base, w)
    params = dict(base, **{"lambda": int(pairs[0])}, replication=int(reps[0]), block_count=len(union))
    degenerate = None
    if len(union) == 0:
        degenerate = "empty"
    elif len(K) == 1 and len(union) == math.comb(union.v, K[0]):
        degenerate = "trivial"
    return DesignReport("regular_pbd", params, None, degenerate)


def five_subset_property(bs, workers=None):
    """Every 5-subset must contain 0 or 2 blocks; returns (ok, witness)."""
    if bs.uniform_k != 4:
        raise InvalidParams("five-subset property needs 4-uniform blocks")
    v = bs.v
    arr = bs.groups[4]
    total = np.zeros(math.comb(v, 5), dtype=np.int64)
    pts = np.arange(v)

    def work(lo, hi):
        part = np.zeros_like(total)
        for blk in arr[lo:hi]:
            rest = np.setdiff1d(pts, blk)
            ext = np.sort(np.concatenate([np.tile(blk, (len(rest), 1)), rest[:, None]], axis=1), axis=1)
            np.add.at(part, rank_array(ext, v), 1)
        return part

    for part in map_chunks(work, chunk_ranges(len(arr), 20_000), workers):
        total += part
    bad = np.flatnonzero((total != 0) & (total != 2))
    if bad.size:
        r = int(bad[0])
        return False, {"subset": _one_based(colex_unrank(r, 5)), "count": int(total[r])}
    return True, None


def render_parameters(report):
    p = report.parameters
    if report.kind == "t_design":
        return f"{p['t']}-({p['v']},{p['k']},{p['lambda']})"
    if report.kind == "pbibd":
        lam = ",".join(str(x) for x in p["lambda_vector"])
        return f"PBIBD({p['v']},{p['k']};{lam})"
    if report.kind == "regular_pbd":
        K = ",".join(str(k) for k in p["K"])
        return f"regular PBD({p['v']},{{{K}}},{p['lambda']})"
    return "not a design"


def spectrum_keys(spec):
    return [render_scalar(v) for v in spec.values()]
