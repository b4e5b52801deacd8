"""Colexicographic k-subset enumeration, ranking and chunking.

Subsets are 0-based sorted index arrays; the colex rank of ``s_1 < ... < s_k``
is ``sum(C(s_i, i))``.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def binom_table(n, k):
    """``tab[i, s] = C(s, i)`` for 0 <= i <= k, 0 <= s <= n, as int64."""
    tab = np.zeros((k + 1, n + 1), dtype=np.int64)
    for i in range(k + 1):
        for s in range(n + 1):
            tab[i, s] = math.comb(s, i)
    tab.setflags(write=False)
    return tab


def colex_rank(subset):
    return sum(math.comb(s, i + 1) for i, s in enumerate(sorted(subset)))


def colex_unrank(rank, k):
    out = []
    for i in range(k, 0, -1):
        s = i - 1
        while math.comb(s + 1, i) <= rank:
            s += 1
        out.append(s)
        rank -= math.comb(s, i)
    return tuple(reversed(out))


def rank_array(subsets, n):
    """Colex ranks of the rows of an (m, k) array of sorted subsets."""
    subsets = np.asarray(subsets, dtype=np.int64)
    m, k = subsets.shape
    if k == 0:
        return np.zeros(m, dtype=np.int64)
    tab = binom_table(n, k)
    r = np.zeros(m, dtype=np.int64)
    for i in range(k):
        r += tab[i + 1][subsets[:, i]]
    return r


def unrank_range(lo, hi, n, k):
    """Rows are the k-subsets of range(n) with colex ranks lo..hi-1, in order."""
    ranks = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((hi - lo, k), dtype=np.int64)
    tab = binom_table(n, k)
    for i in range(k, 0, -1):
        s = np.searchsorted(tab[i], ranks, side="right") - 1
        out[:, i - 1] = s
        ranks = ranks - tab[i][s]
    return out


def colex_subsets(n, k):
    """All k-subsets of range(n) as an (C(n,k), k) array in colex order."""
    return unrank_range(0, math.comb(n, k), n, k)


def chunk_ranges(total, chunk):
    return [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]


def default_workers():
    try:
        return max(1, int(os.environ.get("MD_THREADS", "1")))
    except ValueError:
        return 1


def map_chunks(fn, ranges, workers=None):
    """Apply ``fn`` to each (lo, hi) range; results come back in range order."""
    workers = default_workers() if workers is None else max(1, workers)
    if workers == 1 or len(ranges) <= 1:
        return [fn(lo, hi) for lo, hi in ranges]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda r: fn(*r), ranges))
