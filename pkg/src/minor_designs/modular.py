"""Multimodular characteristic polynomials.

The matrix is scaled into Z[z], reduced modulo primes p = 1 (mod 12) (where the
12th cyclotomic polynomial splits into four linear factors), and the
characteristic polynomial is computed in each image by Hessenberg reduction in
numpy int64 arithmetic. Basis coefficients are recovered by inverting the
4x4 Vandermonde system per prime, then lifted by Chinese remaindering against
an a priori Hadamard-type bound, so the result is exact.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .matrix import CharPoly
from .scalar import Scalar

# p < 2**26 keeps p*p*n below 2**62 for every order we handle (n < 1024)
_PRIME_CEILING = 2**26
# upper bound for the inf-norm of the inverse embedding matrix (actual 2/sqrt(3))
_EMBED_INV_NORM = 2


def _is_prime(n):
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


@lru_cache(maxsize=None)
def _prime(index):
    """The index-th prime below 2**26 congruent to 1 mod 12, counting down."""
    p = _PRIME_CEILING - (_PRIME_CEILING % 12) + 1
    count = -1
    while True:
        p -= 12
        if _is_prime(p):
            count += 1
            if count == index:
                return p


@lru_cache(maxsize=None)
def _roots(p):
    """The four primitive 12th roots of unity mod p, images of z, z^5, z^7, z^11."""
    for a in range(2, p):
        r = pow(a, (p - 1) // 12, p)
        if pow(r, 6, p) != 1 and pow(r, 4, p) != 1:
            return tuple(pow(r, e, p) for e in (1, 5, 7, 11))
    raise AssertionError("no primitive 12th root found")


@lru_cache(maxsize=None)
def _vandermonde_inverse(p):
    rs = _roots(p)
    v = [[pow(r, m, p) for m in range(4)] for r in rs]
    # Gauss-Jordan mod p
    aug = [row[:] + [1 if i == j else 0 for j in range(4)] for i, row in enumerate(v)]
    for c in range(4):
        piv = next(r for r in range(c, 4) if aug[r][c] % p)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], p - 2, p)
        aug[c] = [x * inv % p for x in aug[c]]
        for r in range(4):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[c])]
    return [row[4:] for row in aug]


def charpoly_mod(h, p):
    """Characteristic polynomial of an int64 matrix with entries in [0, p).

    Returns a Python list of n+1 residues, lowest degree first.
    """
    h = np.array(h, dtype=np.int64, copy=True)
    n = h.shape[0]
    for j in range(n - 2):
        col = h[j + 1 :, j]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        piv = j + 1 + int(nz[0])
        if piv != j + 1:
            h[[piv, j + 1], :] = h[[j + 1, piv], :]
            h[:, [piv, j + 1]] = h[:, [j + 1, piv]]
        below = h[j + 2 :, j]
        if not below.any():
            continue
        t_inv = pow(int(h[j + 1, j]), p - 2, p)
        u = (below * t_inv) % p
        h[j + 2 :, :] = (h[j + 2 :, :] - (np.outer(u, h[j + 1, :]) % p)) % p
        h[:, j + 1] = (h[:, j + 1] + (h[:, j + 2 :] @ u) % p) % p
    hl = h.tolist()
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = np.zeros(n + 1, dtype=np.int64)
        cur[1:] = prev[:-1]
        cur = (cur - (hl[m - 1][m - 1] * prev) % p) % p
        if m > 1:
            w = np.zeros(m - 1, dtype=np.int64)
            prod = 1
            for i in range(m - 1, 0, -1):
                prod = prod * hl[i][i - 1] % p
                if prod == 0:
                    break
                w[i - 1] = hl[i - 1][m - 1] * prod % p
            if w.any():
                cur = (cur - (w @ polys[: m - 1]) % p) % p
        polys[m] = cur
    return polys[n].tolist()


def _coefficient_bound(n, j, maxnorm):
    """Bound on |basis coefficient| of the x^(n-j) coefficient of a scaled matrix."""
    if j == 0:
        return 1
    return _EMBED_INV_NORM * math.comb(n, j) * ((math.isqrt(j) + 1) * maxnorm) ** j


def _primes_for(bound):
    need = 2 * bound + 1
    prod = 1
    count = 0
    while prod <= need:
        prod *= _prime(count)
        count += 1
    return count


def _crt_symmetric(residues, primes):
    x, m = 0, 1
    for r, p in zip(residues, primes):
        t = ((r - x) * pow(m, -1, p)) % p
        x += m * t
        m *= p
    if x > m // 2:
        x -= m
    return x


class CoefficientEngine:
    """Exact characteristic polynomial coefficients of principal submatrices of one matrix.

    Reductions of the whole matrix modulo each prime (and each root image) are
    cached, so repeated queries on different index sets only pay for the
    Hessenberg reduction.
    """

    def __init__(self, A):
        self.A = A
        self.scale, lanes = A.lanes()
        self.lanes = np.array(lanes, dtype=object)
        self.rational = not self.lanes[..., 1:].any()
        self.maxnorm = max(1, max(sum(abs(int(c)) for c in t) for row in self.lanes for t in row))
        self._reduced = {}

    def _images(self, k):
        """Matrices mod p_k for each embedding (one when the matrix is rational)."""
        if k not in self._reduced:
            p = _prime(k)
            if self.rational:
                imgs = [np.array((self.lanes[..., 0] % p), dtype=np.int64)]
            else:
                imgs = []
                for r in _roots(p):
                    acc = self.lanes[..., 3] % p
                    for m in (2, 1, 0):
                        acc = (acc * r + self.lanes[..., m]) % p
                    imgs.append(np.array(acc, dtype=np.int64))
            self._reduced[k] = (p, imgs)
        return self._reduced[k]

    def _scaled_coefficients(self, idx, js):
        """Basis coefficient tuples of coefficient x^(m-j) of charpoly(scale*A[idx]), for j in js."""
        m = len(idx)
        bound = max(_coefficient_bound(m, j, self.maxnorm) for j in js)
        nprimes = _primes_for(bound)
        sel = np.ix_(idx, idx)
        residues = {j: [] for j in js}
        primes = []
        for k in range(nprimes):
            p, imgs = self._images(k)
            primes.append(p)
            polys = [charpoly_mod(img[sel], p) for img in imgs]
            for j in js:
                if self.rational:
                    residues[j].append((polys[0][m - j], 0, 0, 0))
                else:
                    vinv = _vandermonde_inverse(p)
                    vals = [poly[m - j] for poly in polys]
                    residues[j].append(
                        tuple(sum(vinv[a][s] * vals[s] for s in range(4)) % p for a in range(4))
                    )
        out = {}
        for j in js:
            out[j] = tuple(
                _crt_symmetric([r[a] for r in residues[j]], primes) for a in range(4)
            )
        return out

    def coefficients(self, idx, js):
        """Map j -> coefficient of x^(m-j) in det(xI - A[idx]) as Scalars."""
        idx = list(idx)
        if not idx:
            return {j: Scalar(1 if j == 0 else 0) for j in js}
        raw = self._scaled_coefficients(idx, list(js))
        return {j: Scalar(raw[j], self.scale**j) for j in js}

    def coefficient(self, idx, j):
        return self.coefficients(idx, [j])[j]

    def charpoly(self, idx=None):
        idx = list(range(self.A.n)) if idx is None else list(idx)
        m = len(idx)
        cs = self.coefficients(idx, range(m + 1))
        return CharPoly(tuple(cs[j] for j in range(m + 1)))


def modular_charpoly(A):
    return CoefficientEngine(A).charpoly()
