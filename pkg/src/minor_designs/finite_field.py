"""Small finite fields GF(p^m) as F_p[x]/(f).

Elements are encoded as integers 0..q-1 whose base-p digits are the
polynomial coefficients (lowest degree first), so GF(p) is just Z/p.
The modulus f is the lexicographically smallest monic irreducible of
degree m, which makes every construction reproducible.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from .errors import InvalidParams


def prime_power(q):
    """Return (p, m) with q = p**m, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return (q, 1)
    m = 0
    while q % p == 0:
        q //= p
        m += 1
    return (p, m) if q == 1 else None


def _poly_mod(a, f, p):
    a = list(a)
    df = len(f) - 1
    while len(a) > df:
        c = a.pop()
        if c:
            for i in range(df):
                a[len(a) - df + i] = (a[len(a) - df + i] - c * f[i]) % p
    return a


def _is_irreducible(f, p):
    # brute force: no monic factor of degree 1..m//2
    m = len(f) - 1
    for d in range(1, m // 2 + 1):
        for tail in product(range(p), repeat=d):
            g = list(tail) + [1]
            if not any(_poly_mod(f, g, p)):
                return False
    return True


@lru_cache(maxsize=None)
def irreducible(p, m):
    """Smallest monic irreducible of degree m over F_p, coefficients low first."""
    for tail in product(range(p), repeat=m):
        f = list(reversed(tail)) + [1]
        if m == 1 or (f[0] and _is_irreducible(f, p)):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


class GF:
    """The field with q elements; arithmetic via precomputed tables."""

    def __init__(self, q):
        pm = prime_power(q)
        if pm is None:
            raise InvalidParams(f"{q} is not a prime power")
        self.q = q
        self.p, self.m = pm
        self.modulus = irreducible(self.p, self.m)
        p = self.p
        digits = [self._digits(x) for x in range(q)]
        self.add_table = [[self._encode([(a + b) % p for a, b in zip(digits[x], digits[y])]) for y in range(q)] for x in range(q)]
        self.neg_table = [self._encode([(-a) % p for a in digits[x]]) for x in range(q)]
        self.mul_table = [[self._mul(digits[x], digits[y]) for y in range(q)] for x in range(q)]
        squares = {self.mul_table[x][x] for x in range(1, q)}
        self.squares = frozenset(squares)

    def _digits(self, x):
        out = []
        for _ in range(self.m):
            out.append(x % self.p)
            x //= self.p
        return out

    def _encode(self, coeffs):
        x = 0
        for c in reversed(coeffs):
            x = x * self.p + c
        return x

    def _mul(self, a, b):
        prod_ = [0] * (2 * self.m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod_[i + j] = (prod_[i + j] + ai * bj) % self.p
        r = _poly_mod(prod_, self.modulus, self.p) if len(prod_) > self.m else prod_
        r = list(r) + [0] * (self.m - len(r))
        return self._encode(r[: self.m])

    def elements(self):
        return range(self.q)

    def add(self, x, y):
        return self.add_table[x][y]

    def sub(self, x, y):
        return self.add_table[x][self.neg_table[y]]

    def mul(self, x, y):
        return self.mul_table[x][y]

    def chi(self, x):
        """Quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise."""
        if x == 0:
            return 0
        return 1 if x in self.squares else -1
