"""Dense exact matrices over Q(zeta_12), determinants and characteristic polynomials."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import IndexOutOfRange, SymmetryMismatch
from .scalar import ONE, ZERO, Scalar, parse_scalar

SYMMETRIES = ("symmetric", "skew-symmetric", "hermitian", "none")

# largest magnitude we let int64 lane arithmetic reach
INT64_SAFE = 2**62


def _to_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return Scalar.coerce(x)


class ExactMatrix:
    """Immutable square matrix of Scalars.

    ``symmetry`` is advisory metadata; :meth:`validate_symmetry` checks it.
    """

    __slots__ = ("n", "entries", "symmetry", "_lanes")

    def __init__(self, rows, symmetry="none"):
        entries = tuple(tuple(_to_scalar(x) for x in row) for row in rows)
        n = len(entries)
        if n == 0 or any(len(r) != n for r in entries):
            raise ValueError("matrix must be square and nonempty")
        if symmetry not in SYMMETRIES:
            raise ValueError(f"unknown symmetry tag {symmetry!r}")
        self.n = n
        self.entries = entries
        self.symmetry = symmetry
        self._lanes = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], "symmetric")

    @classmethod
    def zeros(cls, n):
        return cls([[ZERO] * n for _ in range(n)], "symmetric")

    @classmethod
    def ones(cls, n):
        return cls([[ONE] * n for _ in range(n)], "symmetric")

    @classmethod
    def from_function(cls, n, f, symmetry="none"):
        return cls([[f(i, j) for j in range(n)] for i in range(n)], symmetry)

    @classmethod
    def from_lanes(cls, arr, scale=1, symmetry="none"):
        """Inverse of :meth:`lanes`: entries ``arr[i, j, :] / scale``."""
        n = arr.shape[0]
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                c = arr[i, j]
                row.append(Scalar((int(c[0]), int(c[1]), int(c[2]), int(c[3])), scale))
            rows.append(row)
        return cls(rows, symmetry)

    @classmethod
    def block(cls, blocks, symmetry="none"):
        """Assemble from a square grid of equal-order ExactMatrix blocks."""
        rows = []
        for brow in blocks:
            m = brow[0].n
            for r in range(m):
                row = []
                for b in brow:
                    row.extend(b.entries[r])
                rows.append(row)
        return cls(rows, symmetry)

    # -- basic access -------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self):
        return [list(r) for r in self.entries]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"ExactMatrix(n={self.n}, symmetry={self.symmetry!r})"

    def with_symmetry(self, symmetry):
        out = ExactMatrix.__new__(ExactMatrix)
        out.n = self.n
        out.entries = self.entries
        if symmetry not in SYMMETRIES:
            raise ValueError(f"unknown symmetry tag {symmetry!r}")
        out.symmetry = symmetry
        out._lanes = self._lanes
        return out

    def transpose(self):
        return ExactMatrix([list(col) for col in zip(*self.entries)], self.symmetry)

    def conj(self):
        return ExactMatrix([[x.conj() for x in row] for row in self.entries], self.symmetry)

    def conj_transpose(self):
        return self.transpose().conj()

    def map(self, f, symmetry="none"):
        return ExactMatrix([[f(x) for x in row] for row in self.entries], symmetry)

    def __neg__(self):
        return ExactMatrix([[-x for x in row] for row in self.entries], self.symmetry)

    def __add__(self, other):
        if isinstance(other, ExactMatrix):
            return ExactMatrix(
                [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
            )
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, ExactMatrix):
            return ExactMatrix(
                [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
            )
        return NotImplemented

    def scale(self, c):
        c = _to_scalar(c)
        return ExactMatrix([[c * x for x in row] for row in self.entries], self.symmetry)

    def shift(self, c):
        """A + c*I."""
        c = _to_scalar(c)
        return ExactMatrix(
            [[x + c if i == j else x for j, x in enumerate(row)] for i, row in enumerate(self.entries)]
        )

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        sa, la = self.lanes()
        sb, lb = other.lanes()
        return ExactMatrix.from_lanes(lane_matmul(la, lb), sa * sb)

    def kron(self, other):
        m = other.n
        n = self.n * m
        return ExactMatrix.from_function(
            n, lambda i, j: self.entries[i // m][j // m] * other.entries[i % m][j % m]
        )

    def trace(self):
        t = ZERO
        for i in range(self.n):
            t = t + self.entries[i][i]
        return t

    # -- structure ----------------------------------------------------------

    def is_symmetric(self):
        e = self.entries
        return all(e[i][j] == e[j][i] for i in range(self.n) for j in range(i + 1, self.n))

    def is_skew_symmetric(self):
        e = self.entries
        return all(e[i][j] == -e[j][i] for i in range(self.n) for j in range(i, self.n))

    def is_hermitian(self):
        e = self.entries
        return all(e[i][j] == e[j][i].conj() for i in range(self.n) for j in range(i, self.n))

    def detect_symmetry(self):
        if self.is_symmetric():
            return "symmetric"
        if self.is_skew_symmetric():
            return "skew-symmetric"
        if self.is_hermitian():
            return "hermitian"
        return "none"

    def validate_symmetry(self):
        """Raise SymmetryMismatch unless the declared symmetry holds entrywise."""
        check = {
            "symmetric": self.is_symmetric,
            "skew-symmetric": self.is_skew_symmetric,
            "hermitian": self.is_hermitian,
        }.get(self.symmetry)
        if check is not None and not check():
            raise SymmetryMismatch(f"matrix declared {self.symmetry} but is not")
        return True

    def is_rational(self):
        return all(x.is_rational() for row in self.entries for x in row)

    def entry_set(self):
        return {x for row in self.entries for x in row}

    def lanes(self):
        """Return ``(scale, arr)`` with ``arr[i, j, :]`` the integer coefficients of
        ``scale * A[i, j]`` in the basis 1, z, z^2, z^3.

        ``arr`` is int64 when every coefficient fits comfortably, else dtype object.
        """
        if self._lanes is None:
            scale = 1
            for row in self.entries:
                for x in row:
                    if x.den != 1:
                        scale = scale * x.den // math.gcd(scale, x.den)
            data = [
                [tuple(c * (scale // x.den) for c in x.num) for x in row] for row in self.entries
            ]
            biggest = max(abs(c) for row in data for t in row for c in t)
            dtype = np.int64 if biggest < 2**31 else object
            self._lanes = (scale, np.array(data, dtype=dtype))
        return self._lanes


def lane_mul(x, y):
    """Elementwise product of lane arrays (..., 4) modulo z^4 - z^2 + 1."""
    p = [None] * 7
    for a in range(4):
        xa = x[..., a]
        for b in range(4):
            term = xa * y[..., b]
            p[a + b] = term if p[a + b] is None else p[a + b] + term
    out = np.stack([p[0] - p[4] - p[6], p[1] - p[5], p[2] + p[4], p[3] + p[5]], axis=-1)
    return out


def lane_matmul(x, y):
    """Matrix product of (n, n, 4) lane arrays."""
    n = x.shape[0]
    bound = 8 * n * _absmax(x) * _absmax(y)
    if x.dtype == object or y.dtype == object or bound >= INT64_SAFE:
        x = x.astype(object)
        y = y.astype(object)
    p = [None] * 7
    for a in range(4):
        xa = x[:, :, a]
        if not xa.any():
            continue
        for b in range(4):
            yb = y[:, :, b]
            if not yb.any():
                continue
            term = xa @ yb
            p[a + b] = term if p[a + b] is None else p[a + b] + term
    zero = np.zeros((n, n), dtype=x.dtype)
    p = [zero if t is None else t for t in p]
    return np.stack([p[0] - p[4] - p[6], p[1] - p[5], p[2] + p[4], p[3] + p[5]], axis=-1)


def _absmax(arr):
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return max(abs(int(v)) for v in arr.flat)
    return int(np.abs(arr).max())


# -- principal submatrices and determinants ----------------------------------


def submatrix(A, alpha):
    """Principal submatrix on the 0-based index set ``alpha`` (sorted on output)."""
    idx = sorted(set(alpha))
    if not idx:
        raise IndexOutOfRange("index set must be nonempty")
    if idx[0] < 0 or idx[-1] >= A.n:
        raise IndexOutOfRange(f"index set {idx} out of range for order {A.n}")
    e = A.entries
    sym = A.symmetry
    return ExactMatrix([[e[i][j] for j in idx] for i in idx], sym)


def complement(n, alpha):
    s = set(alpha)
    return [i for i in range(n) if i not in s]


def _cofactor_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ZERO
    for j in range(n):
        a = rows[0][j]
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = a * _cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def bareiss_det(rows):
    """Fraction-free Gaussian elimination with exact division."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) / prev
        prev = pivot
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def det(A, method="auto"):
    """Exact determinant: cofactor expansion up to order 5, Bareiss beyond."""
    rows = [list(r) for r in A.entries] if isinstance(A, ExactMatrix) else [list(r) for r in A]
    n = len(rows)
    if method == "cofactor" or (method == "auto" and n <= 5):
        return _cofactor_det(rows)
    return bareiss_det(rows)


def solve_inverse(A):
    """Exact inverse by Gauss-Jordan over the field; None when singular."""
    n = A.n
    m = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(A.entries)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col].inv()
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and not m[r][col].is_zero():
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return ExactMatrix([row[n:] for row in m])


# -- characteristic polynomials ------------------------------------------------


@dataclass(frozen=True)
class CharPoly:
    """Coefficients of det(xI - A), highest degree first (``coeffs[0] == 1``).

    ``coeffs[j]`` multiplies ``x**(n - j)``.
    """

    coeffs: tuple

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def coefficient_of_power(self, power):
        j = self.degree - power
        if j < 0 or j > self.degree:
            return ZERO
        return self.coeffs[j]

    def low_first(self):
        return list(reversed(self.coeffs))

    def __call__(self, x):
        x = Scalar.coerce(x)
        acc = ZERO
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def render(self):
        from .scalar import render_scalar

        return [render_scalar(c) for c in self.coeffs]


def hessenberg_charpoly(rows):
    """Characteristic polynomial over a field via reduction to upper Hessenberg form.

    Works for any element type with field operations and ``== 0``; returns the
    coefficient list lowest degree first.
    """
    h = [list(r) for r in rows]
    n = len(h)
    zero = h[0][0] - h[0][0] if n else 0
    for j in range(n - 2):
        piv = next((r for r in range(j + 1, n) if h[r][j] != 0), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        t_inv = 1 / h[j + 1][j]
        for i in range(j + 2, n):
            if h[i][j] == 0:
                continue
            u = h[i][j] * t_inv
            hi, hp = h[i], h[j + 1]
            for c in range(n):
                if hp[c] != 0:
                    hi[c] = hi[c] - u * hp[c]
            for row in h:
                if row[i] != 0:
                    row[j + 1] = row[j + 1] + u * row[i]
    # recurrence on leading principal Hessenberg blocks
    one = zero + 1
    polys = [[one]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        hm = h[m - 1][m - 1]
        p = [zero] + list(prev)
        for d in range(len(prev)):
            p[d] = p[d] - hm * prev[d]
        prod = one
        for i in range(m - 1, 0, -1):
            prod = prod * h[i][i - 1]
            if prod == 0:
                break
            coef = h[i - 1][m - 1] * prod
            if coef == 0:
                continue
            q = polys[i - 1]
            for d in range(len(q)):
                p[d] = p[d] - coef * q[d]
        polys.append(p)
    return polys[n]


def faddeev_leverrier(rows):
    """Characteristic polynomial by the Faddeev-LeVerrier recursion (lowest degree first)."""
    n = len(rows)
    a = [list(r) for r in rows]
    zero = a[0][0] - a[0][0]
    one = zero + 1
    coeffs = [zero] * (n + 1)
    coeffs[n] = one
    m = [[zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        new = [[sum((a[i][l] * m[l][j] for l in range(n)), zero) for j in range(n)] for i in range(n)]
        for i in range(n):
            new[i][i] = new[i][i] + coeffs[n - k + 1]
        m = new
        am = [[sum((a[i][l] * m[l][j] for l in range(n)), zero) for j in range(n)] for i in range(n)]
        tr = sum((am[i][i] for i in range(n)), zero)
        coeffs[n - k] = tr * Fraction(-1, k)
    return coeffs


def charpoly(A, method="auto"):
    """Exact characteristic polynomial det(xI - A).

    ``method`` is ``"hessenberg"`` (field elimination on Scalars),
    ``"faddeev"`` (trace recursion), ``"modular"`` (multimodular over
    primes p = 1 mod 12) or ``"auto"``.
    """
    if method == "auto":
        method = "hessenberg" if A.n <= 12 else "modular"
    if method == "modular":
        from .modular import modular_charpoly

        return modular_charpoly(A)
    rows = [list(r) for r in A.entries]
    if method == "faddeev":
        low = faddeev_leverrier(rows)
    elif method == "hessenberg":
        if A.is_rational():
            frows = [[x.to_fraction() for x in r] for r in rows]
            low = [Scalar.from_rational(c) for c in hessenberg_charpoly(frows)]
        else:
            low = hessenberg_charpoly(rows)
    else:
        raise ValueError(f"unknown charpoly method {method!r}")
    return CharPoly(tuple(reversed(low)))
