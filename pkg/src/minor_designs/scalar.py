"""Exact arithmetic in the cyclotomic field Q(zeta), zeta a primitive 12th root of unity.

Every element is stored as ``(c0 + c1*z + c2*z**2 + c3*z**3) / den`` with
``z**4 = z**2 - 1`` and the tuple ``(den, c0..c3)`` reduced to lowest terms, so
two equal field elements always have identical representations.

The field contains the Gaussian rationals (``i = z**3``) and the Eisenstein
rationals (``w = z**4``), plus ``sqrt(3) = z + z**11``.
"""
from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from numbers import Rational

from .errors import DivisionByZero, ParseError

_ZETA_POWERS = (
    (1, 0, 0, 0),
    (0, 1, 0, 0),
    (0, 0, 1, 0),
    (0, 0, 0, 1),
    (-1, 0, 1, 0),
    (0, -1, 0, 1),
    (-1, 0, 0, 0),
    (0, -1, 0, 0),
    (0, 0, -1, 0),
    (0, 0, 0, -1),
    (1, 0, -1, 0),
    (0, 1, 0, -1),
)

# units of Z/12; sigma_j sends z to z**j
GALOIS_EXPONENTS = (1, 5, 7, 11)

_ZETA_COMPLEX = cmath.exp(1j * math.pi / 6)


def _reduce(c0, c1, c2, c3, den):
    if den == 0:
        raise DivisionByZero("zero denominator")
    if den < 0:
        c0, c1, c2, c3, den = -c0, -c1, -c2, -c3, -den
    g = math.gcd(math.gcd(c0, c1), math.gcd(math.gcd(c2, c3), den))
    if g != 1:
        c0 //= g
        c1 //= g
        c2 //= g
        c3 //= g
        den //= g
    return (c0, c1, c2, c3), den


def poly_mul(a, b):
    """Product of two coefficient 4-tuples modulo z**4 - z**2 + 1."""
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    p0 = a0 * b0
    p1 = a0 * b1 + a1 * b0
    p2 = a0 * b2 + a1 * b1 + a2 * b0
    p3 = a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0
    p4 = a1 * b3 + a2 * b2 + a3 * b1
    p5 = a2 * b3 + a3 * b2
    p6 = a3 * b3
    # z^6 = -1, z^5 = z^3 - z, z^4 = z^2 - 1
    return (p0 - p4 - p6, p1 - p5, p2 + p4, p3 + p5)


def _galois(c, j):
    out = [0, 0, 0, 0]
    for i, ci in enumerate(c):
        if ci:
            zp = _ZETA_POWERS[(i * j) % 12]
            for m in range(4):
                out[m] += ci * zp[m]
    return tuple(out)


class Scalar:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(0, 0, 0, 0), den=1):
        if isinstance(num, int):
            num = (num, 0, 0, 0)
        num, den = _reduce(*num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def from_rational(cls, q):
        q = Fraction(q)
        return cls._raw((q.numerator, 0, 0, 0), q.denominator)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, int):
            return cls._raw((x, 0, 0, 0), 1)
        if isinstance(x, Rational):
            return cls.from_rational(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")

    # -- predicates -------------------------------------------------------

    def is_zero(self):
        return self.num == (0, 0, 0, 0)

    def is_rational(self):
        c = self.num
        return c[1] == 0 and c[2] == 0 and c[3] == 0

    def is_integer(self):
        return self.is_rational() and self.den == 1

    def is_real(self):
        return self == self.conj()

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def __complex__(self):
        c0, c1, c2, c3 = self.num
        z = _ZETA_COMPLEX
        return (c0 + c1 * z + c2 * z * z + c3 * z * z * z) / self.den

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self.num, other.num
        da, db = self.den, other.den
        if da == db:
            return Scalar((a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]), da)
        return Scalar(
            (
                a[0] * db + b[0] * da,
                a[1] * db + b[1] * da,
                a[2] * db + b[2] * da,
                a[3] * db + b[3] * da,
            ),
            da * db,
        )

    __radd__ = __add__

    def __neg__(self):
        c = self.num
        return Scalar._raw((-c[0], -c[1], -c[2], -c[3]), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self.num, other.num
        if b[1] == 0 and b[2] == 0 and b[3] == 0:
            s = b[0]
            num = (a[0] * s, a[1] * s, a[2] * s, a[3] * s)
        elif a[1] == 0 and a[2] == 0 and a[3] == 0:
            s = a[0]
            num = (b[0] * s, b[1] * s, b[2] * s, b[3] * s)
        else:
            num = poly_mul(a, b)
        return Scalar(num, self.den * other.den)

    __rmul__ = __mul__

    def galois(self, j):
        """Image under the automorphism z -> z**j (j coprime to 12)."""
        if j % 12 not in GALOIS_EXPONENTS:
            raise ValueError("exponent must be a unit modulo 12")
        return Scalar._raw(_galois(self.num, j), self.den)

    def conj(self):
        return self.galois(11)

    def norm(self):
        """Field norm down to Q, as a Fraction."""
        c = self.num
        prod = c
        for j in (5, 7, 11):
            prod = poly_mul(prod, _galois(c, j))
        return Fraction(prod[0], self.den**4)

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        c = self.num
        if self.is_rational():
            return Scalar((self.den, 0, 0, 0), c[0])
        cofactor = _galois(c, 5)
        cofactor = poly_mul(cofactor, _galois(c, 7))
        cofactor = poly_mul(cofactor, _galois(c, 11))
        n = poly_mul(c, cofactor)[0]
        # x^-1 = den * cofactor / (num * cofactor), the latter rational
        d = self.den
        return Scalar((cofactor[0] * d, cofactor[1] * d, cofactor[2] * d, cofactor[3] * d), n)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inv()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inv() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison, hashing, display --------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational)):
            return self == Scalar.coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def sort_key(self):
        """Deterministic total order: rationals by value first, then by coefficients."""
        if self.is_rational():
            return (0, Fraction(self.num[0], self.den), ())
        return (1, Fraction(0), (self.den,) + self.num)

    def __repr__(self):
        return f"Scalar({render_scalar(self)!r})"

    def __str__(self):
        return render_scalar(self)


ZERO = Scalar._raw((0, 0, 0, 0), 1)
ONE = Scalar._raw((1, 0, 0, 0), 1)
ZETA = Scalar._raw((0, 1, 0, 0), 1)
I = Scalar._raw((0, 0, 0, 1), 1)
OMEGA = Scalar._raw((-1, 0, 1, 0), 1)
OMEGA2 = OMEGA * OMEGA
SQRT3 = ZETA + ZETA.galois(11)
SQRT_MINUS3 = 2 * OMEGA + 1


_SHORTHANDS = {
    "i": I,
    "-i": -I,
    "i/2": I / 2,
    "-i/2": -I / 2,
    "w": OMEGA,
    "w2": OMEGA2,
    "-w": -OMEGA,
    "-w2": -OMEGA2,
}
_RENDER = {v: k for k, v in _SHORTHANDS.items()}

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_POLY_RE = re.compile(
    r"^poly:\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)(?:/(\d+))?$"
)


def parse_scalar(token):
    """Parse a matrix-file token.

    Accepted forms are integers and fractions (``-3``, ``1/2``), the shorthands
    ``i -i i/2 -i/2 w w2 -w -w2`` and the general ``poly:(c0,c1,c2,c3)/d``.
    """
    tok = token.strip().replace("−", "-")
    if tok in _SHORTHANDS:
        return _SHORTHANDS[tok]
    if _RATIONAL_RE.match(tok):
        try:
            return Scalar.from_rational(Fraction(tok))
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {token!r}") from None
    m = _POLY_RE.match(tok)
    if m:
        cs = tuple(int(g) for g in m.groups()[:4])
        den = int(m.group(5)) if m.group(5) is not None else 1
        if den == 0:
            raise ParseError(f"zero denominator in {token!r}")
        return Scalar(cs, den)
    raise ParseError(f"malformed scalar token {token!r}")


def render_scalar(x):
    x = Scalar.coerce(x)
    if x.is_rational():
        q = Fraction(x.num[0], x.den)
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    tok = _RENDER.get(x)
    if tok is not None:
        return tok
    c = x.num
    body = f"poly:({c[0]},{c[1]},{c[2]},{c[3]})"
    return body if x.den == 1 else f"{body}/{x.den}"


def pretty_scalar(x):
    """Human-oriented rendering in terms of i, w or sqrt(-3) where possible."""
    x = Scalar.coerce(x)
    tok = render_scalar(x)
    if not tok.startswith("poly:"):
        return tok
    # a + b*w with rational a, b
    c0, c1, c2, c3 = x.num
    if c1 == 0 and c3 == 0:
        b = Fraction(c2, x.den)
        a = Fraction(c0 + c2, x.den)
        return _linear(a, b, "w")
    if c1 == 0 and c2 == 0:
        return _linear(Fraction(c0, x.den), Fraction(c3, x.den), "i")
    return tok


def _linear(a, b, sym):
    parts = []
    if a:
        parts.append(str(a))
    if b == 1:
        parts.append(("+" if parts else "") + sym)
    elif b == -1:
        parts.append("-" + sym)
    else:
        coef = str(b)
        if parts and b > 0:
            coef = "+" + coef
        parts.append(f"{coef}{sym}")
    return "".join(parts)
