"""Catalog of matrix families with post-condition validators.

Every public constructor validates its output before returning it and raises
ValidatorFailed otherwise, so a returned matrix is always certified.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParams, SearchExhausted, UnknownName, ValidatorFailed
from .finite_field import GF, prime_power
from .matrix import ExactMatrix
from .scalar import I, OMEGA, OMEGA2, ONE, Scalar

FAMILIES = (
    "paley_conference",
    "paley_tournament",
    "graphical_hadamard",
    "signed_hypercube",
    "bgw_from_conference",
    "bgw_block",
    "hadamard_bordered",
    "srg",
    "e7_gram",
    "e8_gram",
    "mub_gram",
    "bh9_figure1",
    "hermitian_bh9",
    "hoggar_seidel",
    "skew_bush",
)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)


# -- small helpers -------------------------------------------------------------


def _int_matrix(arr, symmetry="none"):
    arr = np.asarray(arr)
    return ExactMatrix([[int(x) for x in row] for row in arr], symmetry)


def _gauss_matrix(re, im, den=1, symmetry="none"):
    """Matrix with entries (re + i*im)/den from integer arrays."""
    re = np.asarray(re)
    im = np.asarray(im)
    n = re.shape[0]
    return ExactMatrix(
        [[Scalar((int(re[a, b]), 0, 0, int(im[a, b])), den) for b in range(n)] for a in range(n)],
        symmetry,
    )


def _require(cond, what):
    if not cond:
        raise ValidatorFailed(what)


def _is_multiple_of_identity(M, c):
    c = Scalar.coerce(c)
    return M == ExactMatrix.identity(M.n).scale(c)


def _int_array(M):
    """Integer numpy array of a rational-integer matrix."""
    scale, lanes = M.lanes()
    if scale != 1 or np.asarray(lanes[..., 1:]).any():
        raise ValueError("matrix is not integral")
    return np.asarray(lanes[..., 0], dtype=np.int64)


def _J(n):
    return np.ones((n, n), dtype=np.int64)


def _I(n):
    return np.eye(n, dtype=np.int64)


# -- Paley family ----------------------------------------------------------------


def _odd_prime_power(q):
    pm = prime_power(q)
    if pm is None or pm[0] == 2:
        raise InvalidParams(f"q={q} must be an odd prime power")
    return GF(q)


def paley_conference(q):
    """Conference matrix of order q+1 from the Paley digraph on GF(q).

    Points 1..q are the field elements in their integer encoding and point
    q+1 is the extra vertex.  Entry (u,v) is -1 exactly when u -> v is an arc.
    """
    F = _odd_prime_power(q)
    n = q + 1
    C = np.zeros((n, n), dtype=np.int64)
    for u in range(q):
        for v in range(q):
            if u != v:
                C[u, v] = -F.chi(F.sub(u, v))
    back = -1 if q % 4 == 1 else 1
    C[q, :q] = -1
    C[:q, q] = back
    sym = "symmetric" if q % 4 == 1 else "skew-symmetric"
    S = _int_matrix(C, sym)
    validate_conference(S)
    return S


def validate_conference(S):
    C = _int_array(S)
    n = C.shape[0]
    _require(not np.diag(C).any(), "conference matrix needs a zero diagonal")
    off = C[~np.eye(n, dtype=bool)]
    _require(np.all(np.abs(off) == 1), "off-diagonal entries must be +-1")
    _require(np.array_equal(C @ C.T, (n - 1) * _I(n)), "S S^T != (n-1) I")
    _require(np.array_equal(C, C.T) or np.array_equal(C, -C.T), "neither symmetric nor skew")
    S.validate_symmetry()
    return True


def paley_tournament(q):
    """Adjacency matrix of the Paley tournament on GF(q), q = 3 mod 4."""
    F = _odd_prime_power(q)
    if q % 4 != 3:
        raise InvalidParams("Paley tournament needs q = 3 (mod 4)")
    A = np.zeros((q, q), dtype=np.int64)
    for u in range(q):
        for v in range(q):
            if u != v and F.chi(F.sub(u, v)) == 1:
                A[u, v] = 1
    M = _int_matrix(A)
    validate_doubly_regular(M)
    return M


def validate_doubly_regular(M):
    A = _int_array(M)
    v = A.shape[0]
    _require(set(np.unique(A)) <= {0, 1}, "tournament must be 0/1")
    _require(np.array_equal(A + A.T, _J(v) - _I(v)), "A + A^T != J - I")
    t = (v - 3) // 4
    _require(np.array_equal(A @ A.T, t * _J(v) + (t + 1) * _I(v)), "A A^T != tJ + (t+1)I")
    return True


def paley_graph(q):
    F = _odd_prime_power(q)
    if q % 4 != 1:
        raise InvalidParams("Paley graph needs q = 1 (mod 4)")
    A = np.zeros((q, q), dtype=np.int64)
    for u in range(q):
        for v in range(q):
            if u != v and F.chi(F.sub(u, v)) == 1:
                A[u, v] = 1
    return A


# -- Hadamard-type families ---------------------------------------------------------


def graphical_hadamard(n=None, m=None):
    """Kronecker power of the order-4 matrix J - 2I (symmetric, constant diagonal)."""
    if m is None:
        if n is None:
            raise InvalidParams("graphical_hadamard needs n=4^m or m")
        m = 0
        k = n
        while k > 1 and k % 4 == 0:
            k //= 4
            m += 1
        if k != 1 or m == 0:
            raise InvalidParams(f"order {n} is not a positive power of 4")
    if m < 1:
        raise InvalidParams("m must be positive")
    base = _J(4) - 2 * _I(4)
    H = np.array([[1]], dtype=np.int64)
    for _ in range(m):
        H = np.kron(H, base)
    M = _int_matrix(H, "symmetric")
    validate_graphical_hadamard(M)
    return M


def validate_graphical_hadamard(M):
    H = _int_array(M)
    n = H.shape[0]
    _require(np.array_equal(H, H.T), "graphical Hadamard must be symmetric")
    _require(np.all(np.abs(H) == 1), "entries must be +-1")
    _require(len(set(np.diag(H))) == 1, "diagonal must be constant")
    _require(np.array_equal(H @ H.T, n * _I(n)), "H H^T != nI")
    return True


def sylvester_hadamard(v):
    if v < 1 or v & (v - 1):
        raise InvalidParams("Sylvester Hadamard order must be a power of 2")
    H = np.array([[1]], dtype=np.int64)
    while H.shape[0] < v:
        H = np.block([[H, H], [H, -H]])
    return H


def validate_hadamard(H):
    H = np.asarray(H)
    n = H.shape[0]
    _require(np.all(np.abs(H) == 1), "Hadamard entries must be +-1")
    _require(np.array_equal(H @ H.T, n * _I(n)), "H H^T != nI")
    return True


def hadamard_bordered(v=None, H=None):
    """[[I, H], [H^T, I]] for a Hadamard matrix H (Sylvester of order v by default)."""
    if H is None:
        if v is None:
            raise InvalidParams("hadamard_bordered needs v or H")
        H = sylvester_hadamard(v)
    else:
        H = _int_array(H) if isinstance(H, ExactMatrix) else np.asarray(H, dtype=np.int64)
    validate_hadamard(H)
    v = H.shape[0]
    A = np.block([[_I(v), H], [H.T, _I(v)]])
    M = _int_matrix(A, "symmetric")
    _require(np.array_equal(A @ A - 2 * A - (v - 1) * _I(2 * v), 0 * A), "A^2 - 2A - (v-1)I != O")
    return M


def signed_hypercube(d):
    """S_0 = O_1 and S_{d+1} = [[S_d, I], [I, -S_d]]."""
    if d < 0:
        raise InvalidParams("d must be nonnegative")
    S = np.zeros((1, 1), dtype=np.int64)
    for _ in range(d):
        n = S.shape[0]
        S = np.block([[S, _I(n)], [_I(n), -S]])
    M = _int_matrix(S, "symmetric")
    _require(np.array_equal(S @ S, d * _I(S.shape[0])), "S_d^2 != dI")
    return M


def bgw_from_conference(q):
    """A conference matrix of order q+1 read as a BGW(q+1, q, q-1)."""
    W = paley_conference(q)
    validate_bgw(W, q + 1, q, q - 1)
    return W


def validate_bgw(W, v=None, k=None, lam=None):
    A = _int_array(W)
    n = A.shape[0]
    _require(set(np.unique(A)) <= {-1, 0, 1}, "BGW entries must be 0, +-1")
    N = np.abs(A)
    kk = int(N[0].sum())
    _require(np.array_equal(A @ A.T, kk * _I(n)), "W W^T != kI")
    ll = kk * (kk - 1) // (n - 1) if n > 1 else 0
    _require(np.array_equal(N @ N.T, kk * _I(n) + ll * (_J(n) - _I(n))), "support is not a symmetric design")
    if v is not None:
        _require((n, kk, ll) == (v, k, lam), f"expected BGW({v},{k},{lam}), got ({n},{kk},{ll})")
    return (n, kk, ll)


def bgw_block(W=None, q=None):
    """[[O, W], [W^T, O]] for a validated BGW matrix W."""
    if W is None:
        if q is None:
            raise InvalidParams("bgw_block needs W or q")
        W = bgw_from_conference(q)
    _, d, _ = validate_bgw(W)
    A = _int_array(W)
    v = A.shape[0]
    Z = np.zeros((v, v), dtype=np.int64)
    B = np.block([[Z, A], [A.T, Z]])
    _require(np.array_equal(B @ B, d * _I(2 * v)), "block matrix squared != dI")
    return _int_matrix(B, "symmetric")


# -- strongly regular graphs -------------------------------------------------------------


def rook_graph(n):
    idx = [(r, c) for r in range(n) for c in range(n)]
    return np.array(
        [[int(a != b and (a[0] == b[0] or a[1] == b[1])) for b in idx] for a in idx], dtype=np.int64
    )


def triangular_graph(n):
    pairs = list(itertools.combinations(range(n), 2))
    return np.array(
        [[int(a != b and bool(set(a) & set(b))) for b in pairs] for a in pairs], dtype=np.int64
    )


def petersen_graph():
    pairs = list(itertools.combinations(range(5), 2))
    return np.array([[int(not set(a) & set(b)) for b in pairs] for a in pairs], dtype=np.int64)


def clebsch_graph():
    """Folded 5-cube: F_2^4 with x ~ y iff x ^ y has weight 1 or is 1111."""
    gens = {1, 2, 4, 8, 15}
    return np.array([[int((x ^ y) in gens) for y in range(16)] for x in range(16)], dtype=np.int64)


def schlafli_graph():
    """Complement of the intersection graph of the 27 lines on a cubic surface."""
    lines = [("a", i) for i in range(6)] + [("b", i) for i in range(6)]
    lines += [("c", p) for p in itertools.combinations(range(6), 2)]

    def meet(x, y):
        if x == y:
            return False
        kx, ky = x[0], y[0]
        if kx > ky:
            x, y = y, x
            kx, ky = ky, kx
        if (kx, ky) == ("a", "b"):
            return x[1] != y[1]
        if kx == "c" and ky == "c":
            return not set(x[1]) & set(y[1])
        if ky == "c":  # a_i or b_i meets c_ij
            return x[1] in y[1]
        return False  # a-a, b-b

    return np.array([[int(x != y and not meet(x, y)) for y in lines] for x in lines], dtype=np.int64)


SRG_PARAMS = {
    "petersen": (10, 3, 0, 1),
    "clebsch": (16, 5, 0, 2),
    "schlafli": (27, 16, 10, 8),
}


def srg_parameters(A):
    """(v, kappa, a, c) if A is a strongly regular adjacency matrix, else None."""
    A = np.asarray(A, dtype=np.int64)
    v = A.shape[0]
    if not np.array_equal(A, A.T) or np.diag(A).any():
        return None
    deg = A.sum(axis=1)
    if len(set(deg)) != 1:
        return None
    kappa = int(deg[0])
    A2 = A @ A
    adj = A.astype(bool)
    non = ~adj & ~np.eye(v, dtype=bool)
    a_vals = set(A2[adj].tolist())
    c_vals = set(A2[non].tolist())
    if len(a_vals) > 1 or len(c_vals) > 1:
        return None
    a = a_vals.pop() if a_vals else 0
    c = c_vals.pop() if c_vals else 0
    return (v, kappa, a, c)


def _parse_srg_name(name, params):
    """Accept 'rook(4)', 'complement(rook(4))' or a bare name with params."""
    name = name.strip().replace(" ", "")
    if name.startswith("complement(") and name.endswith(")"):
        return ("complement", name[len("complement(") : -1])
    if "(" in name and name.endswith(")"):
        base, arg = name[:-1].split("(", 1)
        return (base, int(arg))
    for key in ("q", "n"):
        if key in params:
            return (name, int(params[key]))
    return (name, None)


def srg_adjacency(name, **params):
    kind, arg = _parse_srg_name(name, params)
    if kind == "complement":
        inner = srg_adjacency(arg)
        v = inner.shape[0]
        return _J(v) - _I(v) - inner
    if kind == "paley_graph":
        return paley_graph(arg)
    if kind == "rook":
        return rook_graph(arg)
    if kind == "triangular":
        return triangular_graph(arg)
    if kind == "petersen":
        return petersen_graph()
    if kind == "clebsch":
        return clebsch_graph()
    if kind == "schlafli":
        return schlafli_graph()
    raise UnknownName(f"unknown strongly regular graph {name!r}")


def expected_srg_parameters(name):
    kind, arg = _parse_srg_name(name, {})
    if kind == "complement":
        v, k, a, c = expected_srg_parameters(arg)
        return (v, v - k - 1, v - 2 - 2 * k + c, v - 2 * k + a)
    if kind == "paley_graph":
        return (arg, (arg - 1) // 2, (arg - 5) // 4, (arg - 1) // 4)
    if kind == "rook":
        return (arg * arg, 2 * (arg - 1), arg - 2, 2)
    if kind == "triangular":
        return (arg * (arg - 1) // 2, 2 * (arg - 2), arg - 2, 4)
    if kind in SRG_PARAMS:
        return SRG_PARAMS[kind]
    raise UnknownName(f"unknown strongly regular graph {name!r}")


def srg_catalog(name, **params):
    """Adjacency matrix of a named strongly regular graph, validated."""
    A = srg_adjacency(name, **params)
    expected = expected_srg_parameters(name if not params else _canonical_srg_name(name, params))
    got = srg_parameters(A)
    _require(got == expected, f"{name}: expected SRG{expected}, got {got}")
    return _int_matrix(A, "symmetric")


def _canonical_srg_name(name, params):
    kind, arg = _parse_srg_name(name, params)
    return name if arg is None else f"{kind}({arg})"


# named (v, kappa, a, c) -> graph, covering every parameter set used by the PBD table
SRG_BY_PARAMETERS = {
    (9, 4, 1, 2): "paley_graph(9)",
    (10, 3, 0, 1): "petersen",
    (13, 6, 2, 3): "paley_graph(13)",
    (15, 8, 4, 4): "triangular(6)",
    (16, 5, 0, 2): "clebsch",
    (16, 6, 2, 2): "rook(4)",
    (16, 9, 4, 6): "complement(rook(4))",
    (16, 10, 6, 6): "complement(clebsch)",
    (17, 8, 3, 4): "paley_graph(17)",
    (21, 10, 5, 4): "triangular(7)",
    (21, 10, 3, 6): "complement(triangular(7))",
    (25, 8, 3, 2): "rook(5)",
    (25, 12, 5, 6): "paley_graph(25)",
    (25, 16, 9, 12): "complement(rook(5))",
    (27, 16, 10, 8): "schlafli",
}


# -- root systems, MUBs, Butson and Hoggar ------------------------------------------------


def e8_roots():
    """The 240 E8 roots, doubled so that coordinates are integers (norm 8)."""
    roots = []
    for i, j in itertools.combinations(range(8), 2):
        for si in (2, -2):
            for sj in (2, -2):
                r = [0] * 8
                r[i] = si
                r[j] = sj
                roots.append(tuple(r))
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(signs)
    roots.sort(reverse=True)
    return np.array(roots, dtype=np.int64)


def e7_roots():
    """E8 roots orthogonal to the fixed root (1/2)(1,...,1); doubled coordinates."""
    r8 = e8_roots()
    fixed = np.ones(8, dtype=np.int64)
    return r8[(r8 @ fixed) == 0]


def _gram_from_doubled(roots):
    G = roots @ roots.T
    _require(np.all(G % 4 == 0), "doubled root inner products must be divisible by 4")
    return G // 4


def e8_gram():
    R = e8_roots()
    _require(len(R) == 240, "E8 must have 240 roots")
    _require(len(set(map(tuple, R))) == 240, "E8 roots must be distinct")
    G = _gram_from_doubled(R)
    _require(np.all(np.diag(G) == 2), "root norms must be 2")
    off = G[~np.eye(240, dtype=bool)]
    _require(set(np.unique(off).tolist()) <= {-2, -1, 0, 1}, "off-diagonal Gram values out of range")
    return _int_matrix(G, "symmetric")


def e7_gram(check_minors=True):
    R = e7_roots()
    _require(len(R) == 126, "E7 must have 126 roots")
    G = _gram_from_doubled(R)
    _require(np.all(np.diag(G) == 2), "root norms must be 2")
    M = _int_matrix(G, "symmetric")
    if check_minors:
        from .minors import minor_spectrum

        keys = set(minor_spectrum(M, 3).counts)
        _require(keys == {0, 4, 6, 8}, f"E7 3x3 minors are {sorted(keys, key=Scalar.sort_key)}")
    return M


# each vector is 2*b as a list of (re, im) integer pairs
_MUB_DOUBLED = [
    # M1
    [(2, 0), (0, 0), (0, 0), (0, 0)],
    [(0, 0), (2, 0), (0, 0), (0, 0)],
    [(0, 0), (0, 0), (2, 0), (0, 0)],
    [(0, 0), (0, 0), (0, 0), (2, 0)],
    # M2
    [(1, 0), (1, 0), (1, 0), (1, 0)],
    [(1, 0), (1, 0), (-1, 0), (-1, 0)],
    [(1, 0), (-1, 0), (-1, 0), (1, 0)],
    [(1, 0), (-1, 0), (1, 0), (-1, 0)],
    # M3
    [(1, 0), (-1, 0), (0, -1), (0, -1)],
    [(1, 0), (-1, 0), (0, 1), (0, 1)],
    [(1, 0), (1, 0), (0, -1), (0, 1)],
    [(1, 0), (1, 0), (0, 1), (0, -1)],
    # M4
    [(1, 0), (0, -1), (0, -1), (-1, 0)],
    [(1, 0), (0, -1), (0, 1), (1, 0)],
    [(1, 0), (0, 1), (0, -1), (1, 0)],
    [(1, 0), (0, 1), (0, 1), (-1, 0)],
    # M5
    [(1, 0), (0, -1), (-1, 0), (0, -1)],
    [(1, 0), (0, -1), (1, 0), (0, 1)],
    [(1, 0), (0, 1), (-1, 0), (0, 1)],
    [(1, 0), (0, 1), (1, 0), (0, -1)],
]


def mub_vectors():
    """The 80 vectors +-M_i, +-iM_i as complex integer arrays (scaled by 2).

    Order: for each basis vector b (bases in order), the multiples b, -b, ib, -ib.
    """
    base = np.array([[complex(re, im) for re, im in vec] for vec in _MUB_DOUBLED])
    out = []
    for b in base:
        for u in (1, -1, 1j, -1j):
            out.append(u * b)
    return np.array(out)


def mub_gram():
    X = mub_vectors()
    G4 = X @ X.conj().T  # 4 * Gram
    re = np.rint(G4.real).astype(np.int64)
    im = np.rint(G4.imag).astype(np.int64)
    _require(np.allclose(G4, re + 1j * im), "Gram entries must be Gaussian integers over 4")
    M = _gauss_matrix(re, im, 4, "hermitian")
    allowed = {Scalar.coerce(x) for x in (1, -1, 0, Scalar(1) / 2, Scalar(-1) / 2)}
    allowed |= {I, -I, I / 2, -I / 2}
    _require(M.entry_set() <= allowed, "MUB Gram entries out of range")
    _require(all(M[i, i] == 1 for i in range(M.n)), "MUB Gram diagonal must be 1")
    _require(M.is_hermitian(), "MUB Gram must be Hermitian")
    return M


# exponent of omega in each entry of the literal 9x9 matrix
_BH9_FIGURE1 = [
    [0, 0, 0, 2, 0, 1, 2, 1, 0],
    [0, 0, 0, 1, 2, 0, 0, 2, 1],
    [0, 0, 0, 0, 1, 2, 1, 0, 2],
    [2, 1, 0, 0, 0, 0, 2, 0, 1],
    [0, 2, 1, 0, 0, 0, 1, 2, 0],
    [1, 0, 2, 0, 0, 0, 0, 1, 2],
    [2, 0, 1, 2, 1, 0, 0, 0, 0],
    [1, 2, 0, 0, 2, 1, 0, 0, 0],
    [0, 1, 2, 1, 0, 2, 0, 0, 0],
]

_OMEGA_POWERS = (ONE, OMEGA, OMEGA2)


def _omega_matrix(exps, symmetry):
    return ExactMatrix([[_OMEGA_POWERS[e % 3] for e in row] for row in exps], symmetry)


def validate_butson3(H):
    n = H.n
    _require(H.entry_set() <= set(_OMEGA_POWERS), "entries must be cube roots of unity")
    _require(_is_multiple_of_identity(H @ H.conj_transpose(), n), "H H* != nI")
    return True


def bh9_figure1():
    H = _omega_matrix(_BH9_FIGURE1, "symmetric")
    validate_butson3(H)
    _require(H.is_symmetric(), "Figure 1 matrix must be symmetric")
    return H


def bh9_exponents():
    return [row[:] for row in _BH9_FIGURE1]


def hermitian_bh9():
    """Entry w^((a-c)(b+d)) for points (a,b), (c,d) of (Z/3)^2 in lexicographic order."""
    pts = [(a, b) for a in range(3) for b in range(3)]
    exps = [[((a - c) * (b + d)) % 3 for (c, d) in pts] for (a, b) in pts]
    H = _omega_matrix(exps, "hermitian")
    validate_butson3(H)
    _require(H.is_hermitian(), "H must be Hermitian")
    from .matrix import charpoly

    cp = charpoly(H)
    _require(list(cp.coeffs) == poly_from_roots({3: 6, -3: 3}), "spectrum must be (x-3)^6 (x+3)^3")
    return H


def poly_from_roots(roots):
    """Integer coefficients (highest first) of prod (x - r)^m."""
    p = [1]
    for root, mult in roots.items():
        for _ in range(mult):
            q = p + [0]
            for i in range(len(p)):
                q[i + 1] -= root * p[i]
            p = q
    return p


def _pauli_tensor(k):
    X = np.array([[0, 1], [1, 0]], dtype=np.int64)
    Y = np.array([[1, 0], [0, -1]], dtype=np.int64)
    T = np.array([[1]], dtype=np.int64)
    for a, b in ((k[0], k[1]), (k[2], k[3]), (k[4], k[5])):
        f = np.linalg.matrix_power(X, a) @ np.linalg.matrix_power(Y, b)
        T = np.kron(T, f)
    return T


def hoggar_vectors():
    """The 64 Gaussian-integer vectors (-1+2i, 1, ..., 1) T_k, k in {0,1}^6 in binary order."""
    fid = np.array([-1 + 2j] + [1] * 7)
    return np.array([fid @ _pauli_tensor(k) for k in itertools.product((0, 1), repeat=6)])


def hoggar_seidel():
    """S = 3(G - I) for the Gram matrix G of Hoggar's 64 lines, kept in Q(i)."""
    X = hoggar_vectors()
    _require(np.allclose(np.sum(np.abs(X) ** 2, axis=1), 12), "x conj(x) must equal 12")
    P = X @ X.conj().T  # x_k . conj(x_l)
    re = np.rint(P.real).astype(np.int64)
    im = np.rint(P.imag).astype(np.int64)
    np.fill_diagonal(re, 0)
    np.fill_diagonal(im, 0)
    _require(np.all(re % 4 == 0) and np.all(im % 4 == 0), "off-diagonal products must be divisible by 4")
    S = _gauss_matrix(re // 4, im // 4, 1, "hermitian")
    _require(S.is_hermitian(), "Hoggar Seidel matrix must be Hermitian")
    off = {S[i, j] for i in range(64) for j in range(64) if i != j}
    _require(off <= {ONE, -ONE, I, -I}, "off-diagonal entries must be +-1, +-i")
    return S


# -- skew-Bush Hadamard search ------------------------------------------------------------------


def _zero_sum_blocks(n):
    rows = [r for r in itertools.product((1, -1), repeat=n) if sum(r) == 0]
    out = []
    for choice in itertools.product(rows, repeat=n):
        B = np.array(choice, dtype=np.int64)
        if not B.sum(axis=0).any():
            out.append(B)
    return out


def validate_skew_bush(M, n):
    H = _int_array(M)
    N = n * n
    _require(H.shape == (N, N), "wrong order")
    _require(np.all(np.abs(H) == 1), "entries must be +-1")
    Jn = _J(n)
    for i in range(n):
        for j in range(n):
            B = H[i * n : (i + 1) * n, j * n : (j + 1) * n]
            if i == j:
                _require(np.array_equal(B, Jn), "diagonal blocks must be J")
            else:
                _require(not (B @ Jn).any() and not (Jn @ B).any(), "off-diagonal blocks need zero sums")
                Bt = H[j * n : (j + 1) * n, i * n : (i + 1) * n]
                _require(np.array_equal(B.T, -Bt), "H_ij^T != -H_ji")
    _require(np.array_equal(H @ H.T, N * _I(N)), "H H^T != n^2 I")
    return True


def skew_bush_search(n=4, budget=10**6):
    """Backtracking search for a skew-Bush type Hadamard matrix of order n^2.

    Only n = 4 is supported; larger orders are loaded from files.
    """
    if n != 4:
        raise InvalidParams("built-in search supports n = 4 only")
    blocks = _zero_sum_blocks(n)
    grams = [tuple((B @ B.T).ravel()) for B in blocks]
    gram_of_t = [tuple((B.T @ B).ravel()) for B in blocks]
    by_gram = {}
    for idx, g in enumerate(grams):
        by_gram.setdefault(g, []).append(idx)
    target = 16 * _I(n) - 4 * _J(n)
    steps = 0

    def completes(*gs):
        rest = target.ravel() - sum(np.array(g) for g in gs)
        return by_gram.get(tuple(rest), [])

    for i12 in range(len(blocks)):
        for i13 in range(len(blocks)):
            for i14 in completes(grams[i12], grams[i13]):
                # block row 2: H21 H21^T = H12^T H12
                for i23 in range(len(blocks)):
                    steps += 1
                    if steps > budget:
                        raise SearchExhausted("skew-Bush search budget exhausted")
                    for i24 in completes(gram_of_t[i12], grams[i23]):
                        B = blocks
                        if (B[i13] @ B[i23].T + B[i14] @ B[i24].T).any():
                            continue
                        for i34 in range(len(blocks)):
                            H = _assemble_bush(n, B[i12], B[i13], B[i14], B[i23], B[i24], B[i34])
                            if np.array_equal(H @ H.T, 16 * _I(16)):
                                M = _int_matrix(H)
                                validate_skew_bush(M, n)
                                return M
    raise SearchExhausted("no skew-Bush matrix found")


def _assemble_bush(n, h12, h13, h14, h23, h24, h34):
    Jn = _J(n)
    up = {(0, 1): h12, (0, 2): h13, (0, 3): h14, (1, 2): h23, (1, 3): h24, (2, 3): h34}
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(Jn)
            elif i < j:
                row.append(up[(i, j)])
            else:
                row.append(-up[(j, i)].T)
        rows.append(row)
    return np.block(rows)


def skew_bush_tournament(H):
    """A = (J - H)/2 for a skew-Bush type Hadamard matrix H."""
    A = (_J(H.n) - _int_array(H)) // 2
    return _int_matrix(A)


# -- dispatch ---------------------------------------------------------------------------------


def construct(spec, **params):
    """Build a validated matrix from a FamilySpec or a family name plus parameters."""
    if isinstance(spec, FamilySpec):
        family, params = spec.family, dict(spec.params)
    else:
        family = spec
    if family not in FAMILIES:
        raise UnknownName(f"unknown family {family!r}")
    p = {k: _maybe_int(v) for k, v in params.items()}
    try:
        if family == "paley_conference":
            return paley_conference(p["q"])
        if family == "paley_tournament":
            return paley_tournament(p["q"])
        if family == "graphical_hadamard":
            return graphical_hadamard(n=p.get("n"), m=p.get("m"))
        if family == "signed_hypercube":
            return signed_hypercube(p["d"])
        if family == "bgw_from_conference":
            return bgw_from_conference(p["q"])
        if family == "bgw_block":
            return bgw_block(W=p.get("W"), q=p.get("q"))
        if family == "hadamard_bordered":
            return hadamard_bordered(v=p.get("v"), H=p.get("H"))
        if family == "srg":
            name = p.pop("name")
            return srg_catalog(name, **p)
        if family == "skew_bush":
            return skew_bush_search(p.get("n", 4))
    except KeyError as exc:
        raise InvalidParams(f"{family} is missing parameter {exc.args[0]!r}") from None
    return {
        "e7_gram": e7_gram,
        "e8_gram": e8_gram,
        "mub_gram": mub_gram,
        "bh9_figure1": bh9_figure1,
        "hermitian_bh9": hermitian_bh9,
        "hoggar_seidel": hoggar_seidel,
    }[family]()


def _maybe_int(v):
    if isinstance(v, str):
        try:
            return int(v)
        except ValueError:
            return v
    return v
