"""Symmetric association schemes: representation, axiom checks and a catalog."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParams, UnknownName, ValidatorFailed, ValueNotCovered
from .matrix import ExactMatrix
from .scalar import Scalar, parse_scalar, render_scalar


@dataclass
class SchemeReport:
    ok: bool
    violations: list = field(default_factory=list)


@dataclass(frozen=True, eq=False)
class AssociationScheme:
    """Ordered relation partition A_0 = I, A_1, ..., A_d of [v] x [v].

    ``classes`` is a (v, v) integer array with ``classes[x, y] = i`` iff
    (x, y) lies in R_i, so classification is a table lookup.
    """

    classes: np.ndarray
    labels: tuple = ()
    name: str = ""

    @property
    def v(self):
        return self.classes.shape[0]

    @property
    def d(self):
        return int(self.classes.max()) if self.v > 1 else 0

    def relation(self, i):
        return (self.classes == i).astype(np.int64)

    def relations(self):
        return [self.relation(i) for i in range(self.d + 1)]

    def valencies(self):
        return tuple(int((self.classes[0] == i).sum()) for i in range(self.d + 1))

    def class_sizes(self):
        """Number of unordered pairs in each class 1..d."""
        iu = np.triu_indices(self.v, 1)
        vals = self.classes[iu]
        return tuple(int((vals == i).sum()) for i in range(1, self.d + 1))

    def label(self, j):
        if self.labels and 1 <= j <= len(self.labels):
            return self.labels[j - 1]
        return f"R{j}"

    def to_dict(self):
        return {
            "name": self.name,
            "v": self.v,
            "d": self.d,
            "labels": [self.label(j) for j in range(1, self.d + 1)],
            "classes": self.classes.tolist(),
        }

    def __eq__(self, other):
        return isinstance(other, AssociationScheme) and np.array_equal(self.classes, other.classes)

    __hash__ = None


def classify_pair(scheme, x, y):
    """Class j >= 1 of the unordered pair {x, y} (0-based points)."""
    if x == y:
        raise InvalidParams("classify_pair needs distinct points")
    return int(scheme.classes[x, y])


def validate_scheme(relations):
    """Check the four scheme axioms; violations are listed, never raised.

    ``relations`` is either an AssociationScheme or a list of 0/1 matrices A_0..A_d.
    """
    if isinstance(relations, AssociationScheme):
        mats = relations.relations()
    else:
        mats = [np.asarray(_as_int_array(A), dtype=np.int64) for A in relations]
    bad = []
    if not mats:
        return SchemeReport(False, ["no relations"])
    v = mats[0].shape[0]
    if any(A.shape != (v, v) for A in mats):
        return SchemeReport(False, ["relations have different orders"])
    if any(not set(np.unique(A).tolist()) <= {0, 1} for A in mats):
        bad.append("relations must be 0/1 matrices")
    if not np.array_equal(mats[0], np.eye(v, dtype=np.int64)):
        bad.append("A_0 is not the identity")
    total = sum(mats)
    if not np.array_equal(total, np.ones((v, v), dtype=np.int64)):
        bad.append("relations are not a partition of all pairs (sum != J)")
    for i, A in enumerate(mats[1:], start=1):
        if not np.array_equal(A, A.T):
            bad.append(f"A_{i} is not symmetric")
        if not A.any():
            bad.append(f"A_{i} is empty")
    if bad:
        return SchemeReport(False, bad)
    cls = sum(i * A for i, A in enumerate(mats))
    for i, j in itertools.combinations_with_replacement(range(1, len(mats)), 2):
        P = mats[i] @ mats[j]
        for r in range(len(mats)):
            vals = np.unique(P[cls == r])
            if len(vals) > 1:
                x, y = np.argwhere((cls == r) & (P != vals[0]))[0]
                bad.append(
                    f"A_{i} A_{j} is not constant on R_{r} (entry ({x + 1},{y + 1}) = {P[x, y]}, "
                    f"elsewhere {vals[0]})"
                )
                break
    return SchemeReport(not bad, bad)


def _as_int_array(A):
    if isinstance(A, ExactMatrix):
        return [[int(x.to_fraction()) for x in row] for row in A.entries]
    return A


def scheme_from_relations(mats, labels=(), name="", check=True):
    mats = [np.asarray(_as_int_array(A), dtype=np.int64) for A in mats]
    if check:
        rep = validate_scheme(mats)
        if not rep.ok:
            raise ValidatorFailed(f"{name or 'scheme'}: " + "; ".join(rep.violations))
    cls = sum(i * A for i, A in enumerate(mats))
    return AssociationScheme(np.asarray(cls, dtype=np.int64), tuple(labels), name)


def scheme_from_classes(classes, labels=(), name="", check=True):
    classes = np.asarray(classes, dtype=np.int64)
    d = int(classes.max())
    return scheme_from_relations([(classes == i).astype(np.int64) for i in range(d + 1)], labels, name, check)


# -- catalog -----------------------------------------------------------------------------


def hamming(d):
    v = 2**d
    idx = np.arange(v)
    x = idx[:, None] ^ idx[None, :]
    dist = np.zeros_like(x)
    for b in range(d):
        dist += (x >> b) & 1
    return scheme_from_classes(dist, [f"distance {i}" for i in range(1, d + 1)], f"hamming({d})")


def srg_2class(A, name="srg"):
    A = np.asarray(_as_int_array(A), dtype=np.int64)
    v = A.shape[0]
    I = np.eye(v, dtype=np.int64)
    return scheme_from_relations([I, A, np.ones_like(A) - I - A], ["adjacent", "non-adjacent"], name)


def group_divisible(n, groups=None):
    """n groups of size n by default (points x, y in class 1 iff floor(x/n) agree)."""
    groups = n if groups is None else groups
    v = n * groups
    g = np.arange(v) // n
    same = (g[:, None] == g[None, :]).astype(np.int64)
    cls = np.where(same == 1, 1, 2)
    np.fill_diagonal(cls, 0)
    return scheme_from_classes(cls, ["same group", "different group"], f"group_divisible({n})")


def bgw_3class(W):
    """The 3-class scheme on 2v points attached to a BGW support matrix N."""
    Wa = np.asarray(_as_int_array(W), dtype=np.int64)
    N = np.abs(Wa)
    v = N.shape[0]
    Z = np.zeros((v, v), dtype=np.int64)
    Jv = np.ones((v, v), dtype=np.int64)
    Iv = np.eye(v, dtype=np.int64)
    A1 = np.block([[Z, N], [N.T, Z]])
    A2 = np.kron(np.eye(2, dtype=np.int64), Jv - Iv)
    A3 = np.block([[Z, Jv - N], [Jv - N.T, Z]])
    return scheme_from_relations(
        [np.eye(2 * v, dtype=np.int64), A1, A2, A3],
        ["support", "same half", "across, off support"],
        "bgw_3class",
    )


def hadamard_3class(v):
    """Two groups of size v: A_1 = I_2 x (J - I), A_2 = (J_2 - I_2) x J."""
    Iv = np.eye(v, dtype=np.int64)
    Jv = np.ones((v, v), dtype=np.int64)
    I2 = np.eye(2, dtype=np.int64)
    J2 = np.ones((2, 2), dtype=np.int64)
    return scheme_from_relations(
        [np.eye(2 * v, dtype=np.int64), np.kron(I2, Jv - Iv), np.kron(J2 - I2, Jv)],
        ["same half", "across halves"],
        f"hadamard_3class({v})",
    )


def gram_value(G, value_lists, labels=None, name="gram_value"):
    """Class j collects the off-diagonal pairs whose entry lies in value_lists[j-1]."""
    lookup = {}
    for j, vals in enumerate(value_lists, start=1):
        for val in vals:
            lookup[Scalar.coerce(val)] = j
    n = G.n
    cls = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        row = G.entries[x]
        for y in range(n):
            if x == y:
                continue
            j = lookup.get(row[y])
            if j is None:
                raise ValueNotCovered(f"Gram entry {render_scalar(row[y])} at ({x + 1},{y + 1}) matches no class")
            cls[x, y] = j
    if labels is None:
        labels = [",".join(render_scalar(Scalar.coerce(v)) for v in vals) for vals in value_lists]
    return scheme_from_classes(cls, labels, name)


ROOT_CLASSES = [[1], [0], [-1], [-2]]


def root_system_scheme(G, name):
    return gram_value(G, ROOT_CLASSES, ["<x,y>=1", "<x,y>=0", "<x,y>=-1", "<x,y>=-2"], name)


def mub_scheme(G):
    half = Scalar(1) / 2
    from .scalar import I

    lists = [[half], [0], [-half], [-1], [I, -I], [I / 2, -I / 2]]
    return gram_value(G, lists, ["1/2", "0", "-1/2", "-1", "i,-i", "i/2,-i/2"], "mub")


def bh9_scheme(H=None):
    """A_4 = I_3 x (J_3 - I_3); A_1, A_2, A_3 = entries 1, w, w2 elsewhere off the diagonal."""
    from .constructions import bh9_exponents

    exps = np.array(bh9_exponents(), dtype=np.int64)
    block = np.arange(9) // 3
    same = block[:, None] == block[None, :]
    cls = np.where(same, 4, exps + 1)
    np.fill_diagonal(cls, 0)
    return scheme_from_classes(cls, ["1", "w", "w2", "same block"], "bh9")


SCHEME_KINDS = ("hamming", "srg_2class", "group_divisible", "bgw_3class", "hadamard_3class", "gram_value", "e7", "e8", "mub", "bh9")


def scheme_catalog(kind, *args, **params):
    """Build a named scheme: see SCHEME_KINDS."""
    if kind == "hamming":
        return hamming(int(params.get("d", args[0] if args else 0)))
    if kind == "group_divisible":
        return group_divisible(int(params.get("n", args[0] if args else 0)))
    if kind == "hadamard_3class":
        return hadamard_3class(int(params.get("v", args[0] if args else 0)))
    if kind == "srg_2class":
        return srg_2class(params.get("A", args[0] if args else None))
    if kind == "bgw_3class":
        return bgw_3class(params.get("W", args[0] if args else None))
    if kind == "gram_value":
        G = params.get("G", args[0] if args else None)
        lists = params.get("classes", args[1] if len(args) > 1 else None)
        return gram_value(G, lists)
    if kind in ("e7", "e8"):
        from . import constructions

        G = params.get("G") or (constructions.e7_gram(check_minors=False) if kind == "e7" else constructions.e8_gram())
        return root_system_scheme(G, kind)
    if kind == "mub":
        from .constructions import mub_gram

        return mub_scheme(params.get("G") or mub_gram())
    if kind == "bh9":
        return bh9_scheme()
    raise UnknownName(f"unknown scheme kind {kind!r}")


def parse_scheme_spec(text, matrix=None):
    """Parse a CLI scheme argument like ``hamming:3`` or ``srg_2class`` (uses the matrix)."""
    kind, _, arg = text.partition(":")
    kind = kind.strip()
    if kind in ("hamming", "group_divisible", "hadamard_3class"):
        return scheme_catalog(kind, int(arg))
    if kind == "bgw_3class":
        if arg:
            from .constructions import bgw_from_conference

            return bgw_3class(bgw_from_conference(int(arg)))
        if matrix is None:
            raise InvalidParams("bgw_3class needs q or an input matrix")
        v = matrix.n // 2
        return bgw_3class([row[v:] for row in _as_int_array(matrix)[:v]])
    if kind == "srg_2class":
        if arg:
            from .constructions import srg_catalog

            return srg_2class(srg_catalog(arg), arg)
        if matrix is None:
            raise InvalidParams("srg_2class needs a graph name or an input matrix")
        return srg_2class(matrix)
    if kind in ("e7", "e8", "mub", "bh9"):
        return scheme_catalog(kind)
    raise UnknownName(f"unknown scheme kind {kind!r}")


# -- persistence -----------------------------------------------------------------------------


def save_scheme(scheme, path):
    """Labeled relation lists: for each class, its unordered pairs (1-based)."""
    body = {"name": scheme.name, "v": scheme.v, "classes": []}
    for j in range(1, scheme.d + 1):
        iu = np.argwhere(np.triu(scheme.classes == j, 1))
        body["classes"].append({"label": scheme.label(j), "pairs": [[int(a) + 1, int(b) + 1] for a, b in iu]})
    with open(path, "w") as fh:
        json.dump(body, fh, indent=1)
        fh.write("\n")


def load_scheme(path):
    with open(path) as fh:
        body = json.load(fh)
    v = int(body["v"])
    cls = np.zeros((v, v), dtype=np.int64)
    labels = []
    for j, entry in enumerate(body["classes"], start=1):
        labels.append(entry.get("label", f"R{j}"))
        for a, b in entry["pairs"]:
            cls[a - 1, b - 1] = j
            cls[b - 1, a - 1] = j
    return scheme_from_classes(cls, labels, body.get("name", ""))


def parse_value_list(text):
    """``"1;0;-1;-2"`` or ``"i,-i;i/2,-i/2"`` -> nested Scalar lists."""
    return [[parse_scalar(tok) for tok in grp.split(",")] for grp in text.split(";")]
