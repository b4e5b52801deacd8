"""File formats: matrices, block sets and JSON reports.

Matrix files::

    minor-designs matrix v=<n> symmetry=<tag>
    <n rows of n scalar tokens>

Block files::

    v=<n> k=<k|mixed>
    <one block per line, sorted 1-based indices>

Reports are JSON objects with the keys listed in REPORT_KEYS; every one embeds
a RunManifest. Exact values are written as strings so nothing passes through
floating point.
"""
from __future__ import annotations

import hashlib
import json
import re
import time
from dataclasses import dataclass, field
from importlib import resources

from .designs import BlockSet, DesignReport
from .errors import ParseError
from .matrix import SYMMETRIES, ExactMatrix
from .scalar import Scalar, parse_scalar, render_scalar

MATRIX_MAGIC = "minor-designs matrix"
REPORT_KEYS = ("manifest", "kind", "parameters", "lambda", "block_count", "replication", "witness", "citations")

_MATRIX_HEADER = re.compile(r"^minor-designs matrix\s+v=(\d+)\s+symmetry=(\S+)\s*$")
_BLOCK_HEADER = re.compile(r"^v=(\d+)\s+k=(\d+|mixed)\s*$")


def _version():
    from . import __version__

    return __version__


# -- matrices ----------------------------------------------------------------------------------


def format_matrix(A):
    lines = [f"{MATRIX_MAGIC} v={A.n} symmetry={A.symmetry}"]
    for row in A.entries:
        lines.append(" ".join(render_scalar(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text):
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty matrix file")
    m = _MATRIX_HEADER.match(lines[0].strip())
    if not m:
        raise ParseError(f"bad matrix header: {lines[0]!r}")
    n, sym = int(m.group(1)), m.group(2)
    if sym not in SYMMETRIES:
        raise ParseError(f"unknown symmetry tag {sym!r}")
    rows = lines[1:]
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}")
    entries = []
    for i, ln in enumerate(rows, start=2):
        toks = ln.split()
        if len(toks) != n:
            raise ParseError(f"line {i}: expected {n} entries, found {len(toks)}")
        entries.append([parse_scalar(t) for t in toks])
    A = ExactMatrix(entries, sym)
    A.validate_symmetry()
    return A


def save_matrix(A, path):
    with open(path, "w") as fh:
        fh.write(format_matrix(A))


def load_matrix(path):
    with open(path) as fh:
        return parse_matrix(fh.read())


# -- block sets ---------------------------------------------------------------------------------


def format_blocks(bs):
    k = bs.uniform_k
    if k is None and not bs.groups:
        k = 0
    head = f"v={bs.v} k={k if k is not None else 'mixed'}"
    lines = [head] + [" ".join(str(i + 1) for i in blk) for blk in bs.blocks()]
    return "\n".join(lines) + "\n"


def parse_blocks(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty block file")
    m = _BLOCK_HEADER.match(lines[0])
    if not m:
        raise ParseError(f"bad block header: {lines[0]!r}")
    v = int(m.group(1))
    k = None if m.group(2) == "mixed" else int(m.group(2))
    blocks = []
    for i, ln in enumerate(lines[1:], start=2):
        try:
            pts = [int(x) for x in ln.split()]
        except ValueError:
            raise ParseError(f"line {i}: non-integer point") from None
        if any(p < 1 or p > v for p in pts):
            raise ParseError(f"line {i}: point outside 1..{v}")
        if len(set(pts)) != len(pts):
            raise ParseError(f"line {i}: repeated point")
        if k is not None and len(pts) != k:
            raise ParseError(f"line {i}: block of size {len(pts)} in a k={k} file")
        blocks.append([p - 1 for p in pts])
    bs = BlockSet.from_blocks(v, blocks)
    if not blocks and k:
        bs = BlockSet.uniform(v, k, [])
    return bs


def save_blocks(bs, path):
    with open(path, "w") as fh:
        fh.write(format_blocks(bs))


def load_blocks(path):
    with open(path) as fh:
        return parse_blocks(fh.read())


# -- manifest and reports ------------------------------------------------------------------------


def sha256_file(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class RunManifest:
    command: str
    arguments: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)
    version: str = ""
    timing: dict = field(default_factory=dict)
    outcome: str = ""
    _start: float = field(default=0.0, repr=False)

    @classmethod
    def start(cls, command, arguments=None, input_paths=()):
        inputs = {str(p): sha256_file(p) for p in input_paths}
        return cls(command, dict(arguments or {}), inputs, _version(), {}, "", time.perf_counter())

    def finish(self, outcome):
        self.outcome = outcome
        self.timing = {"seconds": round(time.perf_counter() - self._start, 3)}
        return self

    def to_dict(self):
        return {
            "command": self.command,
            "arguments": _plain(self.arguments),
            "inputs": dict(sorted(self.inputs.items())),
            "version": self.version,
            "timing": dict(self.timing),
            "outcome": self.outcome,
        }


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, Scalar):
        return render_scalar(x)
    if x is None or isinstance(x, (bool, int, str)):
        return x
    return str(x)


def _exact_str(x):
    if x is None:
        return None
    if isinstance(x, Scalar):
        return render_scalar(x)
    return str(x)


def _lambda_field(params, labels=None):
    if "lambda_vector" in params:
        labels = params.get("class_labels") or labels or [f"R{j}" for j in range(1, len(params["lambda_vector"]) + 1)]
        return [{"class": lab, "value": _exact_str(val)} for lab, val in zip(labels, params["lambda_vector"])]
    if "lambda" in params:
        return _exact_str(params["lambda"])
    return None


def report_dict(kind, parameters=None, witness=None, citations=(), manifest=None, extra=None):
    params = _plain(parameters) if parameters is not None else None
    p = parameters or {}
    body = {
        "manifest": manifest.to_dict() if manifest is not None else None,
        "kind": kind,
        "parameters": params,
        "lambda": _lambda_field(p),
        "block_count": _exact_str(p.get("block_count")),
        "replication": _exact_str(p.get("replication")),
        "witness": _plain(witness),
        "citations": list(citations),
    }
    if extra:
        body.update(_plain(extra))
    return body


def design_report_dict(report, manifest=None, citations=()):
    """JSON body for a DesignReport."""
    extra = {"degenerate": report.degenerate} if report.degenerate else None
    params = report.parameters if report.kind != "not_a_design" else None
    return report_dict(report.kind, params, report.witness, citations or report.citations, manifest, extra)


def prediction_report_dict(pred, manifest=None, verified=None, diffs=None):
    d = pred.to_dict()
    params = d.get("expected")
    extra = {"prediction": d}
    if verified is not None:
        extra["verified"] = design_report_dict(verified)
        extra["verified"].pop("manifest")
        extra["reconciled"] = not diffs
        extra["differences"] = [list(x) for x in (diffs or [])]
    return report_dict("prediction", params, None, [pred.source], manifest, extra)


def error_dict(exc, manifest=None):
    body = exc.to_dict() if hasattr(exc, "to_dict") else {"error": type(exc).__name__, "message": str(exc)}
    body["exit_code"] = getattr(exc, "exit_code", 4)
    if manifest is not None:
        body["manifest"] = manifest.to_dict()
    return body


def dumps(body):
    return json.dumps(body, indent=2, sort_keys=False) + "\n"


def write_json(body, path):
    with open(path, "w") as fh:
        fh.write(dumps(body))


def stable_body(body):
    """The report without its timing, for rerun comparisons."""
    out = json.loads(json.dumps(body))
    if out.get("manifest"):
        out["manifest"].pop("timing", None)
    return out


def report_schema():
    text = resources.files("minor_designs").joinpath("data/report.schema.json").read_text()
    return json.loads(text)


__all__ = [
    "DesignReport",
    "RunManifest",
    "design_report_dict",
    "error_dict",
    "format_blocks",
    "format_matrix",
    "load_blocks",
    "load_matrix",
    "parse_blocks",
    "parse_matrix",
    "prediction_report_dict",
    "report_dict",
    "report_schema",
    "save_blocks",
    "save_matrix",
    "stable_body",
    "write_json",
]
