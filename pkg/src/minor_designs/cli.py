"""``minor-designs`` command line.

Every subcommand prints a short human summary on stdout and, with ``--json``,
writes a report that validates against the shipped schema. Failures print a
JSON error object on stderr and exit with the code attached to the error
(2 mismatch, 3 hypotheses, 4 input, 5 internal).
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import constructions as C
from .designs import extract_blocks, five_subset_property, render_parameters, verify_pbibd, verify_regular_pbd, verify_t_design
from .errors import HypothesesNotSatisfied, InvalidParams, MinorDesignsError, VerificationMismatch
from .formats import (
    RunManifest,
    design_report_dict,
    dumps,
    error_dict,
    load_blocks,
    load_matrix,
    prediction_report_dict,
    report_dict,
    save_blocks,
    save_matrix,
    write_json,
)
from .identities import describe, identity_checks
from .minors import MinorEngine
from .predictor import (
    check_des_hypotheses,
    closed_form,
    eta_from_blocks,
    predict_lambda,
    predict_pbibd,
    predict_pbibd_three,
    reconcile,
)
from .reproduce import TABLE_ALIASES, TABLE_PARAMS, TABLES, run_table
from .scalar import parse_scalar, render_scalar
from .schemes import load_scheme, parse_scheme_spec


def _params(pairs):
    out = {}
    for item in pairs or ():
        key, sep, val = item.partition("=")
        if not sep:
            raise InvalidParams(f"--param expects key=value, got {item!r}")
        out[key.strip()] = val.strip()
    return out


def _scheme(text, matrix=None):
    if os.path.exists(text):
        return load_scheme(text)
    return parse_scheme_spec(text, matrix)


def _emit(args, body):
    if getattr(args, "json", None):
        write_json(body, args.json)


# -- subcommands ---------------------------------------------------------------------------------


def cmd_construct(args, man):
    A = C.construct(args.family, **_params(args.param))
    save_matrix(A, args.out)
    print(f"wrote {args.family} matrix of order {A.n} ({A.symmetry}) to {args.out}")
    return report_dict("matrix", {"family": args.family, "order": A.n, "symmetry": A.symmetry}, manifest=man.finish("ok"))


def cmd_spectrum(args, man):
    A = load_matrix(args.input)
    spec = MinorEngine(A).spectrum(args.k, args.workers)
    for val, cnt in spec.to_dict().items():
        print(f"{val}\t{cnt}")
    return report_dict("spectrum", {"k": args.k, "v": A.n, "counts": spec.to_dict()}, manifest=man.finish("ok"))


def cmd_blocks(args, man):
    A = load_matrix(args.input)
    bs = extract_blocks(A, args.k, parse_scalar(args.a), args.workers)
    if args.out:
        save_blocks(bs, args.out)
    print(f"{len(bs)} blocks with {args.k}x{args.k} minor {args.a}")
    params = {"v": A.n, "k": args.k, "a": args.a, "block_count": len(bs)}
    return report_dict("blocks", params, manifest=man.finish("ok"))


def cmd_verify_design(args, man):
    bs = load_blocks(args.blocks)
    rep = verify_t_design(bs, args.t, args.workers)
    _print_report(rep)
    return design_report_dict(rep, man.finish(rep.kind))


def cmd_verify_pbibd(args, man):
    bs = load_blocks(args.blocks)
    A = load_matrix(args.input) if args.input else None
    rep = verify_pbibd(bs, _scheme(args.scheme, A), args.workers)
    _print_report(rep)
    return design_report_dict(rep, man.finish(rep.kind))


def cmd_verify_pbd(args, man):
    bss = [load_blocks(p) for p in args.blocks]
    K = [int(x) for x in args.K.split(",")] if args.K else None
    rep = verify_regular_pbd(bss, K, args.workers)
    _print_report(rep)
    return design_report_dict(rep, man.finish(rep.kind))


def cmd_gs_check(args, man):
    bs = load_blocks(args.blocks)
    ok, witness = five_subset_property(bs, args.workers)
    print("every 5-subset holds 0 or 2 blocks" if ok else f"violated at {witness['subset']} ({witness['count']} blocks)")
    body = report_dict("gs_check", {"v": bs.v, "k": 4, "holds": ok}, witness, manifest=man.finish("ok" if ok else "violated"))
    if not ok:
        _emit(args, body)
        raise VerificationMismatch(f"five-subset property fails at {witness['subset']}")
    return body


def _prediction(args):
    if args.source:
        params = _params(args.param)
        if args.input and args.source == "ex:1des" and "v" not in params:
            params["A"] = load_matrix(args.input)
        return closed_form(args.source, **params), None
    if args.input is None or args.k is None or args.a is None:
        raise InvalidParams("predict needs --in, --k and --a (or --source)")
    A = load_matrix(args.input)
    a = parse_scalar(args.a)
    if args.scheme:
        X = _scheme(args.scheme, A)
        if args.c is not None:
            c = parse_scalar(args.c)
            if args.eta == "blocks":
                eta = eta_from_blocks(A, args.k, c, X, args.workers)
            elif args.eta:
                eta = [parse_scalar(x) for x in args.eta.split(",")]
            else:
                eta = None
            pred = predict_pbibd_three(A, args.k, X, a, c, eta, args.workers)
        else:
            pred = predict_pbibd(A, args.k, X, a, args.workers)
        verify = lambda: verify_pbibd(extract_blocks(A, args.k, a, args.workers), X, args.workers)  # noqa: E731
    else:
        t = 2 if args.t is None else args.t
        pred = predict_lambda(A, args.k, t, a, args.workers)
        verify = lambda: verify_t_design(extract_blocks(A, args.k, a, args.workers), t, args.workers)  # noqa: E731
    return [pred], verify


def cmd_predict(args, man):
    preds, verify = _prediction(args)
    if len(preds) > 1 or verify is None:
        for p in preds:
            print(json.dumps(p.to_dict()))
        if args.reconcile:
            raise InvalidParams("--reconcile needs a matrix prediction, not --source")
        body = report_dict("prediction", None, None, [preds[0].source], man.finish("ok"),
                           {"predictions": [p.to_dict() for p in preds]})
        return body
    (pred,) = preds
    print(json.dumps(pred.to_dict()["expected"]))
    if pred.non_integral:
        print("warning: predicted parameters are not non-negative integers", file=sys.stderr)
    if not args.reconcile:
        return prediction_report_dict(pred, man.finish("ok"))
    rep = verify()
    diffs = reconcile(pred, rep)
    print(f"verified: {render_parameters(rep)}")
    body = prediction_report_dict(pred, man.finish("reconciled" if not diffs else "mismatch"), rep, diffs)
    if diffs:
        _emit(args, body)
        raise VerificationMismatch(f"prediction and brute force differ: {diffs}")
    print("prediction and brute force agree")
    return body


def cmd_check_hypotheses(args, man):
    A = load_matrix(args.input)
    status = check_des_hypotheses(A, args.k, args.t, args.workers)
    d = status.to_dict()
    d["constants"] = [render_scalar(c) if c is not None else None for c in status.constants]
    print(json.dumps(d))
    body = report_dict("hypotheses", dict(d, k=args.k, t=args.t), d.get("witness"),
                       ["thm:des"], man.finish("satisfied" if status.satisfied else "violated"))
    if not status.satisfied:
        _emit(args, body)
        raise HypothesesNotSatisfied("; ".join(status.reasons))
    return body


def cmd_identities(args, man):
    A = load_matrix(args.input)
    rep = identity_checks(A, max_alpha=args.max_alpha, max_k=args.max_k, workers=args.workers)
    print(describe(rep))
    return report_dict("identities", rep.to_dict(), manifest=man.finish("ok"))


def cmd_reproduce(args, man):
    tags = list(TABLES) if args.table == ["all"] else [TABLE_ALIASES.get(t, t) for t in args.table]
    rows = []
    for tag in tags:
        key = TABLE_PARAMS.get(tag)
        value = getattr(args, key, None) if key else None
        if key == "n" and value is not None and tag == "cor:gdd":
            value = value[0]
        rows += run_table(tag, args.workers, **({key: value} if value is not None else {}))
    for row in rows:
        print(row.line())
    failed = [r for r in rows if r.status == "fail"]
    counts = {s: sum(r.status == s for r in rows) for s in ("pass", "fail", "skipped", "erratum")}
    print(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skipped']} skipped, "
          f"{counts['erratum']} stated values contradicted by exhaustive counts")
    body = report_dict("reproduction", {"tables": tags, "counts": counts}, None, tags,
                       man.finish("ok" if not failed else "mismatch"), {"rows": [r.to_dict() for r in rows]})
    if failed:
        _emit(args, body)
        raise VerificationMismatch(f"{len(failed)} rows disagree")
    return body


def _print_report(rep):
    print(render_parameters(rep) if rep.ok else f"not a design: {json.dumps(rep.witness)}")
    if rep.degenerate:
        print(f"degenerate: {rep.degenerate}")


# -- parser -----------------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 4), not argparse's default 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(dumps({"error": "UsageError", "message": message, "exit_code": 4}))
        sys.exit(4)


def build_parser():
    p = _Parser(prog="minor-designs", description="Designs from principal minors of structured matrices.")
    p.add_argument("--workers", type=int, default=None, help="worker threads (default: MD_THREADS or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", help="write a JSON report here")
        return sp

    sp = add("construct", cmd_construct, "build and validate a matrix family")
    sp.add_argument("--family", required=True, choices=C.FAMILIES)
    sp.add_argument("--param", action="append", metavar="KEY=VALUE")
    sp.add_argument("--out", required=True)

    sp = add("spectrum", cmd_spectrum, "count k x k principal minor values")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = add("blocks", cmd_blocks, "extract the k-subsets with a given minor")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--out")

    sp = add("verify-design", cmd_verify_design, "exhaustive t-design check")
    sp.add_argument("--blocks", required=True)
    sp.add_argument("--t", type=int, required=True)

    sp = add("verify-pbibd", cmd_verify_pbibd, "PBIBD check against an association scheme")
    sp.add_argument("--blocks", required=True)
    sp.add_argument("--scheme", required=True, help="kind[:arg] or a scheme JSON file")
    sp.add_argument("--in", dest="input", help="matrix for schemes derived from it")

    sp = add("verify-pbd", cmd_verify_pbd, "regular pairwise balanced design check on a union")
    sp.add_argument("--blocks", action="append", required=True)
    sp.add_argument("--K", help="allowed block sizes, comma separated")

    sp = add("predict", cmd_predict, "predict design parameters from coefficients")
    sp.add_argument("--in", dest="input")
    sp.add_argument("--k", type=int)
    sp.add_argument("--a")
    sp.add_argument("--t", type=int)
    sp.add_argument("--scheme")
    sp.add_argument("--c", help="third minor value (three-minor prediction)")
    sp.add_argument("--eta", help="lambda-vector of the c-blocks, comma separated, or 'blocks'")
    sp.add_argument("--source", help="evaluate a registered closed form instead")
    sp.add_argument("--param", action="append", metavar="KEY=VALUE")
    sp.add_argument("--reconcile", action="store_true")

    sp = add("check-hypotheses", cmd_check_hypotheses, "two minor values and coefficient constancy")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)

    sp = add("gs-check", cmd_gs_check, "every 5-subset contains 0 or 2 blocks")
    sp.add_argument("--blocks", required=True)

    sp = add("identities", cmd_identities, "run the internal-consistency identities")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--max-alpha", type=int, default=2)
    sp.add_argument("--max-k", type=int, default=4)

    sp = add("reproduce", cmd_reproduce, "recompute a published table")
    sp.add_argument("--table", action="append", required=True, choices=list(TABLES) + list(TABLE_ALIASES) + ["all"])
    for key in sorted(set(TABLE_PARAMS.values())):
        sp.add_argument(f"--{key}", type=int, nargs="+")
    return p


def _inputs(args):
    paths = []
    for attr in ("input", "blocks"):
        val = getattr(args, attr, None)
        if isinstance(val, list):
            paths += val
        elif val:
            paths.append(val)
    return [p for p in paths if os.path.exists(p)]


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    arguments = {k: v for k, v in vars(args).items() if k not in ("fn", "json")}
    man = None
    try:
        man = RunManifest.start(args.command, arguments, _inputs(args))
        body = args.fn(args, man)
        _emit(args, body)
        return 0
    except MinorDesignsError as exc:
        err = error_dict(exc, man.finish("error") if man else None)
        sys.stderr.write(dumps(err))
        return exc.exit_code
    except (OSError, ValueError, KeyError) as exc:
        err = error_dict(exc, man.finish("error") if man else None)
        err["exit_code"] = 4
        sys.stderr.write(dumps(err))
        return 4
    except Exception as exc:  # anything else is a bug; report it like an identity failure
        err = error_dict(exc, man.finish("error") if man else None)
        err["exit_code"] = 5
        sys.stderr.write(dumps(err))
        return 5


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
