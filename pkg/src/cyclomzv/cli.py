"""Command-line front end: ``cyclomzv <subcommand> [flags]``.

Exit codes: 0 success, 1 a check failed (or a computation did not
converge), 2 usage or input error.  ``--json`` switches stdout to
machine-readable output carrying ``"schema": 1``.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import checks, dims, lie, seriesfile
from .alphabet import Dihedral, WordError, format_word, is_convergent, words_upto
from .ihara import (
    circ, circ_inverse, dihedral, exp_ihara, ihara_bracket, special_derivation, twist_auto,
)
from .polylog import ConvergenceError, Embedding, InconsistentInputError, PrecisionCfg, dch
from .relations import InsufficientPrecisionError, cross_weight_scan, weight_scan
from .series import Series, SeriesError

SCHEMA = 1
DEFAULT_WEIGHT = 5
MAX_WEIGHT = 8
# convergent coefficients one dch run may evaluate (a few minutes at the defaults)
BUDGET = 600


class UsageError(ValueError):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        out = {"schema": SCHEMA}
        out.update(payload)
        text = json.dumps(out, indent=2, sort_keys=False) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _series_payload(x: Series) -> dict:
    terms = [[seriesfile.word_text(w), seriesfile.coeff_text(x[w], x.ring)]
             for w in sorted(x.support(), key=lambda u: (len(u), u))]
    return {"N": x.level, "W": x.trunc, "ring": str(x.ring), "terms": terms}


def _weight(args) -> int:
    w = DEFAULT_WEIGHT if args.weight is None else args.weight
    if w < 0:
        raise UsageError("--weight must be >= 0")
    return w


def _check_budget(N: int, W: int) -> None:
    if W > MAX_WEIGHT:
        raise UsageError(f"weight {W} is beyond the supported maximum {MAX_WEIGHT}")
    count = sum(1 for w in words_upto(N, W) if w and is_convergent(w))
    if count > BUDGET:
        raise UsageError(
            f"N={N}, W={W} needs {count} nested sums, over the budget of {BUDGET}; "
            f"lower --weight")


# -- subcommands ---------------------------------------------------------------

def cmd_dch(args) -> int:
    W = _weight(args)
    _check_budget(args.N, W)
    cfg = PrecisionCfg.for_weight(W, args.precision)
    d = dch(args.N, W, Embedding(args.N, args.embedding), cfg, args.threads)
    payload = _series_payload(d)
    payload["embedding"] = args.embedding
    _emit(args, payload, seriesfile.dumps(d))
    return 0


def _inputs(args, count: int) -> List[Series]:
    if len(args.inputs) != count:
        raise UsageError(f"--op {args.op} takes {count} series file(s), got {len(args.inputs)}")
    return [seriesfile.read(p) for p in args.inputs]


def cmd_ihara(args) -> int:
    op = args.op
    if op in ("bracket", "circ", "twist", "derive"):
        a, b = _inputs(args, 2)
        fn = {"bracket": lambda: ihara_bracket(a, b, check=True),
              "circ": lambda: circ(a, b),
              "twist": lambda: twist_auto(a, b),
              "derive": lambda: special_derivation(a, b)}[op]
        res = fn()
    else:
        (a,) = _inputs(args, 1)
        if op == "exp":
            res = exp_ihara(a)
        elif op == "inverse":
            res = circ_inverse(a)
        else:
            res = dihedral(Dihedral(a.level, args.flip, args.rot), a)
    _emit(args, _series_payload(res), seriesfile.dumps(res))
    return 0


def cmd_dims(args) -> int:
    maxw = args.max_weight
    if maxw < 0:
        raise UsageError("--max-weight must be >= 0")
    table = dims.bound_table(args.N, maxw)
    witt = dims.lie_v_dims(args.N, maxw)
    rows = []
    for n in range(maxw + 1):
        row = {"n": n, "D_n_proof": table.coeffs[n]}
        if args.printed:
            row["D_n_printed"] = table.other[n]
        row["witt_dim"] = witt[n]
        rows.append(row)
    payload = {"N": args.N, "nu": table.nu, "phi": table.phi, "t0_degree": table.t0_degree,
               "D_proof": table.coeffs, "rows": rows,
               "discrepancy": table.discrepancy}
    if args.printed:
        payload["D_printed"] = table.other
    head = "n  D_n_proof" + ("  D_n_printed" if args.printed else "") + "  witt_dim"
    lines = [f"N={args.N}", head]
    for r in rows:
        lines.append(f"{r['n']:<2} {r['D_n_proof']:>10}"
                     + (f" {r['D_n_printed']:>12}" if args.printed else "")
                     + f" {r['witt_dim']:>9}")
    if table.discrepancy:
        lines.append("note: printed closed form and proof-derived product disagree")
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


def cmd_relations(args) -> int:
    W = _weight(args)
    if W < 1:
        raise UsageError("--weight must be >= 1")
    _check_budget(args.N, W)
    sigma = Embedding(args.N, args.embedding)
    d = dch(args.N, W, sigma, PrecisionCfg.for_digits(args.digits), args.threads)
    hi = dch(args.N, W, sigma, PrecisionCfg.for_digits(int(1.5 * args.digits)), args.threads)
    report = weight_scan(d, W, dims.bound_table(args.N, W), args.digits, verify=hi,
                         coeff_bound=args.coeff_bound)
    payload = {"N": args.N, "digits": args.digits}
    payload.update(report.as_dict())
    lines = [f"N={args.N} weight={W}: estimated rank {report.estimated_rank} "
             f"(bound D_n = {report.bound_D_n}, within bound: {report.within_bound})"]
    for rel in report.relations:
        if len(rel.words) > 1:
            lines.append("  " + " ".join(f"{c:+d}*c({format_word(w)})"
                                         for c, w in zip(rel.coeffs, rel.words)) + " = 0")
    if args.cross:
        reps = [weight_scan(d, w, None, args.digits, verify=hi) for w in range(2, W + 1)]
        cross = cross_weight_scan(d, reps, args.digits, verify=hi)
        payload["cross_weight_relation"] = None if cross is None else cross.as_dict()
        lines.append(f"cross-weight diagnostic: {'none found' if cross is None else 'FOUND'}")
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


def cmd_check(args) -> int:
    W = _weight(args)
    if args.suite in ("dch", "all"):
        _check_budget(args.N, W)
    results = checks.run_suite(args.suite, args.N, W, seed=args.seed,
                               precision=args.precision, embedding=args.embedding,
                               threads=args.threads)
    ok = all(r.passed for r in results)
    payload = {"suite": args.suite, "N": args.N, "W": W, "seed": args.seed,
               "results": [r.as_dict() for r in results], "pass": ok}
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.test}  residual={r.residual:.3g} "
             f"tol={r.tolerance:.3g}" for r in results]
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_lyndon(args) -> int:
    if args.inputs:
        if len(args.inputs) != 1:
            raise UsageError("lyndon converts one series file at a time")
        x = seriesfile.read(args.inputs[0])
        coords = lie.to_lyndon_coords(x)
        text = seriesfile.dumps_lyndon(coords, x.level, x.trunc)
        payload = {"N": x.level, "W": x.trunc, "basis": "lyndon",
                   "coords": [[seriesfile.word_text(w), seriesfile.coeff_text(c, x.ring)]
                              for w, c in sorted(coords.items(), key=lambda t: (len(t[0]), t[0]))]}
        _emit(args, payload, text)
        return 0
    W = _weight(args)
    if W < 1:
        raise UsageError("--weight must be >= 1")
    ws = lie.lyndon_words(args.N, W)
    payload = {"N": args.N, "weight": W, "count": len(ws), "witt_dim": lie.witt_dim(args.N + 1, W),
               "words": [format_word(w) for w in ws]}
    text = "\n".join(format_word(w) for w in ws) + "\n"
    _emit(args, payload, text)
    return 0


# -- parser ------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--N", type=int, default=1, help="level N >= 1")
    p.add_argument("--weight", type=int, default=None, help=f"truncation weight (default {DEFAULT_WEIGHT})")
    p.add_argument("--precision", type=int, default=None,
                   help="working precision in bits (default: $CYCLOMZV_PRECISION or 192)")
    p.add_argument("--embedding", type=int, default=1, help="k in zeta -> exp(2 pi i k / N)")
    p.add_argument("--out", default=None, help="write output here instead of stdout")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    p.add_argument("--json", action="store_true", help="JSON output")
    p.add_argument("--threads", type=int, default=1, help="worker processes for nested sums")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="cyclomzv",
                                     description="Cyclotomic multiple zeta values and the Ihara bracket")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dch", parents=[common], help="regularized generating series dch")
    p.set_defaults(func=cmd_dch)

    p = sub.add_parser("ihara", parents=[common], help="operations on series files")
    p.add_argument("inputs", nargs="*", help="one or two series files")
    p.add_argument("--op", required=True,
                   choices=["bracket", "circ", "exp", "twist", "derive", "dihedral", "inverse"])
    p.add_argument("--flip", action="store_true", help="dihedral: include the flip z -> 1/z")
    p.add_argument("--rot", type=int, default=0, help="dihedral: rotation exponent")
    p.set_defaults(func=cmd_ihara)

    p = sub.add_parser("dims", parents=[common], help="dimension bounds D_n")
    p.add_argument("--max-weight", type=int, default=12)
    p.add_argument("--printed", action="store_true", help="also list the printed closed form")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("relations", parents=[common], help="integer relations at one weight")
    p.add_argument("--digits", type=int, default=40)
    p.add_argument("--coeff-bound", type=int, default=10 ** 6)
    p.add_argument("--cross", action="store_true", help="also run the cross-weight diagnostic")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("check", parents=[common], help="property and golden-value suites")
    p.add_argument("--suite", default="all", choices=list(checks.SUITES) + ["all"])
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("lyndon", parents=[common], help="Lyndon words or Lyndon coordinates")
    p.add_argument("inputs", nargs="*", help="optional series file to convert")
    p.set_defaults(func=cmd_lyndon)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        if args.N < 1:
            raise UsageError("--N must be >= 1")
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        return args.func(args)
    except (ConvergenceError, InconsistentInputError) as e:
        print(f"cyclomzv: {e}", file=sys.stderr)
        return 1
    except (UsageError, WordError, SeriesError, InsufficientPrecisionError,
            seriesfile.SeriesFileError, ValueError, OSError) as e:
        print(f"cyclomzv: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
