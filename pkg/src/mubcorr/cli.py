"""Command-line front end.

::

    mubcorr [global flags] corrvec STATE.json
    mubcorr [global flags] sweep FAMILY --lo LO --hi HI [--steps N] [--measures ...]
    mubcorr [global flags] verify CAMPAIGN --n-samples N [--dims 2x2]
    mubcorr [global flags] mub D

Results go to stdout (or ``--out``), diagnostics to stderr.  Exit codes:
0 ok, 2 parse error, 3 unsupported dimension/level, 4 I/O error,
5 verification failure.
"""

import argparse
import csv
import io as _io
import json
import logging
import sys

import numpy as np

from . import campaigns, mub
from . import io as sio
from .corrvec import (OptimizerConfig, check_inequality_9, compute_correlation_vector,
                      compute_discord)
from .errors import InvalidInputError, UnsupportedDimensionError
from .qmath import MAX_TOTAL_DIM

EXIT_OK, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_IO, EXIT_VERIFY = 0, 2, 3, 4, 5


class _Exit(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _global_flags(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    g = parser.add_argument_group("global flags")
    g.add_argument("--seed", type=int, default=d(0), help="RNG seed (default 0)")
    g.add_argument("--restarts", type=int, default=d(None),
                   help="multi-start count (default 32 for d<=3, else 128)")
    g.add_argument("--tol", type=float, default=d(1e-8), help="objective tolerance in bits")
    g.add_argument("--max-dim", type=int, default=d(MAX_TOTAL_DIM),
                   help="largest accepted dA*dB")
    g.add_argument("--m", type=int, default=d(None), help="number of levels M")
    g.add_argument("--two-stage", choices=("on", "off"), default=d("on"),
                   help="re-run later levels from every degenerate C1 optimum")
    g.add_argument("--out", default=d(None), help="write results to this path")
    g.add_argument("--format", choices=("csv", "text"), default=d("text"))


def build_parser():
    parser = argparse.ArgumentParser(prog="mubcorr", description=__doc__.split("\n")[0])
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("corrvec", help="correlation vector of a state file")
    p.add_argument("state_file")
    _global_flags(p, suppress=True)

    p = sub.add_parser("sweep", help="one-parameter sweep to CSV")
    p.add_argument("family", choices=campaigns.SWEEP_FAMILIES)
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--steps", type=int, default=81)
    p.add_argument("--measures", default="C1,Q2,Q3,D,Ef",
                   help="comma-separated subset of " + ",".join(campaigns.MEASURES))
    p.add_argument("--d", type=int, default=2, help="Werner dimension")
    p.add_argument("--r", default="1,1,-1", help="Bell-diagonal line direction r1,r2,r3")
    _global_flags(p, suppress=True)

    p = sub.add_parser("verify", help="randomized verification campaign")
    p.add_argument("campaign", choices=campaigns.CAMPAIGNS)
    p.add_argument("--n-samples", type=int, default=100)
    p.add_argument("--dims", default="2x2", help="dA x dB, e.g. 2x3")
    _global_flags(p, suppress=True)

    p = sub.add_parser("mub", help="export the standard MUB family of prime d")
    p.add_argument("d", type=int)
    _global_flags(p, suppress=True)
    return parser


def _config(args):
    try:
        return OptimizerConfig(restarts=args.restarts, objective_tol=args.tol, seed=args.seed,
                               levels=args.m, two_stage_degenerate=args.two_stage == "on")
    except InvalidInputError as exc:
        raise _Exit(EXIT_PARSE, str(exc)) from None


def _emit(text, args):
    if args.out is None:
        sys.stdout.write(text)
        return
    try:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot write {args.out}: {exc}") from None


def _basis_str(b):
    rows = []
    for v in b.vectors:
        rows.append("[" + ", ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in v) + "]")
    return " ".join(rows)


def cmd_corrvec(args):
    try:
        state = sio.read_state(args.state_file)
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot read {args.state_file}: {exc}") from None
    if state.dA * state.dB > args.max_dim:
        raise _Exit(EXIT_UNSUPPORTED,
                    f"dA*dB = {state.dA * state.dB} exceeds --max-dim {args.max_dim}")
    cfg = _config(args)
    cv = compute_correlation_vector(state, cfg)
    if args.m is not None and cv.truncated:
        raise _Exit(EXIT_UNSUPPORTED, "; ".join(cv.notes))
    disc = compute_discord(state, cfg, c1=cv.entries[0])
    rep = check_inequality_9(state, cv) if cv.M >= 2 else None
    for w in cv.warnings:
        print(f"warning: {w}", file=sys.stderr)

    names = ["C1"] + [f"Q{k}" for k in range(2, cv.M + 1)]
    if args.format == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        cols = names + ["D"] + (["ineq9_slack", "ineq10_slack"] if rep else [])
        w.writerow(cols)
        vals = list(cv.entries) + [disc] + ([rep.slack, rep.relaxed_slack] if rep else [])
        w.writerow([f"{v:.12g}" for v in vals])
        _emit(buf.getvalue(), args)
        return EXIT_OK

    lines = [f"state: dA={state.dA} dB={state.dB}",
             "vector: (" + ", ".join(f"{v:.10f}" for v in cv.entries) + ")"]
    for name, v, b, deg, full in zip(names, cv.entries, cv.optimum_bases,
                                     cv.degeneracy_flags, cv.complete_charts):
        flag = " degenerate" if deg else ""
        flag += "" if full else " incomplete-chart"
        lines.append(f"  {name} = {v:.10f}{flag}")
        lines.append(f"    basis: {_basis_str(b)}")
    lines.append(f"discord: {disc:.10f}")
    if rep is not None:
        lines.append(f"inequality C1+Q2 <= H1+H2+S(B)-S(AB)-log dA: lhs={rep.lhs:.10f} "
                     f"rhs={rep.rhs:.10f} slack={rep.slack:.3e} "
                     f"{'holds' if rep.holds else 'VIOLATED'}")
        lines.append(f"relaxed C1+Q2 <= S(B)-S(AB)+log dA: rhs={rep.relaxed_rhs:.10f} "
                     f"slack={rep.relaxed_slack:.3e} "
                     f"{'holds' if rep.relaxed_holds else 'VIOLATED'}")
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK


def _parse_floats(text, n, what):
    try:
        vals = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise _Exit(EXIT_PARSE, f"cannot parse {what} {text!r}") from None
    if len(vals) != n:
        raise _Exit(EXIT_PARSE, f"{what} needs {n} comma-separated numbers")
    return vals


def cmd_sweep(args):
    measures = tuple(m.strip() for m in args.measures.split(",") if m.strip())
    try:
        spec = campaigns.SweepSpec(args.family, args.lo, args.hi, args.steps, measures,
                                   d=args.d, r=_parse_floats(args.r, 3, "--r"))
    except InvalidInputError as exc:
        raise _Exit(EXIT_PARSE, str(exc)) from None
    if spec.family == "werner" and args.d ** 2 > args.max_dim:
        raise _Exit(EXIT_UNSUPPORTED, f"d^2 = {args.d ** 2} exceeds --max-dim {args.max_dim}")
    rows = campaigns.run_sweep(spec, _config(args))
    _emit(campaigns.sweep_csv(rows, spec), args)
    return EXIT_OK


def cmd_verify(args):
    try:
        dA, dB = (int(x) for x in args.dims.lower().split("x"))
    except ValueError:
        raise _Exit(EXIT_PARSE, f"cannot parse --dims {args.dims!r}") from None
    if dA < 2 or dB < 2 or args.n_samples < 1:
        raise _Exit(EXIT_PARSE, "need dims >= 2 and n-samples >= 1")
    if dA * dB > args.max_dim:
        raise _Exit(EXIT_UNSUPPORTED, f"dA*dB = {dA * dB} exceeds --max-dim {args.max_dim}")
    res = campaigns.run_campaign(args.campaign, args.n_samples, (dA, dB), args.seed,
                                 _config(args))
    lines = [res.summary()]
    for i, s, v in res.failures:
        lines.append(f"  failing sample {i}: seed={s} value={v:.3e}")
    _emit("\n".join(lines) + "\n", args)
    if not res.passed:
        print(f"verification failed: {len(res.failures)} sample(s) beyond tolerance "
              f"{campaigns.TOLERANCES[args.campaign]:g}; reproduce with the seeds above",
              file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_mub(args):
    fam = mub.standard_mub_family(args.d)
    overlaps = []
    for i in range(len(fam.bases)):
        for j in range(i + 1, len(fam.bases)):
            ov = np.abs(fam.bases[i].matrix.conj().T @ fam.bases[j].matrix) ** 2
            overlaps.append({"pair": [i, j], "min": float(ov.min()), "max": float(ov.max())})
    report = {"expected": 1.0 / args.d, "max_error": fam.max_overlap_error(),
              "pairs": overlaps}
    doc = sio.bases_to_dict(list(fam.bases), report)
    _emit(json.dumps(doc, indent=1) + "\n", args)
    print(f"{len(fam.bases)} bases, max overlap error {report['max_error']:.2e}",
          file=sys.stderr)
    return EXIT_OK


COMMANDS = {"corrvec": cmd_corrvec, "sweep": cmd_sweep, "verify": cmd_verify, "mub": cmd_mub}


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="warning: %(message)s")
    args = build_parser().parse_args(argv)  # argparse exits with 2 on bad usage
    try:
        return COMMANDS[args.command](args)
    except _Exit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except UnsupportedDimensionError as exc:
        print(f"error: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except InvalidInputError as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: I/O: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
