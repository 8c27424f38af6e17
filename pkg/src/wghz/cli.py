"""Command-line front end: ``wghz analyze|sweep|thresholds|table1|oracle``.

Exit status is 0 on success, 2 on a usage error and 3 when input data fails
validation (or a verification reports a FAIL).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional, Sequence

from . import __version__, analysis, criteria, states
from .criteria import DiagnosticsReport
from .errors import DiagnosticsError, DomainError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3

SWEEP_COLUMNS = (
    "p", "w3", "w4", "ppt_min", "u1", "u2", "u3", "m", "f_max",
    "entangled", "bell_violating", "teleport_useful",
)


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


def _num(x: float) -> str:
    """Shortest decimal string that parses back to the identical float."""
    return repr(float(x))


def _fix(x: float, places: int = 6) -> str:
    return f"{x:.{places}f}"


def _state_from_args(args) -> tuple[states.TwoQubitDensity, dict]:
    """Resolve the state flags to a density plus record metadata."""
    if args.input is not None:
        if args.state is not None:
            raise UsageError("--input and --state are mutually exclusive")
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
        try:
            rho = states.load_density(text)
        except DiagnosticsError as exc:
            raise DataError(f"{args.input}: {type(exc).__name__}: {exc}") from None
        return rho, {"state_kind": "file", "n": None, "p": None, "source": args.input}

    if args.state is None:
        raise UsageError("give either --state w|ghz|mixture or --input PATH")
    if args.n is None:
        raise UsageError(f"--state {args.state} requires --n")
    try:
        if args.state == "w":
            rho, p = states.reduced_w_pair(args.n), None
        elif args.state == "ghz":
            rho, p = states.reduced_ghz_pair(args.n), None
        else:
            if args.p is None:
                raise UsageError("--state mixture requires --p")
            rho, p = states.mixture(args.n, args.p), args.p
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    return rho, {"state_kind": args.state, "n": args.n, "p": p}


def _report_for(args, rho) -> DiagnosticsReport:
    if args.input is None and args.state == "w":
        return analysis.w_state_report(args.n)
    return criteria.full_report(rho)


def report_record(report: DiagnosticsReport, meta: dict, seed: Optional[int] = None) -> dict:
    """Flat, stably ordered record for machine-readable output."""
    rec = {"tool": "wghz", "version": __version__}
    rec.update(meta)
    rec["seed"] = seed
    rec.update(
        w3=report.w3,
        w4=report.w4,
        ppt_spectrum=list(report.ppt_spectrum),
        ppt_min=report.ppt_min,
        u1=report.u[0],
        u2=report.u[1],
        u3=report.u[2],
        m=report.m_value,
        f_max=report.f_max,
        entangled=report.entangled,
        bell_violating=report.bell_violating,
        teleport_useful=report.teleport_useful,
        notes=list(report.notes),
    )
    return rec


def format_report_text(report: DiagnosticsReport, meta: dict) -> str:
    out = io.StringIO()
    label = meta["state_kind"]
    if meta.get("n") is not None:
        label += f" n={meta['n']}"
    if meta.get("p") is not None:
        label += f" p={meta['p']}"
    if meta.get("source"):
        label += f" ({meta['source']})"
    verdicts = report.verdicts()
    print(f"state           {label}", file=out)
    print(f"w3              = {_fix(report.w3, 9)}", file=out)
    print(f"w4              = {_fix(report.w4, 9)}", file=out)
    print("ppt_spectrum    = " + ", ".join(_fix(v) for v in report.ppt_spectrum), file=out)
    print("u               = " + ", ".join(_fix(v) for v in report.u), file=out)
    print(f"m               = {_fix(report.m_value)}", file=out)
    print(f"f_max           = {_fix(report.f_max)}", file=out)
    for key in ("entangled", "bell_violating", "teleport_useful"):
        value = "true" if getattr(report, key) else "false"
        if verdicts[key] == "boundary":
            value += " (boundary)"
        print(f"{key:<15} = {value}", file=out)
    for note in report.notes:
        print(f"note: {note}", file=out)
    return out.getvalue()


def cmd_analyze(args) -> int:
    rho, meta = _state_from_args(args)
    report = _report_for(args, rho)
    if args.format == "json":
        sys.stdout.write(json.dumps(report_record(report, meta)) + "\n")
    else:
        sys.stdout.write(format_report_text(report, meta))
    return EXIT_OK


def sweep_rows(n: int, p_start: float, p_end: float, steps: int) -> list[dict]:
    rows = []
    for p, r in analysis.sweep(n, p_start, p_end, steps):
        rows.append(
            dict(
                zip(
                    SWEEP_COLUMNS,
                    (p, r.w3, r.w4, r.ppt_min, *r.u, r.m_value, r.f_max,
                     r.entangled, r.bell_violating, r.teleport_useful),
                )
            )
        )
    return rows


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return _num(v)


def cmd_sweep(args) -> int:
    try:
        rows = sweep_rows(args.n, args.p_start, args.p_end, args.steps)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        for row in rows:
            sys.stdout.write(json.dumps(row) + "\n")
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for row in rows:
            writer.writerow([_csv_cell(row[c]) for c in SWEEP_COLUMNS])
    return EXIT_OK


def cmd_thresholds(args) -> int:
    try:
        rep = analysis.thresholds(args.n)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        rec = {
            "n": rep.n,
            "p_entangled": rep.p_entangled,
            "p_entangled_bisection": rep.p_entangled_bisection,
            "certified": rep.certified,
            "p_teleport": rep.p_teleport,
            "teleport_boundary": rep.teleport_boundary,
            "p_bell": rep.p_bell,
            "p_bell_unclipped": rep.p_bell_unclipped,
        }
        sys.stdout.write(json.dumps(rec) + "\n")
        return EXIT_OK
    status = "certified" if rep.certified else "NOT certified"
    print(f"n               = {rep.n}")
    print(f"p_entangled     = {_fix(rep.p_entangled)}  (bisection {_fix(rep.p_entangled_bisection)}, {status})")
    print(f"                  entangled for p in ({_fix(rep.p_entangled)}, 1]")
    if rep.p_teleport is None:
        print(f"p_teleport      = absent (n/4 = {_fix(rep.n / 4)} > 1)")
    elif rep.teleport_boundary:
        print(f"p_teleport      = {_fix(rep.p_teleport)} (boundary, unattainable for p < 1)")
    else:
        print(f"p_teleport      = {_fix(rep.p_teleport)}  (F_max > 2/3 for p in ({_fix(rep.p_teleport)}, 1])")
    if rep.p_bell is None:
        print(f"p_bell          = absent (derived n/(2 sqrt 2) = {_fix(rep.p_bell_unclipped)} > 1)")
    else:
        print(f"p_bell          = {_fix(rep.p_bell)} (derived from 8p^2/n^2 = 1)")
    return EXIT_OK


def _interval_text(iv: Optional[analysis.Interval]) -> Optional[str]:
    return None if iv is None else str(iv)


def cmd_table1(args) -> int:
    rows = analysis.table1()
    checks = analysis.verify_table1() if args.verify else []
    if args.format == "json":
        doc = {
            "rows": [
                {
                    "n": r.n,
                    "entangled_range": _interval_text(r.entangled),
                    "p_entangled": r.entangled.lo,
                    "published_threshold": r.published_threshold,
                    "m_formula": r.m_formula,
                    "m_at_most_one": r.m_at_most_one,
                    "f_max_above_classical": r.teleport,
                    "teleport_range": _interval_text(r.teleport_range),
                    "no_teleport_range": _interval_text(r.no_teleport_range),
                }
                for r in rows
            ],
            "notes": list(analysis.TABLE1_NOTES),
        }
        if args.verify:
            doc["checks"] = [
                {"n": c.n, "column": c.column, "detail": c.detail, "passed": c.passed} for c in checks
            ]
        sys.stdout.write(json.dumps(doc) + "\n")
    else:
        print(f"{'N':>2}  {'W4<0 (range of p)':<20} {'M':<9} {'M<=1':<5} F_max>2/3")
        for r in rows:
            if r.teleport:
                tele = f"Yes {r.teleport_range}, No {r.no_teleport_range}"
            else:
                tele = "No"
            print(f"{r.n:>2}  {str(r.entangled):<20} {r.m_formula:<9} {'Yes' if r.m_at_most_one else 'No':<5} {tele}")
        for note in analysis.TABLE1_NOTES:
            print(f"note: {note}")
        for c in checks:
            print(f"{'PASS' if c.passed else 'FAIL'}  N={c.n}  {c.column:<10} {c.detail}")
    if checks and not all(c.passed for c in checks):
        return EXIT_DATA
    return EXIT_OK


FEF_NOTE = (
    "the LOCC-optimal fidelity (2f+1)/3 and the standard-scheme F_max are different "
    "protocols and are not expected to agree"
)


def cmd_oracle(args) -> int:
    if args.restarts < 1 or args.iters < 1:
        raise UsageError("--restarts and --iters must be >= 1")
    rho, meta = _state_from_args(args)
    rec = {"tool": "wghz", "version": __version__, **meta, "seed": args.seed,
           "kind": args.kind, "restarts": args.restarts, "iters": args.iters}
    if args.kind == "chsh":
        value = criteria.chsh_maximize(rho, args.restarts, args.iters, args.seed)
        target = 2.0 * math.sqrt(max(criteria.m_value(rho), 0.0))
        rec.update(chsh_max=value, target=target, gap=abs(target - value))
        text = [
            f"chsh_max        = {_fix(value)}",
            f"target 2sqrt(M) = {_fix(target)}",
            f"gap             = {abs(target - value):.3e}",
        ]
    else:
        f = criteria.fully_entangled_fraction(rho, args.restarts, args.iters, args.seed)
        fid = criteria.fef_fidelity(f)
        fmax = criteria.f_max(rho)
        notes = [FEF_NOTE]
        if meta["state_kind"] == "w":
            notes.append(f"the closed-form fidelity quoted for W-state pairs is 2/3 (n={args.n})")
        rec.update(fef=f, fef_fidelity=fid, f_max=fmax, notes=notes)
        text = [
            f"fef             = {_fix(f)}",
            f"(2f+1)/3        = {_fix(fid)}",
            f"f_max           = {_fix(fmax)}",
        ] + [f"note: {n}" for n in notes]
    if args.format == "json":
        sys.stdout.write(json.dumps(rec) + "\n")
    else:
        sys.stdout.write("\n".join(text) + "\n")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_state_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--state", choices=("w", "ghz", "mixture"))
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--input", metavar="PATH", help="JSON density file {dim, re, im}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wghz", description="Two-qubit W/GHZ mixture diagnostics")
    parser.add_argument("--version", action="version", version=f"wghz {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="full diagnostics for one state")
    _add_state_flags(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="diagnostics of the mixture over a p grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p-start", type=float, default=0.0)
    p.add_argument("--p-end", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("thresholds", help="critical mixing probabilities for one n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("table1", help="reproduce the N = 3, 4, 5 summary table")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--verify", action="store_true", help="recompute every cell through the matrix pipeline")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("oracle", help="numerical CHSH / fully-entangled-fraction oracles")
    p.add_argument("--kind", choices=("chsh", "fef"), required=True)
    _add_state_flags(p)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--iters", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"wghz {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"wghz {args.command}: invalid density: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
