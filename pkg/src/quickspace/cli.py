"""Command-line entry point.

    quickspace verify {core-laws,space,recurrence,splitter,simulator,all}
    quickspace table --n-max N
    quickspace enumerate --n N
    quickspace montecarlo --n N --trials T --seed S

Every command takes ``--format {table,csv,json}``.  Exit status: 0 when all
checks pass, 1 when a verification fails, 2 on a usage error.

Rationals are written as ``num/den`` in CSV and as
``{"num": "...", "den": "..."}`` (decimal strings) in JSON.  Leaves of a run
are ``_`` in CSV and in the JSON string form, ``null`` in the JSON tree form,
and ``⊥`` only in the human table.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction
from typing import Sequence

from . import recurrence, run_space, simulator, verify
from .errors import QuickspaceError

FORMATS = ("table", "csv", "json")
EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def rational_json(value: Fraction | None):
    if value is None:
        return None
    value = Fraction(value)
    return {"num": str(value.numerator), "den": str(value.denominator)}


def rational_from_json(obj) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def rational_csv(value: Fraction | None) -> str:
    if value is None:
        return ""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def _print_table(header: Sequence[str], rows: Sequence[Sequence], out) -> None:
    cells = [[str(h) for h in header]] + [["" if c is None else str(c) for c in row] for row in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
    for pos, row in enumerate(cells):
        print("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip(), file=out)
        if pos == 0:
            print("  ".join("-" * w for w in widths), file=out)


def _print_csv(header: Sequence[str], rows: Sequence[Sequence], out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(["" if c is None else c for c in row] for row in rows)


def _print_json(command: str, parameters: dict, key: str, payload, out) -> None:
    json.dump({"command": command, "parameters": parameters, key: payload}, out, indent=2, ensure_ascii=False)
    out.write("\n")


# -- commands ---------------------------------------------------------------

def cmd_verify(args, out) -> int:
    caps = verify.Caps(
        n_max=args.n_max, enum=args.cap_enum, exact=args.cap_exact, perm=args.cap_perm,
        bound=args.cap_bound, trials=args.trials, seed=args.seed,
    )
    checks = verify.run_suite(args.suite, caps)
    failed = [c for c in checks if not c.passed]
    if args.format == "json":
        _print_json("verify", {"suite": args.suite, **vars(caps)}, "rows", [
            {"check": c.name, "passed": c.passed, "params": c.params, "detail": c.detail} for c in checks
        ], out)
    elif args.format == "csv":
        _print_csv(["check", "passed", "params", "detail"],
                   [[c.name, c.passed, json.dumps(c.params, sort_keys=True), c.detail] for c in checks], out)
    else:
        for c in checks:
            params = ", ".join(f"{k}={v}" for k, v in c.params.items())
            line = f"{'PASS' if c.passed else 'FAIL'}  {c.name}"
            if params:
                line += f"  [{params}]"
            if c.detail and not c.passed:
                line += f"  -- {c.detail}"
            print(line, file=out)
        print(f"\n{len(checks) - len(failed)}/{len(checks)} checks passed", file=out)
    for c in failed:
        print(f"verification failed: {c.name} ({c.detail})", file=sys.stderr)
    return EXIT_FAILED if failed else EXIT_OK


def table_rows(n_max: int, cap_enum: int, cap_exact: int) -> list[dict]:
    floats = recurrence.t_float_table(n_max)
    rows = []
    for n in range(n_max + 1):
        rows.append({
            "n": n,
            "t_exact": recurrence.t_exact(n, cap_exact) if n <= cap_exact else None,
            "t_float": floats[n],
            "bound": recurrence.bound(n),
            "runs": len(run_space.enumerate_runs(n, cap_enum)) if n <= cap_enum else None,
        })
    return rows


def cmd_table(args, out) -> int:
    rows = table_rows(args.n_max, args.cap_enum, args.cap_exact)
    header = ["n", "t_exact", "t_float", "bound_2nlnn", "runs"]
    if args.format == "json":
        _print_json("table", {"n_max": args.n_max, "cap_enum": args.cap_enum, "cap_exact": args.cap_exact}, "rows", [
            {**r, "t_exact": rational_json(r["t_exact"])} for r in rows
        ], out)
    elif args.format == "csv":
        _print_csv(header, [[r["n"], rational_csv(r["t_exact"]), repr(r["t_float"]), repr(r["bound"]), r["runs"]]
                            for r in rows], out)
    else:
        _print_table(["n", "T(n)", "T(n) float", "2n ln n", "|Q_n|"], [
            [r["n"], "" if r["t_exact"] is None else str(r["t_exact"]), f"{r['t_float']:.4f}",
             f"{r['bound']:.4f}", r["runs"]] for r in rows
        ], out)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    space = run_space.enumerate_runs(args.n, args.cap_enum)
    if args.format == "json":
        _print_json("enumerate", {"n": args.n}, "rows", [
            {"run": run_space.format_run(r, "_"), "tree": run_space.run_to_tree(r),
             "weight": rational_json(w), "t": t}
            for r, w, t in space
        ], out)
    elif args.format == "csv":
        _print_csv(["run", "weight", "t"], [[run_space.format_run(r, "_"), rational_csv(w), t] for r, w, t in space], out)
    else:
        _print_table(["run", "weight", "t"], [[run_space.format_run(r), str(w), t] for r, w, t in space], out)
    return EXIT_OK


def montecarlo_summary(report: simulator.TrialReport, cap_exact: int) -> dict:
    reference = recurrence.t_float(report.n)
    stderr = report.stderr
    if stderr > 0:
        z = (report.mean - reference) / stderr
    elif report.mean == reference:
        z = 0.0
    else:
        z = math.copysign(math.inf, report.mean - reference)
    return {
        **report.to_dict(),
        "reference": reference,
        "reference_exact": recurrence.t_exact(report.n, cap_exact) if report.n <= cap_exact else None,
        "stderr": stderr,
        "z": z,
    }


def cmd_montecarlo(args, out) -> int:
    report = simulator.monte_carlo(args.n, args.trials, args.seed, workers=args.workers)
    summary = montecarlo_summary(report, args.cap_exact)
    if args.format == "json":
        payload = {**summary, "reference_exact": rational_json(summary["reference_exact"])}
        if math.isinf(payload["z"]):
            payload["z"] = None
        _print_json("montecarlo", {"n": args.n, "trials": args.trials, "seed": args.seed}, "report", payload, out)
    elif args.format == "csv":
        keys = list(summary)
        _print_csv(keys, [[rational_csv(summary[k]) if k == "reference_exact" else summary[k] for k in keys]], out)
    else:
        _print_table(["field", "value"], [
            [k, str(v) if isinstance(v, (Fraction, int)) else f"{v:.6g}" if isinstance(v, float) else v]
            for k, v in summary.items()
        ], out)
    return EXIT_OK


# -- argument parsing -------------------------------------------------------

def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="table")
    common.add_argument("--cap-enum", type=_nonneg, default=run_space.ENUM_CAP,
                        help="largest n whose run space is enumerated (default %(default)s)")
    common.add_argument("--cap-exact", type=_nonneg, default=recurrence.EXACT_CAP,
                        help="largest n evaluated in exact arithmetic (default %(default)s)")
    common.add_argument("--cap-perm", type=_nonneg, default=simulator.PERM_CAP,
                        help="largest n whose permutations are enumerated (default %(default)s)")

    parser = argparse.ArgumentParser(prog="quickspace", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help="one of: " + ", ".join([*verify.SUITES, "all"]))
    p.add_argument("--n-max", type=_nonneg, default=None, help="limit the sizes a suite sweeps")
    p.add_argument("--cap-bound", type=_nonneg, default=verify.BOUND_SCAN,
                   help="scan the 2n ln n bound up to this n (default %(default)s)")
    p.add_argument("--trials", type=int, default=verify.MC_TRIALS)
    p.add_argument("--seed", type=_nonneg, default=simulator.DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="T(n), its float value, 2n ln n and |Q_n|")
    p.add_argument("--n-max", type=_nonneg, required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("enumerate", parents=[common], help="dump every run of Q_n")
    p.add_argument("--n", type=_nonneg, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("montecarlo", parents=[common], help="simulate randomized QuickSort")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=_nonneg, default=simulator.DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_montecarlo)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except QuickspaceError as exc:
        print(f"quickspace: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())
