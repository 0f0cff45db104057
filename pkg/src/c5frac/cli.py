"""Command-line entry point for the verification pipelines.

Every subcommand writes a JSON report (to ``--out`` or stdout) carrying the
constants in use, and exits 0 exactly when its verdict is positive.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .blowup import TABLE_SCHEMA, CycleTable, classify_small, cycle_table, materialize, balanced_tree
from .constants import DEFAULT
from .graphs import count_induced_c5

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_REGIME = 4
EXIT_ABORTED = 5

CACHE_ENV = "C5FRAC_CACHE"


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# cycle table cache


def load_table(n_max: int) -> CycleTable:
    """Cycle table covering n_max, read from and written to $C5FRAC_CACHE when set."""
    cache = os.environ.get(CACHE_ENV)
    if not cache:
        return cycle_table(n_max)
    root = Path(cache)
    stamp, data = root / "cycle-table.json", root / "cycle-table.csv"
    try:
        meta = json.loads(stamp.read_text())
        if meta.get("schema") == TABLE_SCHEMA and meta.get("n_max", 0) >= n_max:
            return CycleTable.from_csv(data)
    except (OSError, ValueError, KeyError):
        pass
    table = cycle_table(n_max)
    root.mkdir(parents=True, exist_ok=True)
    table.to_csv(data)
    stamp.write_text(json.dumps({"schema": TABLE_SCHEMA, "n_max": n_max}))
    return table


# ---------------------------------------------------------------------------
# subcommands; each returns (verdict, report dict, optional csv rows)


def _read_graphs(path: str):
    from .canon import from_graph6

    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as err:
        raise InputError(str(err)) from err
    graphs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith(">>"):
            continue
        try:
            graphs.append((line, from_graph6(line)))
        except Exception as err:
            raise InputError(f"line {lineno}: {err}") from err
    return graphs


def cmd_count(args):
    rows = [{"graph6": s, "n": g.n, "c5": count_induced_c5(g)} for s, g in _read_graphs(args.graph6)]
    return True, {"graphs": rows}, rows


def cmd_blowup_table(args):
    lo, hi = args.lo or 5, args.hi or 1000
    if not 1 <= lo <= hi:
        raise InputError("need 1 <= --from <= --to")
    table = load_table(hi)
    check_hi = min(hi, args.check_to)
    mismatches = [n for n in range(max(lo, 5), check_hi + 1) if count_induced_c5(materialize(balanced_tree(n))) != table.count(n)]
    rows = [
        {"n": n, "count": table.count(n), "density": str(table.density(n)), "cstar": str(table.cstar(n)), "cstar_float": float(table.cstar(n))}
        for n in range(lo, hi + 1)
    ]
    report = {"range": [lo, hi], "checked_against_materialized": [max(lo, 5), check_hi], "mismatches": mismatches, "table": rows}
    return not mismatches, report, rows


def cmd_classify_small(args):
    report = classify_small(args.n)
    return report.verdict, report.to_dict(), report.extremal


def _scan_chunk(bounds):
    from .program_p import scan_medium

    lo, hi = bounds
    return scan_medium(lo, hi, load_table(hi))


def _chunks(lo: int, hi: int, k: int) -> list[tuple[int, int]]:
    k = max(1, min(k, hi - lo + 1))
    edges = [lo + (hi - lo + 1) * i // k for i in range(k + 1)]
    return [(edges[i], edges[i + 1] - 1) for i in range(k)]


def cmd_scan_medium(args):
    from .program_p import compare_with_listed

    lo, hi = args.lo or 9, args.hi or 1000
    chunks = _chunks(lo, hi, args.workers)
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            parts = list(pool.map(_scan_chunk, chunks))
    else:
        parts = [_scan_chunk(c) for c in chunks]
    report = parts[0]
    for p in parts[1:]:
        report = report.merge(p)
    comparison = compare_with_listed(report)
    out = report.to_dict()
    out["comparison"] = comparison
    rows = [{"n": o.n, "y": " ".join(map(str, o.y_counts)), "objective": str(o.objective)} for o in report.survivors]
    return comparison["verdict"], out, rows


def _survivor_chunk(x):
    from .program_p import verify_survivors

    return verify_survivors([x])


def cmd_verify_survivors(args):
    from .program_p import LISTED_SURVIVORS, SurvivorReport

    if args.from_scan:
        try:
            xs = [tuple(x) for x in json.loads(Path(args.from_scan).read_text())["x_tuples"]]
        except (OSError, ValueError, KeyError) as err:
            raise InputError(f"cannot read x_tuples from {args.from_scan}: {err}") from err
    else:
        xs = list(LISTED_SURVIVORS)
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            parts = list(pool.map(_survivor_chunk, xs))
    else:
        parts = [_survivor_chunk(x) for x in xs]
    total = SurvivorReport(True)
    for p in parts:
        total.verdict &= p.verdict
        total.tuples_checked += p.tuples_checked
        total.configurations += p.configurations
        total.escalated += p.escalated
        total.witnesses += p.witnesses
    rows = [{k: v for k, v in t.items() if k != "x"} | {"x": " ".join(map(str, t["x"]))} for t in total.tuples_checked]
    return total.verdict, total.to_dict(), rows


def cmd_mesh(args):
    from .mesh import run_pdoubleprime, run_pprime

    run = run_pprime if args.program == "pprime" else run_pdoubleprime
    report = run(DEFAULT, max_depth=args.max_depth, slack=args.slack, strict=args.strict)
    out = report.to_dict()
    if report.aborted_cell is not None:
        out["exit_reason"] = "aborted"
    return report.verdict, out, None


def cmd_balance(args):
    from .balance import claim4_large_constant, verify_balance_small

    hi = args.hi or 1000
    table = load_table(max(hi, 166))
    report = verify_balance_small(hi, table, args.lo or 5)
    const = claim4_large_constant(DEFAULT, table=table)
    out = report.to_dict() | {"large_n_constant": str(const), "large_n_constant_float": float(const)}
    return report.verdict and const > 0, out, None


def cmd_thresholds(args):
    from .balance import verify_cstar_thresholds, verify_proposition_step

    lo, hi = args.lo or 1000, args.hi or 5000
    table = load_table(5 * hi + 5)
    thresholds = verify_cstar_thresholds(table)
    step = verify_proposition_step(lo, hi, table)
    out = {"thresholds": thresholds.to_dict(), "induction_step": step.to_dict()}
    return thresholds.verdict and step.verdict, out, None


def cmd_flagcheck(args):
    from .flagcheck import empirical_lemma1, limit_margin, verify_rational_constants

    out = {"rational_constants": verify_rational_constants(DEFAULT)}
    verdict = out["rational_constants"]["verdict"]
    if args.graph6:
        rows = []
        for s, g in _read_graphs(args.graph6):
            margin = limit_margin(g)
            row = {"graph6": s, "limit_margin": float(margin), "limit_margin_exact": str(margin)}
            if args.depth is not None:
                row["finite_depth"] = empirical_lemma1(g, args.depth).to_dict()
            verdict &= margin >= 0
            rows.append(row)
        out["graphs"] = rows
    return verdict, out, out.get("graphs")


COMMANDS = {
    "count": cmd_count,
    "blowup-table": cmd_blowup_table,
    "classify-small": cmd_classify_small,
    "scan-medium": cmd_scan_medium,
    "verify-survivors": cmd_verify_survivors,
    "mesh": cmd_mesh,
    "balance": cmd_balance,
    "thresholds": cmd_thresholds,
    "flagcheck": cmd_flagcheck,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="report path (default stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--workers", type=int, default=1)
    ranged = _Parser(add_help=False)
    ranged.add_argument("--from", dest="lo", type=int)
    ranged.add_argument("--to", dest="hi", type=int)

    parser = _Parser(prog="c5frac", description="Verification pipelines for the inducibility of C5.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", parents=[common], help="induced C5 counts of graph6 input")
    p.add_argument("--graph6", required=True, help="graph6 file, '-' for stdin")
    p = sub.add_parser("blowup-table", parents=[common, ranged], help="cycle counts of iterated balanced blow-ups")
    p.add_argument("--check-to", type=int, default=40, help="cross-check against materialized blow-ups up to this n")
    p = sub.add_parser("classify-small", parents=[common], help="extremal colorings of K_n")
    p.add_argument("--n", type=int, default=8, choices=range(1, 10), metavar="N")
    sub.add_parser("scan-medium", parents=[common, ranged], help="sweep the size program")
    p = sub.add_parser("verify-survivors", parents=[common], help="funky placements on the residual cycle orderings")
    p.add_argument("--from-scan", help="scan-medium JSON report supplying x_tuples")
    p = sub.add_parser("mesh", parents=[common], help="adaptive-mesh lower bounds")
    p.add_argument("program", choices=("pprime", "pdoubleprime"))
    p.add_argument("--slack", type=float)
    p.add_argument("--max-depth", type=int, default=40)
    p.add_argument("--strict", action="store_true", help="exact rational cell bounds")
    p = sub.add_parser("balance", parents=[common, ranged], help="balanced compositions are optimal")
    sub.add_parser("thresholds", parents=[common, ranged], help="C(n*) thresholds and the induction step")
    p = sub.add_parser("flagcheck", parents=[common], help="constants and margins of the C5 versus C•• inequality")
    p.add_argument("--graph6", help="graphs whose limit blow-ups are tested")
    p.add_argument("--depth", type=int, help="also test a finite-depth blow-up")
    return parser


def _to_csv(rows) -> str:
    buf = io.StringIO()
    rows = list(rows or [])
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    return buf.getvalue()


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.workers < 1:
        print("--workers must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        verdict, report, rows = COMMANDS[args.command](args)
    except InputError as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as err:
        print(f"regime violation: {err}", file=sys.stderr)
        return EXIT_REGIME
    doc = {"command": args.command, "verdict": bool(verdict), "constants": DEFAULT.as_dict(), "report": report}
    if args.format == "csv":
        text = _to_csv(rows)
    else:
        text = json.dumps(doc, indent=2, default=_json_default) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        if args.format == "csv":
            Path(args.out).with_suffix(".json").write_text(json.dumps(doc, indent=2, default=_json_default) + "\n")
    else:
        sys.stdout.write(text)
    if verdict:
        return EXIT_OK
    if report.get("exit_reason") == "aborted":
        return EXIT_ABORTED
    return EXIT_VERDICT


def main() -> None:
    sys.exit(run())
