"""Command-line interface: generation, statistics, verification, spectrum,
and structure search, with plain / csv / json reports.

Exit codes: 0 all requested checks passed, 1 a check failed or a
resource / solver limit was hit (the report distinguishes the two),
2 usage error.  Reports are byte-deterministic for fixed inputs and
version: no timestamps, one leading metadata line (csv) or a version
field (json).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any

from . import __version__
from .analysis import (
    check_identity,
    compute_stats,
    limit_matrix_spectrum,
    pisot_root,
)
from .blocks import (
    inject_block_fault,
    initial_level,
    next_level,
    verify_kolakoski_step,
    verify_lemma,
    verify_prefix,
)
from .errors import KolakoskiError, MaterializationLimitError, TimeBudgetError
from .explore import detect
from .words import DEFAULT_CAP, DEFAULT_CHUNK, Alphabet, kolakoski_chunks

_CHECKS = ("prefix", "step", "lemma", "identity")


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _frac_fields(name: str, value: Fraction | None) -> dict[str, Any]:
    if value is None:
        return {name: None, f"{name}_exact": None}
    return {
        name: round(float(value), 6),
        f"{name}_exact": f"{value.numerator}/{value.denominator}",
    }


# --- report assembly -------------------------------------------------------

def _report(command: str, parameters: dict[str, Any]) -> dict[str, Any]:
    return {
        "command": command,
        "parameters": parameters,
        "rows": [],
        "verdicts": [],
        "version": __version__,
    }


def _meta_line(report: dict[str, Any]) -> str:
    params = " ".join(f"{k}={v}" for k, v in report["parameters"].items())
    return f"# kolakoski version={report['version']} command={report['command']} {params}".rstrip()


def _render_csv(report: dict[str, Any], columns: list[str]) -> str:
    out = io.StringIO()
    out.write(_meta_line(report) + "\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    source = report["rows"] if report["rows"] else report["verdicts"]
    for row in source:
        writer.writerow([row.get(c, "") for c in columns])
    return out.getvalue()


def _render_json(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# --- subcommands -----------------------------------------------------------

def _cmd_generate(args: argparse.Namespace) -> tuple[dict, int]:
    alphabet = args.alphabet
    report = _report(
        "generate",
        {"alphabet": f"{alphabet.a},{alphabet.b}", "n": args.n, "format": args.format},
    )
    if args.n > args.cap:
        raise MaterializationLimitError(args.n, args.cap, "sequence prefix")
    symbols: list[int] = []
    for chunk in kolakoski_chunks(alphabet, args.n, args.chunk_size):
        symbols.extend(chunk.tolist())
    report["rows"] = symbols

    if args.format == "plain":
        text = " ".join(map(str, symbols)) + "\n"
    elif args.format == "csv":
        out = io.StringIO()
        out.write(_meta_line(report) + "\n")
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["index", "symbol"])
        writer.writerows(enumerate(symbols, start=1))
        text = out.getvalue()
    else:
        text = _render_json(report)
    _emit(text, args.output)
    return report, 0


def _stats_row(s) -> dict[str, Any]:
    row: dict[str, Any] = {
        "n": s.n,
        "block_len": s.block_len,
        "pillar_len": s.pillar_len,
        "block_ones": s.block_ones,
        "pillar_ones": s.pillar_ones,
    }
    row.update(_frac_fields("block_density", s.block_density))
    row.update(_frac_fields("pillar_density", s.pillar_density))
    row.update(_frac_fields("pillar_fraction", s.pillar_fraction))
    row.update(_frac_fields("growth_ratio", s.growth_ratio))
    row["identity_ok"] = check_identity(s)
    # short csv aliases (documented column set)
    row["L"], row["m"], row["c"], row["o"] = (
        s.block_len,
        s.pillar_len,
        s.block_ones,
        s.pillar_ones,
    )
    row["d"] = _fmt(float(s.block_density))
    row["delta"] = _fmt(float(s.pillar_density))
    row["lambda"] = _fmt(float(s.pillar_fraction))
    row["ratio"] = _fmt(float(s.growth_ratio)) if s.growth_ratio is not None else ""
    return row

_STATS_CSV = ["n", "L", "m", "c", "o", "d", "delta", "lambda", "ratio", "identity_ok"]
_STATS_JSON_FIELDS = [
    "n", "block_len", "pillar_len", "block_ones", "pillar_ones",
    "block_density", "block_density_exact", "pillar_density",
    "pillar_density_exact", "pillar_fraction", "pillar_fraction_exact",
    "growth_ratio", "growth_ratio_exact", "identity_ok",
]


def _cmd_stats(args: argparse.Namespace) -> tuple[dict, int]:
    report = _report("stats", {"max_n": args.max_n, "format": args.format})
    rows = compute_stats(
        args.max_n, chunk_size=args.chunk_size, time_budget=args.time_budget
    )
    report["rows"] = [_stats_row(s) for s in rows]

    if args.format == "csv":
        text = _render_csv(report, _STATS_CSV)
    elif args.format == "json":
        report["rows"] = [
            {k: row[k] for k in _STATS_JSON_FIELDS} for row in report["rows"]
        ]
        text = _render_json(report)
    else:
        header = (
            f"{'n':>3} {'L':>12} {'m':>12} {'c':>12} {'o':>12} "
            f"{'d':>9} {'delta':>9} {'lambda':>9} {'ratio':>9} identity"
        )
        lines = [header]
        for row in report["rows"]:
            lines.append(
                f"{row['n']:>3} {row['L']:>12} {row['m']:>12} {row['c']:>12} "
                f"{row['o']:>12} {row['d']:>9} {row['delta']:>9} "
                f"{row['lambda']:>9} {row['ratio'] or '-':>9} "
                f"{'ok' if row['identity_ok'] else 'FAIL'}"
            )
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return report, 0


def _run_check(level, check: str, chunk_size: int) -> dict:
    try:
        if check == "prefix":
            v = verify_prefix(level, chunk_size=chunk_size)
            passed, detail = v.passed, v.describe()
        elif check == "step":
            v = verify_kolakoski_step(level, chunk_size=chunk_size)
            passed, detail = v.passed, v.describe()
        elif check == "lemma":
            lv = verify_lemma(level, chunk_size=chunk_size)
            passed = lv.passed
            detail = (
                f"pillar_len_odd={lv.pillar_len_odd} "
                f"block_ends_in_one={lv.block_ends_in_one} "
                f"pillar_ends_in_three={lv.pillar_ends_in_three} "
                f"block_len_odd={level.stats.block_len % 2 == 1}"
            )
        else:
            s = level.stats
            passed = check_identity(s)
            detail = (
                f"pillar_len={s.pillar_len} "
                f"block_len-2*block_ones={s.block_len - 2 * s.block_ones}"
            )
        kind = "check"
    except KolakoskiError as exc:
        passed, detail, kind = False, str(exc), "resource"
    return {
        "check": check, "n": level.n, "passed": passed, "kind": kind,
        "detail": detail, "name": f"{check}:{level.n}",
    }


def _cmd_verify(args: argparse.Namespace) -> tuple[dict, int]:
    checks = args.checks
    fault = args.inject_fault
    report = _report(
        "verify",
        {
            "max_n": args.max_n,
            "checks": ",".join(checks),
            "format": args.format,
            **({"inject_fault": f"{fault[0]}:{fault[1]}"} if fault else {}),
        },
    )

    def levels():
        started = time.perf_counter()
        level = None
        for n in range(1, args.max_n + 1):
            if (
                args.time_budget is not None
                and time.perf_counter() - started > args.time_budget
            ):
                raise TimeBudgetError(f"construction of level {n}", args.time_budget)
            level = (
                initial_level(cap=args.cap)
                if level is None
                else next_level(level, cap=args.cap, chunk_size=args.chunk_size)
            )
            if fault and fault[0] == n:
                level = inject_block_fault(level, fault[1])
            yield level

    verdicts: list[dict] = []
    try:
        if args.parallel:
            # verifications of already-built levels are pure and independent;
            # retaining the levels trades memory for concurrency
            built = list(levels())
            tasks = [(lvl, check) for lvl in built for check in checks]
            with ThreadPoolExecutor(max_workers=os.cpu_count()) as pool:
                verdicts = list(
                    pool.map(lambda t: _run_check(t[0], t[1], args.chunk_size), tasks)
                )
        else:
            for level in levels():
                for check in checks:
                    verdicts.append(_run_check(level, check, args.chunk_size))
    except TimeBudgetError as exc:
        verdicts.append(
            {"check": "build", "n": len(verdicts) // len(checks) + 1,
             "passed": False, "kind": "resource", "detail": str(exc),
             "name": "build"}
        )
    verdicts.sort(
        key=lambda v: (
            v["n"], checks.index(v["check"]) if v["check"] in checks else len(checks)
        )
    )

    failures = sum(1 for v in verdicts if not v["passed"])
    resource_hits = sum(1 for v in verdicts if v["kind"] == "resource")
    report["verdicts"] = verdicts

    if args.format == "csv":
        text = _render_csv(report, ["check", "n", "passed", "kind", "detail"])
    elif args.format == "json":
        text = _render_json(report)
    else:
        lines = [
            f"{v['check']:>8} n={v['n']:<3} {'pass' if v['passed'] else 'FAIL'}  {v['detail']}"
            for v in verdicts
        ]
        lines.append(
            f"{len(verdicts)} checks, {failures} failed"
            + (f" ({resource_hits} resource)" if resource_hits else "")
        )
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return report, 0 if failures == 0 else 1


def _cmd_spectral(args: argparse.Namespace) -> tuple[dict, int]:
    report = _report(
        "spectral", {"tolerance": args.tolerance, "format": args.format}
    )
    alpha = pisot_root(args.tolerance)
    spectrum = limit_matrix_spectrum((3 - alpha) / 2, tolerance=args.tolerance)
    lam1, lam2 = spectrum.eigenvalues
    alpha_residual = abs(alpha**3 - 2 * alpha**2 - 1)
    row = {
        "alpha": alpha,
        "limit_density": spectrum.limit_density,
        "matrix": [[3.0, -2.0], [float(spectrum.density), float(2 - 2 * spectrum.density)]],
        "trace": float(spectrum.trace),
        "determinant": float(spectrum.determinant),
        "eigenvalue_1": lam1,
        "eigenvalue_2": lam2,
        "alpha_residual": alpha_residual,
        "eigenvalue_1_gap": abs(lam1 - alpha),
        "eigenvalue_2_gap": abs(lam2 - 2.0),
    }
    report["rows"] = [row]

    if args.format == "csv":
        out = io.StringIO()
        out.write(_meta_line(report) + "\n")
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in row.items():
            writer.writerow([key, json.dumps(value) if key == "matrix" else repr(value)])
        text = out.getvalue()
    elif args.format == "json":
        text = _render_json(report)
    else:
        m = row["matrix"]
        text = (
            f"alpha            = {alpha!r}  (root of x^3 - 2x^2 - 1)\n"
            f"alpha residual   = {alpha_residual:.3e}\n"
            f"limit density    = {spectrum.limit_density!r}  ((3 - alpha)/2)\n"
            f"limit matrix     = [[{m[0][0]}, {m[0][1]}], "
            f"[{_fmt(m[1][0])}, {_fmt(m[1][1])}]]\n"
            f"char coefficients: trace = {_fmt(row['trace'])}, "
            f"determinant = {_fmt(row['determinant'])}\n"
            f"eigenvalues      = ({lam1!r}, {lam2!r})\n"
            f"eigenvalue gaps  = ({row['eigenvalue_1_gap']:.3e} vs alpha, "
            f"{row['eigenvalue_2_gap']:.3e} vs 2)\n"
        )
    _emit(text, args.output)
    return report, 0


def _cmd_explore(args: argparse.Namespace) -> tuple[dict, int]:
    alphabet = args.alphabet
    report = _report(
        "explore",
        {
            "alphabet": f"{alphabet.a},{alphabet.b}",
            "max_block": args.max_block,
            "max_pillar": args.max_pillar,
            "depth": args.depth,
            "format": args.format,
        },
    )
    workers = os.cpu_count() if args.parallel else None
    candidates = detect(
        alphabet,
        args.max_block,
        args.max_pillar,
        args.depth,
        cap=args.cap,
        workers=workers,
    )
    report["rows"] = [
        {
            "block_len": c.block_len,
            "pillar_len": len(c.pillar),
            "pillar": " ".join(str(s) for s in c.pillar),
            "verified_depth": c.verified_depth,
        }
        for c in candidates
    ]

    if args.format == "csv":
        text = _render_csv(
            report, ["block_len", "pillar_len", "pillar", "verified_depth"]
        )
    elif args.format == "json":
        text = _render_json(report)
    else:
        if report["rows"]:
            lines = [
                f"block_len={r['block_len']:<6} pillar=({r['pillar']}) "
                f"verified_depth={r['verified_depth']}"
                for r in report["rows"]
            ]
        else:
            lines = ["no candidates within bounds"]
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return report, 0


# --- argument parsing ------------------------------------------------------

def _alphabet(text: str) -> Alphabet:
    try:
        a, b = (int(part) for part in text.split(","))
        return Alphabet(a, b)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(
            f"expected two distinct symbols like '1,3', got {text!r}: {exc}"
        )


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _check_list(text: str) -> tuple[str, ...]:
    names = _CHECKS if text == "all" else tuple(text.split(","))
    for name in names:
        if name not in _CHECKS:
            raise argparse.ArgumentTypeError(
                f"unknown check {name!r}; valid: {', '.join(_CHECKS)} or 'all'"
            )
    return names


def _fault(text: str) -> tuple[int, int]:
    try:
        n, pos = (int(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected LEVEL:POSITION like '3:17', got {text!r}"
        )
    if n < 1 or pos < 1:
        raise argparse.ArgumentTypeError("level and position must be >= 1")
    return n, pos


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--format", choices=("plain", "csv", "json"), default="plain",
        help="output format (default plain)",
    )
    sub.add_argument("--output", help="write the report to this path instead of stdout")
    sub.add_argument(
        "--cap", type=_positive, default=DEFAULT_CAP,
        help=f"materialization cap in symbols (default {DEFAULT_CAP})",
    )
    sub.add_argument(
        "--chunk-size", type=_positive, default=DEFAULT_CHUNK,
        help=f"streaming chunk size in symbols (default {DEFAULT_CHUNK})",
    )
    sub.add_argument(
        "--time-budget", type=float, default=None,
        help="abort streaming computations after this many seconds (default none)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kolakoski",
        description=(
            "Block-pillar construction, verification and analysis of "
            "self-run-length-encoding sequences K(a,b)."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"kolakoski {__version__}"
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("generate", help="print the first n symbols of K(a,b)")
    p.add_argument("--alphabet", type=_alphabet, default=Alphabet(1, 3))
    p.add_argument("--n", type=_positive, required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_generate)

    p = subs.add_parser("stats", help="exact per-level length/count/density table")
    p.add_argument("--max-n", type=_positive, required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_stats)

    p = subs.add_parser("verify", help="run structural checks for levels 1..max-n")
    p.add_argument("--max-n", type=_positive, required=True)
    p.add_argument(
        "--checks", type=_check_list, default=_CHECKS,
        help="comma list from {prefix,step,lemma,identity} or 'all'",
    )
    p.add_argument(
        "--inject-fault", type=_fault, default=None, metavar="LEVEL:POS",
        help="test hook: flip one block symbol before verification",
    )
    p.add_argument(
        "--parallel", action="store_true",
        help="run independent level checks concurrently (retains all levels)",
    )
    _add_common(p)
    p.set_defaults(handler=_cmd_verify)

    p = subs.add_parser("spectral", help="growth-rate constants and matrix spectrum")
    p.add_argument("--tolerance", type=float, default=1e-12)
    _add_common(p)
    p.set_defaults(handler=_cmd_spectral)

    p = subs.add_parser("explore", help="search K(a,b) for block-pillar seeds")
    p.add_argument("--alphabet", type=_alphabet, required=True)
    p.add_argument("--max-block", type=_positive, required=True)
    p.add_argument("--max-pillar", type=_positive, default=8)
    p.add_argument("--depth", type=_positive, default=3)
    p.add_argument("--parallel", action="store_true")
    _add_common(p)
    p.set_defaults(handler=_cmd_explore)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _, code = args.handler(args)
        return code
    except KolakoskiError as exc:
        print(f"kolakoski: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
