"""Command-line front end: ``lgrig <command> --l <spec> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from typing import Any

from lgrig.classifier import (
    DEFAULT_ALPHA_GRID,
    DEFAULT_TOLERANCE,
    KINDS,
    criterion_trace,
    exponent_estimate,
    square_relation_check,
)
from lgrig.errors import GrigError, OutOfRange
from lgrig.harness import FAIL, check_ids, run_suite
from lgrig.language import factors, right_special_words
from lgrig.lspec import parse_lspec
from lgrig.metrics import (
    DEFAULT_POWER_CAP_LENGTH,
    M,
    bordered_count,
    complexity,
    complexity_formula,
    lemma_r_bounds,
    max_power,
    repetitive,
    repulsiveness,
    word_power,
)
from lgrig.session import DEFAULT_MEMORY_BUDGET, MEMORY_ENV, SubshiftSession
from lgrig.words import level_for_length

DEFAULT_DEPTH = 20

SPEC_HELP = (
    "l-sequence: const:k | geom:b | poly:c_d,...,c_0 | list:v1,v2,...[:repeat-last] | ex3 | ex4. "
    "ex3 uses l_n = 2^{n/2} - 1 (n even), 1 (n odd); ex4 uses 2^{n/2} - n (n even), n (n odd) "
    "and may contain zeros. Both fix the bounded sequence b_n = 1."
)


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with status 1 like every other failure."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _cell(value: Any) -> Any:
    """JSON-ready value; CSV and table cells are str() of this."""
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if value is None or isinstance(value, (int, str, bool, list, dict)):
        return value
    return str(value)


def _text(value: Any) -> str:
    value = _cell(value)
    if value is None:
        return ""
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, ensure_ascii=False)
    return str(value)


def _power_cap(args, n: int) -> int:
    return max(1, args.power_cap // n)


# commands -------------------------------------------------------------------


def _cmd_prefix(session, args):
    return [{"n": args.n, "prefix": session.eta_prefix(args.n)}]


def _cmd_factors(session, args):
    table = factors(session, args.n)
    return [{"word": w, "extensions": "".join(sorted(e))} for w, e in sorted(table.extensions.items())]


def _cmd_complexity(session, args):
    rows = []
    for n in range(1, args.n_max + 1):
        p = complexity(session, n)
        try:
            f = complexity_formula(session.spec, n)
        except OutOfRange:
            f = None
        rows.append({"n": n, "p_oracle": p, "p_formula": f, "delta": None if f is None else p - f})
    return rows


def _cmd_formula_complexity(session, args):
    spec = session.spec
    rows = []
    for n in range(M(spec, 1) + 1, args.n_max + 1):
        m = 1
        while n >= M(spec, m + 1) + 1:
            m += 1
        r = n - M(spec, m) - 1
        rows.append({"n": n, "m": m, "r": r, "p_formula": complexity_formula(spec, n)})
    return rows


def _cmd_power(session, args):
    if args.word:
        return [{"word": args.word, "Q": word_power(session, args.word, _power_cap(args, len(args.word)))}]
    return [{"n": n, "Q": max_power(session, n, _power_cap(args, n))} for n in range(2, args.n_max + 1)]


def _cmd_repetitive(session, args):
    rows = []
    for n in range(1, args.n_max + 1):
        q = max_power(session, n, _power_cap(args, n))
        row = {"n": n, "R": repetitive(session, n), "nQ": n * q if isinstance(q, int) else None}
        lo = hi = None
        if n == 2 ** (level_for_length(n) + 1) - 1 and not session.spec.weak_zero:
            lo, hi = lemma_r_bounds(session.spec, level_for_length(n))
        row["lemma_lower"], row["lemma_upper"] = lo, hi
        rows.append(row)
    return rows


def _cmd_repulsive(session, args):
    return [
        {
            "n": n,
            "alpha": args.alpha,
            "A_alpha": repulsiveness(session, args.alpha, n),
            "bordered_count": bordered_count(session, n),
        }
        for n in range(1, args.n_max + 1)
    ]


def _cmd_special(session, args):
    rows = []
    for n in range(1, args.n_max + 1):
        special = right_special_words(session, n)
        rows.append({"n": n, "count": len(special), "words": " ".join(f"{w}:{s}" for w, s in special)})
    return rows


def _cmd_classify(session, args):
    spec = session.spec
    grid = args.alpha_grid or DEFAULT_ALPHA_GRID
    rows = []
    for kind in KINDS:
        estimate = None if spec.weak_zero else exponent_estimate(spec, kind, args.depth).last
        for alpha in grid:
            trace = criterion_trace(spec, alpha, kind, args.depth)
            rows.append(
                {
                    "kind": kind,
                    "alpha": alpha,
                    "verdict": trace.verdict,
                    "last_term": trace.terms[-1],
                    "sup_abs": trace.sup_abs[-1],
                    "estimate": estimate,
                    "note": "",
                }
            )
    if not spec.weak_zero:
        rel = square_relation_check(spec, args.depth, args.tolerance, grid)
        rows.append(
            {
                "kind": "square-relation",
                "alpha": None,
                "verdict": rel.status,
                "last_term": None,
                "sup_abs": None,
                "estimate": None,
                "note": rel.reason,
            }
        )
    return rows


COMMANDS = {
    "prefix": _cmd_prefix,
    "factors": _cmd_factors,
    "complexity": _cmd_complexity,
    "formula-complexity": _cmd_formula_complexity,
    "power": _cmd_power,
    "repetitive": _cmd_repetitive,
    "repulsive": _cmd_repulsive,
    "special": _cmd_special,
    "classify": _cmd_classify,
}


# output -------------------------------------------------------------------


def _render(command: str, spec: str, rows: list[dict], fmt: str, key: str = "rows") -> str:
    if fmt == "json":
        body = {"command": command, "l_spec": spec, key: [{k: _cell(v) for k, v in r.items()} for r in rows]}
        return json.dumps(body, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if rows:
            writer.writerow(rows[0].keys())
            for r in rows:
                writer.writerow(_text(v) for v in r.values())
        return buf.getvalue()
    if command == "prefix":
        return rows[0]["prefix"] + "\n"
    if not rows:
        return ""
    cols = list(rows[0])
    cells = [[_text(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _report_rows(reports, fmt: str) -> list[dict]:
    if fmt == "json":
        return [r.to_dict() for r in reports]
    return [
        {"check_id": r.check_id, "status": r.status, "reason": r.reason or "", "witness": r.witness}
        for r in reports
    ]


# argument parsing -----------------------------------------------------------


def _alpha_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(Fraction(t)) if "/" in t else float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}") from None


def _alpha(text: str):
    value = Fraction(text)
    return int(value) if value.denominator == 1 else float(value)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--l", dest="l_spec", required=True, metavar="SPEC", help=SPEC_HELP)
    common.add_argument("--format", choices=("table", "csv", "json"), default="table")
    common.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")
    common.add_argument(
        "--memory-budget",
        type=int,
        default=None,
        metavar="BYTES",
        help=f"bytes for materialised words (default {DEFAULT_MEMORY_BUDGET}, or ${MEMORY_ENV})",
    )
    common.add_argument(
        "--power-cap",
        type=int,
        default=DEFAULT_POWER_CAP_LENGTH,
        metavar="LENGTH",
        help="longest power v^p tried when computing Q (default 2^20 letters)",
    )
    common.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="criterion depth (default 20)")

    parser = _Parser(prog="lgrig", description="Exact finite-scale computations on l-Grigorchuk subshifts.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("prefix", parents=[common], help="first n letters of eta")
    p.add_argument("--n", type=int, required=True)
    p = sub.add_parser("factors", parents=[common], help="all factors of length n with right extensions")
    p.add_argument("--n", type=int, required=True)
    for name, text in (
        ("complexity", "p(n) by window counting next to the closed form"),
        ("formula-complexity", "the closed form for p(n) with its (m, r) decomposition"),
        ("power", "Q(n) for n = 2..n-max, or Q(v) with --word"),
        ("repetitive", "R(n) with n Q(n) and the printed bracket at dyadic n"),
        ("repulsive", "A_{alpha,n} and the number of bordered factors"),
        ("special", "right special factors per length"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--n-max", type=int, required=name != "power")
        if name == "power":
            p.add_argument("--word", help="compute Q(word) instead")
        if name == "repulsive":
            p.add_argument("--alpha", type=_alpha, default=1)
    p = sub.add_parser("classify", parents=[common], help="boundedness criteria and exponent estimates")
    p.add_argument("--alpha-grid", type=_alpha_list, default=None, help="comma-separated alphas (default 1,1.5,2,3,4)")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p = sub.add_parser("verify", parents=[common], help="run named checks")
    p.add_argument("--suite", default="all", help="'all' or comma-separated check ids")
    p.add_argument("--workers", type=int, default=1)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "power" and args.n_max is None and not args.word:
        parser.error("power needs --n-max or --word")
    try:
        spec = parse_lspec(args.l_spec)
        session = SubshiftSession(spec, memory_budget=args.memory_budget)
        code = 0
        if args.command == "verify":
            ids = None if args.suite == "all" else [s.strip() for s in args.suite.split(",") if s.strip()]
            if ids is not None:
                unknown = sorted(set(ids) - set(check_ids()))
                if unknown:
                    parser.error(f"unknown checks {unknown}; known: {', '.join(check_ids())}")
            reports = run_suite(session, ids, workers=args.workers)
            text = _render(args.command, str(spec), _report_rows(reports, args.format), args.format, "reports")
            code = 2 if any(r.status == FAIL for r in reports) else 0
        else:
            rows = COMMANDS[args.command](session, args)
            text = _render(args.command, str(spec), rows, args.format)
    except (GrigError, ValueError) as exc:
        print(f"lgrig: error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
