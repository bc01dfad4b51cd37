"""Command-line entry point: ``ivt <subcommand> [options]``.

Exit codes: 0 success, 2 invalid input, 3 enumeration budget exceeded,
4 unstable distance search, 5 I/O failure. Errors print one line to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Sequence

from . import dynamics, metric, rules
from .digits import check_base, to_digits
from .errors import EnumerationTooLargeError, InvalidTableError, IVTError, UnstableMetricError
from .rules import Rule
from .transform import KRule, evaluate_k, iterate

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_UNSTABLE = 4
EXIT_IO = 5

JSON_SAFE_INT = 2**53


def json_value(obj: Any) -> Any:
    """Make ints beyond double precision into decimal strings, recursively."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return obj if abs(obj) < JSON_SAFE_INT else str(obj)
    if isinstance(obj, dict):
        return {k: json_value(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_value(v) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(json_value(obj), separators=(",", ":"))


def parse_table(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(";", ",").split(",") if t.strip())
    except ValueError:
        raise InvalidTableError(f"malformed table literal {text!r}") from None


def select_rule(p: int, index: int | None, table: str | None) -> Rule:
    if (index is None) == (table is None):
        raise InvalidTableError("give exactly one of a rule index or a table")
    if index is not None:
        return rules.rule_from_index(p, index)
    return rules.rule_from_table(p, parse_table(table))


def rule_summary(r: Rule) -> dict:
    return {
        "p": r.p,
        "index": r.index,
        "table": list(r.table),
        "linear": rules.is_linear(r),
        "bijective": rules.is_bijective(r),
        "basis_coefficients": list(rules.decompose_basis(r).coefficients),
    }


def format_human(obj: Any) -> str:
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        return "\n".join(f"{str(k).ljust(width)}  {_human_scalar(v)}" for k, v in obj.items())
    return _human_scalar(obj)


def _human_scalar(v: Any) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_human_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return dumps(v)
    return str(v)


def emit(args: argparse.Namespace, obj: Any, human: str | None = None) -> None:
    if args.json:
        print(dumps(obj))
    else:
        print(human if human is not None else format_human(obj))


def emit_report(records: Sequence[Any], fmt: str, path: str) -> None:
    """Write census records (CSV or JSON) or an audit dict (JSON) to ``path``.

    Output is byte-stable: UTF-8, LF line endings, no timestamps.
    """
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(dynamics.CSV_COLUMNS)
        for rec in records:
            writer.writerow(rec.csv_row())
        text = buf.getvalue()
    elif fmt == "json":
        payload = records if isinstance(records, dict) else [r.to_dict() for r in records]
        text = json.dumps(json_value(payload), indent=2, sort_keys=False) + "\n"
    else:
        raise IVTError(f"unknown report format {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_digits(args):
    d = to_digits(args.p, args.x)
    out = {"p": args.p, "x": args.x, "digits_lsd_first": list(d.digits), "msd_first": d.msd_first()}
    emit(args, out, f"{d.msd_first()}  (MSD first; LSD-first digits {list(d.digits)})")


def cmd_rule(args):
    emit(args, rule_summary(select_rule(args.p, args.rule, args.table)))


def cmd_eval(args):
    xs = args.x
    if not xs:
        raise IVTError("at least one --x is required")
    if args.k == 1:
        r = select_rule(args.p, args.rule, args.table)
        if len(xs) != 1:
            raise IVTError(f"k=1 takes one --x, got {len(xs)}")
        out = iterate(r, args.iterate, xs[0])
        index = r.index
    else:
        if args.table is not None:
            kr = KRule(args.p, args.k, parse_table(args.table))
        elif args.rule is not None:
            kr = KRule.from_index(args.p, args.k, args.rule)
        else:
            raise IVTError("give a rule index or a table")
        if args.iterate != 1:
            raise IVTError("--iterate is only defined for k=1")
        out = evaluate_k(kr, xs)
        index = kr.index
    doc = {"p": args.p, "k": args.k, "rule": index, "input": list(xs), "output": out}
    if args.iterate != 1:
        doc["iterations"] = args.iterate
    emit(args, doc, str(out))


def cmd_algebra(args):
    op = args.op
    if op == "basis":
        emit(args, {"op": op, "p": args.p,
                    "basis": [{"index": b.index, "table": list(b.table)}
                              for b in rules.basis_rules(args.p)]})
        return
    r = select_rule(args.p, args.rule, args.table)
    if op in ("add", "mul"):
        other = select_rule(args.p, args.other, args.other_table)
        res = rules.add_rules(r, other) if op == "add" else rules.mul_rules(r, other)
        emit(args, {"op": op, "p": args.p, "left": r.index, "right": other.index,
                    "result": res.index, "table": list(res.table)})
    elif op == "neg":
        res = rules.neg_rule(r)
        emit(args, {"op": op, "p": args.p, "rule": r.index, "result": res.index,
                    "table": list(res.table)})
    elif op == "scalar":
        if args.scalar is None:
            raise IVTError("scalar requires --scalar")
        res = rules.scalar_mul(args.scalar, r)
        emit(args, {"op": op, "p": args.p, "scalar": args.scalar, "rule": r.index,
                    "result": res.index, "table": list(res.table)})
    elif op == "decompose":
        coeffs = rules.decompose_basis(r)
        emit(args, {"op": op, "p": args.p, "rule": r.index,
                    "basis_indices": [b.index for b in rules.basis_rules(args.p)],
                    "coefficients": list(coeffs.coefficients)})
    elif op == "embed":
        res = rules.embed_extended(r) if args.extended else rules.embed_basis(r)
        emit(args, {"op": op, "p": args.p, "rule": r.index, "extended": args.extended,
                    "target_p": res.p, "result": res.index, "table": list(res.table)})


def cmd_norm(args):
    r = select_rule(args.p, args.rule, args.table)
    emit(args, {"p": args.p, "rule": r.index, "norm": metric.norm(r, args.digits_bound)})


def cmd_dist(args):
    a = select_rule(args.p, args.rule, args.table)
    b = select_rule(args.p, args.other, args.other_table)
    d, w = metric.distance_with_witness(a, b, args.digits_bound)
    emit(args, {"p": args.p, "rule": a.index, "other": b.index, "distance": d,
                "witness": None if w < 0 else w, "digits_bound": args.digits_bound})


def cmd_triangle(args):
    if args.exhaustive:
        violations = metric.check_triangle(args.p, "exhaustive", digit_bound=args.digits_bound)
        checked = (args.p**args.p) ** 3
    else:
        violations = metric.check_triangle(
            args.p, "sampled", samples=args.samples, digit_bound=args.digits_bound, seed=args.seed
        )
        checked = args.samples
    report = {"triples_checked": checked, "violations": [v.to_dict() for v in violations]}
    if args.out:
        emit_report(report, "json", args.out)
    print(dumps(report))


def cmd_derivative(args):
    r = select_rule(args.p, args.rule, args.table)
    if args.sweep is not None:
        reports = [rep.to_dict() for rep in metric.derivative_sweep(r, args.c, args.sweep)]
        if args.json:
            print(dumps(reports))
        else:
            print(f"{'r':>4}  {'ld':>12}  {'rd':>12}  differentiable")
            for rep in reports:
                print(f"{rep['r']:>4}  {rep['ld']:>12}  {rep['rd']:>12}  "
                      f"{str(rep['differentiable']).lower()}")
        return
    emit(args, metric.derivative_at(r, args.c, args.r).to_dict())


def cmd_orbit(args):
    r = select_rule(args.p, args.rule, args.table)
    emit(args, dynamics.orbit(r, args.x0).to_dict())


def cmd_classify(args):
    r = select_rule(args.p, args.rule, args.table)
    c = dynamics.classify_rule(r, args.bound)
    emit(args, {
        "p": r.p,
        "rule": r.index,
        "bound": c.bound,
        "reaches_zero_all": c.reaches_zero_all,
        "num_fixed_points": len(c.fixed_points),
        "num_distinct_cycles": len(c.cycles),
        "max_transient_length": c.max_transient_length,
        "cycles": [list(cy) for cy in c.cycles[: args.max_cycles]],
    })


def cmd_census(args):
    records = dynamics.census(args.p, args.bound, workers=args.workers)
    emit_report(records, args.format, args.out)
    collatz = sum(r.reaches_zero_all for r in records)
    print(f"census p={args.p} bound={args.bound}: {len(records)} rules, "
          f"{collatz} reach zero from every start, written to {args.out}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a single JSON document")

    def with_rule(sp: argparse.ArgumentParser, other: bool = False) -> None:
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--rule", type=int, help="rule index")
        sp.add_argument("--table", help='truth table, LSD digit first, e.g. "2,1,0"')
        if other:
            sp.add_argument("--other", type=int, help="second rule index")
            sp.add_argument("--other-table", help="second rule table")

    parser = argparse.ArgumentParser(prog="ivt",
                                     description="p-adic integral value transformations")
    # subparser defaults would overwrite a shared dest, so the top-level flag gets its own
    parser.add_argument("--json", dest="json_global", action="store_true",
                        help="print a single JSON document")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("digits", parents=[common], help="base-p expansion of an integer")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--x", type=int, required=True)
    sp.set_defaults(func=cmd_digits)

    sp = sub.add_parser("rule", parents=[common], help="describe a rule")
    with_rule(sp)
    sp.set_defaults(func=cmd_rule)

    sp = sub.add_parser("eval", parents=[common], help="evaluate or iterate a rule")
    with_rule(sp)
    sp.add_argument("--x", type=int, action="append", help="input (repeat for k > 1)")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--iterate", type=int, default=1, metavar="N")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("algebra", parents=[common], help="ring and vector-space operations")
    sp.add_argument("op", choices=["add", "mul", "neg", "scalar", "decompose", "basis", "embed"])
    with_rule(sp, other=True)
    sp.add_argument("--scalar", type=int)
    sp.add_argument("--extended", action="store_true", help="embed: use the linear extension")
    sp.set_defaults(func=cmd_algebra)

    sp = sub.add_parser("norm", parents=[common], help="norm of a rule")
    with_rule(sp)
    sp.add_argument("--digits-bound", type=int, default=metric.DEFAULT_DIGIT_BOUND)
    sp.set_defaults(func=cmd_norm)

    sp = sub.add_parser("dist", parents=[common], help="distance between two rules")
    with_rule(sp, other=True)
    sp.add_argument("--digits-bound", type=int, default=metric.DEFAULT_DIGIT_BOUND)
    sp.set_defaults(func=cmd_dist)

    sp = sub.add_parser("triangle-check", parents=[common], help="audit the triangle inequality")
    sp.add_argument("--p", type=int, required=True)
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=int)
    sp.add_argument("--digits-bound", type=int, default=metric.DEFAULT_DIGIT_BOUND)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_triangle)

    sp = sub.add_parser("derivative", parents=[common], help="discrete left/right derivatives")
    with_rule(sp)
    sp.add_argument("--c", type=int, required=True)
    sp.add_argument("--r", type=int, default=2)
    sp.add_argument("--sweep", type=int, metavar="RMAX")
    sp.set_defaults(func=cmd_derivative)

    sp = sub.add_parser("orbit", parents=[common], help="orbit of a start value")
    with_rule(sp)
    sp.add_argument("--x0", type=int, required=True)
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("classify", parents=[common], help="orbit classification of one rule")
    with_rule(sp)
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--max-cycles", type=int, default=dynamics.SAMPLE_CYCLES)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("census", parents=[common], help="classify every rule at base p")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_census)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.json = args.json or args.json_global
    try:
        if hasattr(args, "p"):
            check_base(args.p)
        args.func(args)
    except EnumerationTooLargeError as exc:
        print(f"error: budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except UnstableMetricError as exc:
        print(f"error: unstable-metric: {exc}", file=sys.stderr)
        return EXIT_UNSTABLE
    except (IVTError, ValueError) as exc:
        print(f"error: invalid-input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
