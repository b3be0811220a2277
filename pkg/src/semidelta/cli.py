"""Command line front end.

Exit status: 0 on success, 1 when a law check fails, 2 for usage and
parse errors, 3 when a size or precision guard stops the computation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bootstrap as B
from . import groupoids as G
from . import suites
from .errors import GuardError, SemiDeltaError, UsageError
from .groups import validate_group
from .padic import DEFAULT_PRECISION, Prime, format_scalar, try_invert, valuation
from .spaces import expr as E
from .spaces.evaluate import Height, Rational, cardinality, dimension, evaluate_rig, profile
from .spaces.parse import parse
from .spaces.rig import parse_rig, rig_delta

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _prime(text):
    try:
        return Prime(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _natural(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {n}")
    return n


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", "-p", type=_prime, default=Prime(2))
    common.add_argument("--height", type=_natural)
    common.add_argument("--ring", choices=("q", "en"),
                        help="rationals or the height-n ring (default: en when --height is given)")
    common.add_argument("--precision", type=_positive, default=DEFAULT_PRECISION)
    common.add_argument("--mode", choices=("exact", "truncated"), default="exact")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = _Parser(prog="semidelta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_ in (("card", "cardinality of a space expression"),
                        ("dim", "dimension |A| |Om A| of a loop-space expression"),
                        ("delta", "delta of an element of the free rig")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("expr")

    p = sub.add_parser("bootstrap", parents=[common], help="valuation descent by wreaths")
    p.add_argument("--target", "-m", type=_positive, required=True)

    p = sub.add_parser("sweep", parents=[common], help="descent over a grid of (p, n, m)")
    p.add_argument("--primes", default="2,3")
    p.add_argument("--n-max", type=_positive, default=4)
    p.add_argument("--m-max", type=_positive, default=3)

    p = sub.add_parser("check", parents=[common], help="run a seeded law suite")
    p.add_argument("--suite", choices=(*suites.SUITES, "all"), default="all")

    p = sub.add_parser("groupoid", parents=[common], help="invariants of B G for a group table")
    p.add_argument("table", help="JSON multiplication table, a file holding one, or - for stdin")
    p.add_argument("--construct", choices=("group", "free-loop", "wreath"), default="group")
    p.add_argument("--export", action="store_true", help="print the groupoid itself as JSON")
    return parser


# helpers -----------------------------------------------------------------------


def _target(args):
    ring = args.ring or ("en" if args.height is not None else "q")
    if ring == "q":
        return Rational()
    if args.height is None:
        raise UsageError("--ring en needs --height")
    return Height(args.height, mode=args.mode, precision=args.precision)


def _scalar_json(x):
    return format_scalar(x)


def _value_report(args, expr_text, normal, value, rule):
    target = _target(args)
    v = valuation(value, args.prime)
    return {
        "command": args.command,
        "expr": expr_text,
        "normal_form": E.to_text(normal),
        "prime": int(args.prime),
        "target": str(target),
        "value": _scalar_json(value),
        "valuation": v.to_json(),
        "invertible": try_invert(value) is not None,
        "rule": rule,
        "seed": args.seed,
    }


def _card_rule(space):
    if isinstance(space, E.EM):
        return "em-height-cardinality"
    if isinstance(space, E.Wreath):
        return "wreath-delta-identity"
    return "additive-multiplicative-extension"


def _human(report, keys):
    return "\n".join(f"{k}: {_fmt(report[k])}" for k in keys if k in report)


def _fmt(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


# commands ----------------------------------------------------------------------


def cmd_card(args):
    space = parse(args.expr, args.prime)
    value = cardinality(space, args.prime, _target(args))
    report = _value_report(args, args.expr, space, value, _card_rule(space))
    report["profile"] = profile(space, args.prime).to_json()
    return EXIT_OK, report, ("normal_form", "target", "value", "valuation", "invertible")


def cmd_dim(args):
    space = parse(args.expr, args.prime)
    value = dimension(space, args.prime, _target(args))
    report = _value_report(args, args.expr, space, value, "dimension-is-free-loop-cardinality")
    report["free_loop"] = E.to_text(E.free_loop(space))
    return EXIT_OK, report, ("normal_form", "free_loop", "target", "value", "valuation", "invertible")


def cmd_delta(args):
    x = parse_rig(args.expr, args.prime)
    d = rig_delta(x)
    target = _target(args)
    report = {
        "command": "delta",
        "expr": args.expr,
        "prime": int(args.prime),
        "element": str(x),
        "delta": str(d),
        "target": str(target),
        "value": _scalar_json(evaluate_rig(x, target)),
        "delta_value": _scalar_json(evaluate_rig(d, target)),
        "rule": "delta-of-space-is-bcp-product-minus-wreath",
        "seed": args.seed,
    }
    return EXIT_OK, report, ("element", "delta", "target", "value", "delta_value")


def cmd_bootstrap(args):
    if args.height is None:
        raise UsageError("bootstrap needs --height")
    trace = B.descend(args.prime, args.height, args.target, args.mode, args.precision)
    report = trace.to_json()
    if trace.ok:
        status = EXIT_OK
    elif trace.verdict.reason == "precision-exhausted":
        status = EXIT_GUARD
    else:
        # any other failed trace means the arithmetic is wrong
        status = EXIT_FAILED
    return status, report, None


def _bootstrap_text(report):
    lines = []
    for i, s in enumerate(report["steps"]):
        lines.append(f"A_{i} = {s['space']}: |A_{i}| = {s['value']}, v = {s['valuation']}")
    verdict = report["verdict"]
    desc = verdict["kind"]
    if "space" in verdict:
        desc += f" {verdict['space']}"
    if "reason" in verdict:
        desc += f" ({verdict['reason']})"
    lines.append(f"{desc}; length {report['observed_length']} "
                 f"(predicted {report['predicted_length']})")
    return "\n".join(lines)


def cmd_sweep(args):
    try:
        primes = [Prime(int(t)) for t in args.primes.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"--primes: {exc}") from None
    report = B.sweep(primes, args.n_max, args.m_max, args.mode, args.precision)
    out = report.to_json()
    out["seed"] = args.seed
    out["_text"] = report.to_text()
    return (EXIT_OK if report.ok else EXIT_FAILED), out, None


def cmd_check(args):
    laws = suites.run_suite(args.suite, args.prime, args.seed, args.precision)
    failures = sum(len(law["failures"]) for law in laws)
    report = {
        "command": "check",
        "suite": args.suite,
        "prime": int(args.prime),
        "seed": args.seed,
        "laws": laws,
        "failures": failures,
        "ok": failures == 0,
    }
    return (EXIT_OK if failures == 0 else EXIT_FAILED), report, None


def _check_text(report):
    width = max((len(law["law"]) for law in report["laws"]), default=0)
    lines = [f"{law['law']:<{width}}  {law['instances']:>5} instances  "
             f"{'ok' if not law['failures'] else str(len(law['failures'])) + ' FAILED'}"
             for law in report["laws"]]
    for law in report["laws"]:
        for f in law["failures"][:3]:
            lines.append(f"  {law['law']} seed={f['seed']}: {f['description']}")
    lines.append(f"{report['failures']} failures")
    return "\n".join(lines)


def _read_table(arg):
    if arg == "-":
        text = sys.stdin.read()
    elif arg.lstrip().startswith("["):
        text = arg
    else:
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {arg}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"group table is not valid JSON: {exc}") from None
    return validate_group(data)[0]


def cmd_groupoid(args):
    table = _read_table(args.table)
    A = G.from_group(table, check=False)
    if args.construct == "free-loop":
        A = G.free_loop_groupoid(A)
    elif args.construct == "wreath":
        A = G.wreath_groupoid(A, args.prime)
    iso = A.iso_classes()
    report = {
        "command": "groupoid",
        "construct": args.construct,
        "prime": int(args.prime),
        "group_order": len(table),
        "objects": A.n_objects,
        "morphisms": A.n_morphisms,
        "components": len(iso),
        "automorphism_orders": list(iso.aut_order),
        "cardinality": _scalar_json(G.groupoid_cardinality(A)),
        "seed": args.seed,
    }
    status = EXIT_OK
    if args.construct == "group":
        check = G.verify_wreath_delta(A, args.prime)
        report["wreath_check"] = {"rule": "wreath-delta-identity", "lhs": _scalar_json(check.lhs),
                                  "rhs": _scalar_json(check.rhs), "ok": check.ok}
        status = EXIT_OK if check.ok else EXIT_FAILED
    if args.export:
        report["groupoid"] = A.to_json()
    return status, report, ("objects", "morphisms", "components", "automorphism_orders", "cardinality")


COMMANDS = {
    "card": cmd_card, "dim": cmd_dim, "delta": cmd_delta, "bootstrap": cmd_bootstrap,
    "sweep": cmd_sweep, "check": cmd_check, "groupoid": cmd_groupoid,
}


def _render_text(command, report, keys):
    if command == "bootstrap":
        return _bootstrap_text(report)
    if command == "sweep":
        return report["_text"]
    if command == "check":
        return _check_text(report)
    text = _human(report, keys)
    if "wreath_check" in report:
        wc = report["wreath_check"]
        text += f"\nwreath identity: {wc['lhs']} = {wc['rhs']}: {_fmt(wc['ok'])}"
    if "groupoid" in report:
        text += "\n" + json.dumps(report["groupoid"], sort_keys=True)
    return text


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        status, report, keys = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except GuardError as exc:
        print(f"guard: {exc}", file=stderr)
        return EXIT_GUARD
    except SemiDeltaError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    if args.json:
        report = {k: v for k, v in report.items() if not k.startswith("_")}
        print(json.dumps(report, sort_keys=True), file=stdout)
    else:
        print(_render_text(args.command, report, keys), file=stdout)
    return status


if __name__ == "__main__":
    sys.exit(main())
