"""Command-line driver.

Subcommands: ``closure``, ``worlds``, ``eval``, ``audit``, ``lattice``,
``sat``.  Every subcommand accepts ``--json`` for machine output and
``--bound N`` to override the exhaustiveness guards.

Exit codes: 0 success; 1 a queried formula was false and ``--expect-true``
was given; 2 parse or validation error; 3 an audited axiom failed.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .audit import AXIOM_IDS, R3_UNGUARDED, audit_all, audit_axiom
from .closure import closure
from .evaluate import eval_formula, sat_search
from .lattice import build_lattice, export_dot
from .model import GuiseLogicError, GuiseModel, validate_model
from .report import (
    audit_payload,
    closure_payload,
    eval_payload,
    lattice_payload,
    render_report,
    sat_payload,
    worlds_payload,
)
from .syntax import parse_model
from .worlds import select_worlds

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT_ERROR = 2
EXIT_AUDIT_FAILED = 3


def _load_model(path: str) -> GuiseModel:
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    name = path.rsplit("/", 1)[-1]
    if "." in name:
        name = name.rsplit(".", 1)[0]
    return validate_model(parse_model(text, name=name))


def _parse_target(model: GuiseModel, target: str) -> frozenset:
    target = target.strip()
    if target.startswith("{"):
        if not target.endswith("}"):
            raise GuiseLogicError(f"unterminated mark set {target!r}")
        marks = target[1:-1].replace(",", " ").split()
        return model.resolve_bundle(marks)
    return model.resolve_bundle(target)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report schema")
    common.add_argument(
        "--bound",
        type=int,
        default=None,
        help="override the exhaustiveness guards (universe size / audit domain)",
    )

    parser = argparse.ArgumentParser(
        prog="guiselogic",
        description="Evaluate, audit, and explore finite guise models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_closure = sub.add_parser("closure", parents=[common], help="close a bundle under the theory")
    p_closure.add_argument("file")
    p_closure.add_argument(
        "-g", "--guise", required=True, metavar="GUISE|{set}",
        help="declared guise name or literal mark set, e.g. '{a c}'",
    )

    p_worlds = sub.add_parser("worlds", parents=[common], help="list the selected worlds")
    p_worlds.add_argument("file")

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate formulas")
    p_eval.add_argument("file")
    group = p_eval.add_mutually_exclusive_group(required=True)
    group.add_argument("-e", "--formula", help="formula text")
    group.add_argument("--queries", action="store_true", help="run the file's named queries")
    p_eval.add_argument(
        "--expect-true", action="store_true",
        help="exit with status 1 if any evaluated formula is false",
    )

    p_audit = sub.add_parser("audit", parents=[common], help="audit axiom schemata")
    p_audit.add_argument("file")
    p_audit.add_argument(
        "--axioms", help=f"comma-separated subset of {','.join(AXIOM_IDS)} or {R3_UNGUARDED}"
    )

    p_lattice = sub.add_parser("lattice", parents=[common], help="build the closed-set lattice")
    p_lattice.add_argument("file")
    p_lattice.add_argument("--dot", action="store_true", help="emit a DOT Hasse diagram")

    p_sat = sub.add_parser("sat", parents=[common], help="search for a satisfying bundle")
    p_sat.add_argument("file")
    p_sat.add_argument("-e", "--formula", required=True, help="formula with one free guise variable")
    p_sat.add_argument(
        "--expect-true", action="store_true",
        help="exit with status 1 if the formula is unsatisfiable",
    )

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (GuiseLogicError, OSError) as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def _dispatch(args: argparse.Namespace) -> int:
    model = _load_model(args.file)
    results: list[dict] = []
    status = EXIT_OK

    if args.command == "closure":
        bundle = _parse_target(model, args.guise)
        results.append(closure_payload(model, bundle, closure(bundle, model.theory)))
    elif args.command == "worlds":
        bound = args.bound if args.bound is not None else 20
        results.append(worlds_payload(model, select_worlds(model, bound=bound)))
    elif args.command == "eval":
        bound = args.bound if args.bound is not None else 20
        if args.queries:
            for name, text in _document_queries(args.file, model):
                outcome = eval_formula(text, model, bound=bound)
                results.append(eval_payload(outcome, name=name))
        else:
            outcome = eval_formula(args.formula, model, bound=bound)
            results.append(eval_payload(outcome))
        if args.expect_true and any(not entry["verdict"] for entry in results):
            status = EXIT_FALSE
    elif args.command == "audit":
        bound = args.bound if args.bound is not None else 12
        if args.axioms:
            wanted = [axiom.strip() for axiom in args.axioms.split(",") if axiom.strip()]
            reports = [audit_axiom(model, axiom, bound=bound) for axiom in wanted]
        else:
            reports = audit_all(model, bound=bound)
        results.extend(audit_payload(report) for report in reports)
        if any(report.verdict == "fail" for report in reports):
            status = EXIT_AUDIT_FAILED
    elif args.command == "lattice":
        bound = args.bound if args.bound is not None else 12
        lattice = build_lattice(model, bound=bound)
        if args.dot:
            sys.stdout.write(export_dot(lattice))
            return EXIT_OK
        results.append(lattice_payload(model, lattice))
    elif args.command == "sat":
        bound = args.bound if args.bound is not None else 20
        witness = sat_search(args.formula, model, bound=bound)
        results.append(sat_payload(model, " ".join(args.formula.split()), witness))
        if args.expect_true and witness is None:
            status = EXIT_FALSE
    else:  # pragma: no cover - argparse enforces the choices
        raise ValueError(f"unknown command {args.command!r}")

    sys.stdout.write(render_report(model.name, results, as_json=args.json))
    return status


def _document_queries(path: str, model: GuiseModel) -> list[tuple[str, str]]:
    with open(path, encoding="utf-8") as handle:
        document = parse_model(handle.read(), name=model.name)
    return list(document.queries)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
