"""Report rendering: machine JSON and a human-readable text form.

The JSON schema is ``{"model": name, "results": [{"kind": ..., ...}]}``
with every mark set rendered as a list sorted in canonical (declaration)
order.  Output is byte-deterministic for a fixed input; timings are
deliberately excluded.
"""

from __future__ import annotations

import json
from typing import Iterable

from .audit import AuditReport
from .closure import ClosureResult
from .evaluate import EvalResult
from .lattice import ConceptLattice
from .model import GuiseModel
from .worlds import WorldSet


def closure_payload(model: GuiseModel, source: Iterable[str], result: ClosureResult) -> dict:
    return {
        "kind": "closure",
        "input": list(model.sorted_marks(source)),
        "closed": list(model.sorted_marks(result.closed_set)),
        "inconsistent": result.inconsistent,
        "fired_rules": [
            {"index": index, "rule": model.rule_text(index)} for index in result.fired_rules
        ],
    }


def worlds_payload(model: GuiseModel, world_set: WorldSet) -> dict:
    worlds = sorted(world_set.worlds, key=model.canonical_key)
    return {
        "kind": "worlds",
        "policy": world_set.policy_used.value,
        "count": len(worlds),
        "worlds": [list(model.sorted_marks(world)) for world in worlds],
    }


def eval_payload(result: EvalResult, name: str | None = None) -> dict:
    payload: dict = {"kind": "eval"}
    if name is not None:
        payload["name"] = name
    payload.update(
        {
            "formula": result.formula,
            "verdict": result.verdict,
            "trace": list(result.trace),
        }
    )
    return payload


def audit_payload(report: AuditReport) -> dict:
    payload: dict = {
        "kind": "audit",
        "axiom": report.axiom,
        "verdict": report.verdict,
        "instances_checked": report.instances_checked,
        "counterexamples": list(report.counterexamples),
    }
    if report.note:
        payload["note"] = report.note
    return payload


def sat_payload(model: GuiseModel, formula_text: str, witness: frozenset | None) -> dict:
    return {
        "kind": "sat",
        "formula": formula_text,
        "satisfiable": witness is not None,
        "witness": None if witness is None else list(model.sorted_marks(witness)),
    }


def lattice_payload(model: GuiseModel, lattice: ConceptLattice) -> dict:
    return {
        "kind": "lattice",
        "elements": [list(model.sorted_marks(element)) for element in lattice.elements],
        "top": list(model.sorted_marks(lattice.top)),
        "bottom": list(model.sorted_marks(lattice.bottom)),
        "covers": [list(pair) for pair in lattice.covers],
    }


def render_report(model_name: str, results: list[dict], as_json: bool) -> str:
    """Render collected results; byte-identical for identical inputs."""
    if as_json:
        return json.dumps({"model": model_name, "results": results}, indent=2) + "\n"
    lines = [f"model: {model_name}"]
    for result in results:
        lines.extend(_text_lines(result))
    return "\n".join(lines) + "\n"


def _set_text(marks: list) -> str:
    return "{" + " ".join(marks) + "}"


def _text_lines(result: dict) -> list[str]:
    kind = result["kind"]
    if kind == "closure":
        lines = [
            f"closure {_set_text(result['input'])} -> {_set_text(result['closed'])}"
            + ("  [inconsistent]" if result["inconsistent"] else "")
        ]
        for firing in result["fired_rules"]:
            lines.append(f"  fired #{firing['index']}: {firing['rule']}")
        return lines
    if kind == "worlds":
        lines = [f"worlds ({result['policy']}): {result['count']}"]
        lines.extend(f"  {_set_text(world)}" for world in result["worlds"])
        return lines
    if kind == "eval":
        label = result.get("name") or result["formula"]
        lines = [f"eval {label}: {str(result['verdict']).lower()}"]
        if result.get("name"):
            lines.insert(1, f"  formula: {result['formula']}")
        for entry in result["trace"]:
            lines.append(f"  trace: {json.dumps(entry)}")
        return lines
    if kind == "audit":
        lines = [
            f"audit {result['axiom']}: {result['verdict']}"
            f" ({result['instances_checked']} instances)"
        ]
        for example in result["counterexamples"]:
            lines.append(f"  counterexample: {json.dumps(example)}")
        return lines
    if kind == "sat":
        witness = result["witness"]
        verdict = _set_text(witness) if witness is not None else "unsat"
        return [f"sat {result['formula']}: {verdict}"]
    if kind == "lattice":
        lines = [
            f"lattice: {len(result['elements'])} elements,"
            f" top {_set_text(result['top'])}, bottom {_set_text(result['bottom'])}"
        ]
        for lower, upper in result["covers"]:
            lines.append(
                f"  {_set_text(result['elements'][lower])} -> {_set_text(result['elements'][upper])}"
            )
        return lines
    raise ValueError(f"unknown result kind {kind!r}")  # pragma: no cover
