"""Axiom audits: exhaustive checks with explicit counterexamples.

Verdicts are computed by brute quantification over the model's finite
domains, so a failure always comes with a binding that re-verifies through
the public operations.
"""

from pathlib import Path

from guiselogic import (
    R3_UNGUARDED,
    audit_all,
    audit_axiom,
    find_counterexample,
    parse_model,
    validate_model,
)

HERE = Path(__file__).parent


def load(text, name):
    return validate_model(parse_model(text, name=name))


system_c = load((HERE / "system_c.gl").read_text(), "system_c")
tagged = load((HERE / "tagged.gl").read_text(), "tagged")

# The full battery on the four-mark template model: everything passes.
print("=== full audit of system_c ===")
for report in audit_all(system_c):
    print(f"{report.axiom:18s} {report.verdict:14s} {report.instances_checked:4d} instances")
print()

# Shrink the template base to a single role and consequence closure breaks:
# {b c} entails {d}, but {d} is no longer a template.
gapped = load(
    "marks: a b c d\n"
    "rule: a -> b\n"
    "rule: b c -> d\n"
    "guise g_bc = {b c}\n"
    "templates: {b c}\n"
    "policy intention: templates\n",
    "gapped",
)
print("=== a template base with a closure gap ===")
for axiom in ("CI1", "ThetaTClosed"):
    report = audit_axiom(gapped, axiom)
    print(f"{axiom}: {report.verdict}")
    for example in report.counterexamples:
        print("  counterexample:", example)
print()

# Derivation tags break extension invariance and lift/closure commutation,
# and collapse of closure-equal guises fails: that is the point of the tags.
print("=== the tagged fixture ===")
for axiom in ("CI2", "CI3", "IdentityByClosure"):
    report = audit_axiom(tagged, axiom)
    first = report.counterexamples[0] if report.counterexamples else None
    print(f"{axiom}: {report.verdict}" + (f"  e.g. {first}" if first else ""))
print()

# Transitivity of the relation is only guaranteed under intention
# inheritance; the unguarded probe finds a violating triple.
print("=== transitivity probe on system_c ===")
print("guarded R3:", audit_axiom(system_c, "R3").verdict)
print("unguarded triple:", find_counterexample(system_c, R3_UNGUARDED))
