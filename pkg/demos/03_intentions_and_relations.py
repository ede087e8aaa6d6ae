"""Intention sets and the internal relation, across all three policies.

The downset policy intends every non-empty subset of the closure; the
template policy intends exactly the declared role templates inside the
closure; the tagged policy additionally reads derivation tags, which is what
makes two closure-equal guises distinguishable.
"""

from pathlib import Path

from guiselogic import (
    int_de_re,
    intends,
    intention_set,
    is_hyperintensional,
    parse_model,
    refers,
    relates,
    self_ascribes,
    validate_model,
)

HERE = Path(__file__).parent


def load(name):
    return validate_model(parse_model((HERE / name).read_text(), name=name.split(".")[0]))


system_c = load("system_c.gl")
system_a = load("system_a.gl")
tagged = load("tagged.gl")

# Template intention sets of the four-mark model.
for guise in system_c.guises:
    family = intention_set(guise, system_c)
    members = " ".join(system_c.format_proposition(p) for p in family.propositions())
    print(f"J({guise.name}) = {members}")
print()

# The internal relation holds when some intended proposition of the source
# sits inside the target bundle; the witness is the first matching template.
pairs = [("g_a", "g_bc"), ("g_bc", "g_ac"), ("g_c", "g_bc"), ("g_a", "g_b"), ("g_b", "g_a")]
for source, target in pairs:
    outcome = relates(source, target, system_c)
    witness = system_c.format_proposition(outcome.witness) if outcome.holds else "-"
    print(f"R({source}, {target}) = {outcome.holds!s:5s} witness {witness}")
print()

# Downset intentions are implicit: membership is a predicate, never a list.
family = intention_set("g_a", system_a)
print("downset J(g_a) materialized?", family.members is not None)
print("g_a intends {b}:", intends("g_a", {"b"}, system_a))
print("g_a intends {c}:", intends("g_a", {"c"}, system_a))
print()

# Self-ascription needs the proposition inside the bundle itself, not merely
# the closure; directed intention and reference read the target's closure.
print("Self(g_bc, {b c}):", self_ascribes("g_bc", {"b", "c"}, system_c))
print("Self(g_a, {b})   :", self_ascribes("g_a", {"b"}, system_a), " ({b} only in the closure)")
print("IntDeRe(g_a, {b c}, b):", int_de_re("g_a", {"b", "c"}, "b", system_a))
print("Refers(g_a, g_b) :", refers("g_a", "g_b", system_a))
print()

# Hyperintensionality: equal closures, different intention families.  The
# extensional policies can never produce it; a derivation tag can.
for model in (system_a, system_c, tagged):
    outcome = is_hyperintensional(model)
    extra = f" witness pair {outcome.pair}" if outcome.holds else ""
    print(f"{model.name:10s} hyperintensional: {outcome.holds}{extra}")
print()
print("plain    intends {b}:", intends("plain", {"b"}, tagged), " (b is derived from a)")
print("enriched intends {b}:", intends("enriched", {"b"}, tagged), "(b is already in the bundle)")
