"""Closure basics: forward chaining, derivation traces, and the Tarskian laws.

Loads the four-mark model from system_c.gl and walks through the closure
operator induced by its two rules.
"""

from pathlib import Path

from guiselogic import closure, entails, is_closed, parse_model, validate_model, verify_closure_laws
from guiselogic.model import iter_propositions

HERE = Path(__file__).parent

model = validate_model(parse_model((HERE / "system_c.gl").read_text(), name="system_c"))
print("universe:", " ".join(model.universe))
for index in range(len(model.theory.rules)):
    print("rule:", model.rule_text(index))
print()

# The closure of a bundle is the least rule-stable superset.  Watch the
# trace: rules fire in declaration order, each at most once.
for source in ({"a"}, {"b"}, {"c"}, {"b", "c"}, {"a", "c"}, {"d"}):
    result = closure(source, model.theory)
    fired = ", ".join(model.rule_text(i) for i in result.fired_rules) or "nothing"
    print(f"closure({model.format_proposition(source)})"
          f" = {model.format_proposition(result.closed_set)}   fired: {fired}")
print()

# Entailment between propositions is containment in the closure.
print("{b c} entails {d}:", entails({"b", "c"}, {"d"}, model.theory))
print("{b} entails {a}:  ", entails({"b"}, {"a"}, model.theory))
print()

# Fixpoints of the operator.
for candidate in ({"b", "c", "d"}, {"b", "c"}, set()):
    print(f"is_closed({model.format_proposition(candidate)}):",
          is_closed(candidate, model.theory))
print()

# Extensivity, monotonicity, idempotence over every subset of the universe.
laws = verify_closure_laws(model.theory, iter_propositions(model, include_empty=True))
print(f"law check: {laws.extensivity_checked} sets,"
      f" {laws.monotonicity_checked} inclusion pairs,"
      f" violations: {len(laws.violations)}")
