"""Shared fixtures: the worked-example models and independent oracles."""

from __future__ import annotations

import itertools

import pytest

from guiselogic import parse_model, validate_model

# Four marks, two rules, role templates, five declared worlds.  The closure
# table, intention sets, relation instances, and modal truths of this model
# are the package's golden fixtures.
SYSTEM_C_TEXT = """\
# four-mark laboratory model with role templates
marks: a b c d
rule: a -> b
rule: b c -> d
guise g_a = {a}
guise g_b = {b}
guise g_c = {c}
guise g_bc = {b c}
guise g_ac = {a c}
templates: {a} {b} {c} {d} {b c}
policy intention: templates
policy worlds: declared
world: {b}
world: {a b}
world: {c}
world: {b c d}
world: {a b c d}
query diamond_d = diamond {d}
query box_b = box {b}
query related = R(g_a, g_bc)
"""

# Same universe and theory, downset intentions, default worlds.
SYSTEM_C_DOWNSET_TEXT = """\
marks: a b c d
rule: a -> b
rule: b c -> d
guise g_a = {a}
guise g_b = {b}
guise g_c = {c}
guise g_bc = {b c}
guise g_ac = {a c}
policy intention: downset
"""

# Three marks, one rule, canonical downset intentions.
SYSTEM_A_TEXT = """\
marks: a b c
rule: a -> b
guise g_a = {a}
guise g_b = {b}
guise g_c = {c}
policy intention: downset
"""

# Template-restricted variant; g1 is declared as its own closure so that the
# published relation verdicts hold under the bundle reading of R.
SYSTEM_B_TEXT = """\
marks: a b c d
rule: a -> b
rule: b c -> d
guise g1 = {a b}
guise g2 = {b c}
templates: {a} {b} {c} {d} {b c}
policy intention: templates
"""

# Two closure-equal guises told apart by a derivation-tagged template.
TAGGED_TEXT = """\
marks: a b
rule: a -> b
guise plain = {a}
guise enriched = {a b}
templates: {a}
template tagged derived: {b}
policy intention: tagged
"""


def build(text: str, name: str = "model"):
    return validate_model(parse_model(text, name=name))


@pytest.fixture(scope="session")
def system_c():
    return build(SYSTEM_C_TEXT, "system_c")


@pytest.fixture(scope="session")
def system_c_downset():
    return build(SYSTEM_C_DOWNSET_TEXT, "system_c_downset")


@pytest.fixture(scope="session")
def system_a():
    return build(SYSTEM_A_TEXT, "system_a")


@pytest.fixture(scope="session")
def system_b():
    return build(SYSTEM_B_TEXT, "system_b")


@pytest.fixture(scope="session")
def tagged_model():
    return build(TAGGED_TEXT, "tagged")


# ---------------------------------------------------------------------------
# Independent oracles.  These deliberately avoid the package's engines.


def oracle_is_closed(marks: frozenset, rules: list[tuple[frozenset, str | None]]) -> bool:
    """A set is closed when no applicable rule adds a new mark."""
    return all(
        head is None or not body <= marks or head in marks for body, head in rules
    )


def oracle_closure(marks: frozenset, rules: list[tuple[frozenset, str | None]]) -> frozenset:
    """Fixpoint by simultaneous application, independent of trace order."""
    current = frozenset(marks)
    while True:
        new = frozenset(
            head
            for body, head in rules
            if head is not None and body <= current and head not in current
        )
        if not new:
            return current
        current = current | new


def subsets(items, include_empty: bool = True):
    items = list(items)
    start = 0 if include_empty else 1
    for size in range(start, len(items) + 1):
        for combo in itertools.combinations(items, size):
            yield frozenset(combo)


def rules_of(model) -> list[tuple[frozenset, str | None]]:
    return [(rule.body, rule.head) for rule in model.theory.rules]
