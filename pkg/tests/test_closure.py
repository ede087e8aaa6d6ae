"""Forward chaining: golden closure values, traces, and the Tarskian laws."""

import pytest

from guiselogic import (
    HornRule,
    HornTheory,
    closure,
    entails,
    is_closed,
    is_consistent,
    verify_closure_laws,
)

from conftest import oracle_closure, rules_of, subsets


CLOSURE_TABLE = [
    ({"a"}, {"a", "b"}),
    ({"b"}, {"b"}),
    ({"c"}, {"c"}),
    ({"b", "c"}, {"b", "c", "d"}),
    ({"a", "c"}, {"a", "b", "c", "d"}),
    ({"d"}, {"d"}),
]


@pytest.mark.parametrize("source,expected", CLOSURE_TABLE)
def test_closure_table(system_c, source, expected):
    assert closure(source, system_c.theory).closed_set == frozenset(expected)


def test_closure_of_empty_set(system_c):
    result = closure(set(), system_c.theory)
    assert result.closed_set == frozenset()
    assert result.fired_rules == ()


def test_trace_records_firings_in_declaration_order(system_c):
    result = closure({"a", "c"}, system_c.theory)
    assert result.fired_rules == (0, 1)
    assert system_c.rule_text(0) == "a -> b"
    assert system_c.rule_text(1) == "b c -> d"


def test_trace_replay_reproduces_fixpoint(system_c):
    # Replaying the fired rules by hand must land on the closed set.
    for source in subsets(system_c.universe):
        result = closure(source, system_c.theory)
        current = set(source)
        for index in result.fired_rules:
            rule = system_c.theory.rules[index]
            assert rule.body <= current
            if rule.head is not None:
                current.add(rule.head)
        assert frozenset(current) == result.closed_set


def test_closure_matches_independent_oracle(system_c):
    rules = rules_of(system_c)
    for source in subsets(system_c.universe):
        assert closure(source, system_c.theory).closed_set == oracle_closure(source, rules)


def test_entails_fixtures(system_c):
    assert entails({"b", "c"}, {"d"}, system_c.theory)
    assert entails({"a", "c"}, set(), system_c.theory)
    assert not entails({"b"}, {"a"}, system_c.theory)


def test_is_closed_fixtures(system_c):
    assert is_closed({"b", "c", "d"}, system_c.theory)
    assert not is_closed({"b", "c"}, system_c.theory)
    assert is_closed(set(), system_c.theory)


def test_falsum_rule_flags_but_still_closes():
    theory = HornTheory(
        rules=(
            HornRule(body=frozenset({"a"}), head="b"),
            HornRule(body=frozenset({"a", "b"}), head=None),
        )
    )
    result = closure({"a"}, theory)
    assert result.closed_set == frozenset({"a", "b"})
    assert result.inconsistent
    assert result.fired_rules == (0, 1)
    assert not is_consistent({"a"}, theory)
    assert is_consistent({"b"}, theory)


def test_falsum_fires_once():
    theory = HornTheory(rules=(HornRule(body=frozenset({"a"}), head=None),))
    result = closure({"a", "b"}, theory)
    assert result.fired_rules == (0,)
    assert result.closed_set == frozenset({"a", "b"})


def test_verify_closure_laws_exhaustive(system_c):
    report = verify_closure_laws(system_c.theory, subsets(system_c.universe))
    assert report.ok
    assert report.extensivity_checked == 16
    assert report.idempotence_checked == 16
    assert report.violations == ()


def test_verify_closure_laws_on_fixpoint_input(system_c):
    closed = closure({"b", "c"}, system_c.theory).closed_set
    report = verify_closure_laws(system_c.theory, [closed])
    assert report.ok and report.idempotence_checked == 1


def test_empty_theory_everything_closed():
    theory = HornTheory(rules=())
    for marks in subsets(["a", "b"]):
        assert is_closed(marks, theory)


def test_closed_sets_intersection_stable(system_c):
    # Intersections of fixpoints are fixpoints (Horn closure systems).
    closed = [s for s in subsets(system_c.universe) if is_closed(s, system_c.theory)]
    for first in closed:
        for second in closed:
            assert is_closed(first & second, system_c.theory)
