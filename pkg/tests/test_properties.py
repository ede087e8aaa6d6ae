"""Property-based suites: algebraic laws over generated theories and formulas."""

import itertools

from hypothesis import given, settings, strategies as st

from guiselogic import (
    HornRule,
    HornTheory,
    closure,
    format_formula,
    intends,
    is_closed,
    lift_closure,
    parse_formula,
    relates,
    verify_closure_laws,
)

from conftest import SYSTEM_C_TEXT, build

MARK_POOL = ("a", "b", "c", "d", "e")


@st.composite
def theories(draw, max_marks: int = 5, max_rules: int = 6, falsum: bool = False):
    count = draw(st.integers(1, max_marks))
    marks = MARK_POOL[:count]
    rule_count = draw(st.integers(0, max_rules))
    rules = []
    for _ in range(rule_count):
        body = draw(st.sets(st.sampled_from(marks), min_size=1, max_size=count))
        if falsum and draw(st.booleans()):
            head = None
        else:
            head = draw(st.sampled_from(marks))
        rules.append(HornRule(body=frozenset(body), head=head))
    return marks, HornTheory(rules=tuple(rules))


def all_subsets(marks):
    return [
        frozenset(combo)
        for size in range(len(marks) + 1)
        for combo in itertools.combinations(marks, size)
    ]


@given(theories())
@settings(max_examples=80, deadline=None)
def test_closure_laws_hold_for_every_theory(data):
    marks, theory = data
    report = verify_closure_laws(theory, all_subsets(marks))
    assert report.ok, report.violations[:3]


@given(theories(falsum=True))
@settings(max_examples=60, deadline=None)
def test_extensivity_and_idempotence_with_falsum(data):
    marks, theory = data
    for source in all_subsets(marks):
        result = closure(source, theory)
        assert source <= result.closed_set
        again = closure(result.closed_set, theory)
        assert again.closed_set == result.closed_set
        assert again.inconsistent == result.inconsistent


@given(theories(falsum=True))
@settings(max_examples=60, deadline=None)
def test_trace_replay_is_sound(data):
    marks, theory = data
    for source in all_subsets(marks):
        result = closure(source, theory)
        current = set(source)
        inconsistent = False
        for index in result.fired_rules:
            rule = theory.rules[index]
            assert rule.body <= current
            if rule.head is None:
                inconsistent = True
            else:
                assert rule.head not in current
                current.add(rule.head)
        assert frozenset(current) == result.closed_set
        assert inconsistent == result.inconsistent


@given(theories())
@settings(max_examples=60, deadline=None)
def test_closed_sets_are_intersection_stable(data):
    marks, theory = data
    closed = [s for s in all_subsets(marks) if is_closed(s, theory)]
    for first in closed:
        for second in closed:
            assert is_closed(first & second, theory)


@given(theories(max_marks=4))
@settings(max_examples=60, deadline=None)
def test_downset_witness_criterion_matches_brute_force(data):
    marks, theory = data
    lines = ["marks: " + " ".join(marks)]
    for rule in theory.rules:
        lines.append(f"rule: {' '.join(sorted(rule.body))} -> {rule.head}")
    model = build("\n".join(lines) + "\n")
    for source in all_subsets(marks):
        closed = closure(source, theory).closed_set
        members = [m for m in all_subsets(closed) if m]
        for target in all_subsets(marks):
            brute = any(member <= target for member in members)
            assert relates(source, target, model).holds == brute


@given(theories(max_marks=4))
@settings(max_examples=40, deadline=None)
def test_downset_intention_is_bundle_monotone(data):
    marks, theory = data
    lines = ["marks: " + " ".join(marks)]
    for rule in theory.rules:
        lines.append(f"rule: {' '.join(sorted(rule.body))} -> {rule.head}")
    model = build("\n".join(lines) + "\n")
    props = [p for p in all_subsets(marks) if p]
    for small in all_subsets(marks):
        for big in all_subsets(marks):
            if not small <= big:
                continue
            for phi in props:
                if intends(small, phi, model):
                    assert intends(big, phi, model)


@given(theories(max_marks=4), st.integers(0, 2**4 - 1))
@settings(max_examples=40, deadline=None)
def test_lift_shortcut_matches_subfamily_enumeration(data, selector):
    marks, theory = data
    pool = [p for p in all_subsets(marks) if p][:4]
    family = [member for bit, member in enumerate(pool) if selector & (1 << bit)]
    universe = [p for p in all_subsets(marks) if p]
    lifted = lift_closure(family, theory, universe)
    expected = set()
    for size in range(1, len(family) + 1):
        for subfamily in itertools.combinations(family, size):
            union = frozenset().union(*subfamily)
            closed = closure(union, theory).closed_set
            expected.update(c for c in universe if c <= closed)
    assert lifted == frozenset(expected)


# --- formula round trips -----------------------------------------------------

_MODEL = build(SYSTEM_C_TEXT, "system_c")
_GUISES = ["g_a", "g_b", "g_c", "g_bc", "g_ac"]
_MARKS = ["a", "b", "c", "d"]


@st.composite
def formula_texts(draw, depth: int = 3, gvars: tuple = (), mvars: tuple = ()):
    def gterm():
        return draw(st.sampled_from(_GUISES + list(gvars)))

    def markterm():
        return draw(st.sampled_from(_MARKS + list(mvars)))

    def prop():
        members = draw(st.lists(st.sampled_from(_MARKS), max_size=3))
        return "{" + " ".join(members) + "}"

    if depth == 0 or draw(st.integers(0, 2)) == 0:
        atom = draw(st.sampled_from(
            ["int", "rel", "rel_prop", "self", "intdere", "refers", "contains", "pred", "box", "diamond"]
        ))
        if atom == "int":
            return f"Int({gterm()}, {prop()})"
        if atom == "rel":
            return f"R({gterm()}, {gterm()})"
        if atom == "rel_prop":
            return f"R({gterm()}, {prop()})"
        if atom == "self":
            return f"Self({gterm()}, {prop()})"
        if atom == "intdere":
            return f"IntDeRe({gterm()}, {gterm()}, {markterm()})"
        if atom == "refers":
            return f"Refers({gterm()}, {gterm()})"
        if atom == "contains":
            return f"contains({gterm()}, {prop()})"
        if atom == "pred":
            return f"{markterm()}({gterm()})"
        if atom == "box":
            return f"box {prop()}"
        return f"diamond {prop()}"

    shape = draw(st.sampled_from(["not", "and", "or", "implies", "forall_g", "exists_g", "forall_m"]))
    if shape == "not":
        inner = draw(formula_texts(depth=depth - 1, gvars=gvars, mvars=mvars))
        return f"not ({inner})"
    if shape in ("and", "or", "implies"):
        left = draw(formula_texts(depth=depth - 1, gvars=gvars, mvars=mvars))
        right = draw(formula_texts(depth=depth - 1, gvars=gvars, mvars=mvars))
        symbol = {"and": "and", "or": "or", "implies": "->"}[shape]
        return f"({left}) {symbol} ({right})"
    if shape in ("forall_g", "exists_g"):
        var = f"G{len(gvars)}"
        keyword = "forall" if shape == "forall_g" else "exists"
        body = draw(formula_texts(depth=depth - 1, gvars=gvars + (var,), mvars=mvars))
        # guarantee a guise-sorted use so the printed form re-infers the sort
        return f"{keyword} {var}. R({var}, {draw(st.sampled_from(_GUISES))}) or ({body})"
    var = f"M{len(mvars)}"
    body = draw(formula_texts(depth=depth - 1, gvars=gvars, mvars=mvars + (var,)))
    anchor = draw(st.sampled_from(_GUISES))
    return f"forall {var}. {var}({anchor}) or ({body})"


@given(formula_texts())
@settings(max_examples=120, deadline=None)
def test_formula_print_parse_round_trip(text):
    parsed = parse_formula(text, _MODEL)
    printed = format_formula(parsed)
    assert parse_formula(printed, _MODEL) == parsed
    assert format_formula(parse_formula(printed, _MODEL)) == printed
