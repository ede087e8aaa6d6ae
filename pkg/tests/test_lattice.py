"""Closed-set lattice: structure, algebraic laws, DOT export, Galois reading."""

import itertools

import pytest

from guiselogic import (
    BoundExceededError,
    build_lattice,
    export_dot,
    galois_check,
    relates,
)

from conftest import build, subsets


def test_system_c_lattice_shape(system_c):
    lattice = build_lattice(system_c)
    assert len(lattice.elements) == 10
    assert lattice.top == frozenset({"a", "b", "c", "d"})
    assert lattice.bottom == frozenset()
    assert lattice.elements[0] == frozenset()
    assert lattice.elements[-1] == lattice.top


def test_join_and_meet_fixtures(system_c):
    lattice = build_lattice(system_c)
    assert lattice.join({"b"}, {"c"}) == frozenset({"b", "c", "d"})
    assert lattice.meet({"a", "b"}, {"b", "c", "d"}) == frozenset({"b"})


def test_meet_is_intersection(system_c):
    lattice = build_lattice(system_c)
    for first in lattice.elements:
        for second in lattice.elements:
            assert lattice.meet(first, second) == first & second


def test_join_is_least_upper_bound(system_c):
    lattice = build_lattice(system_c)
    for first in lattice.elements:
        for second in lattice.elements:
            joined = lattice.join(first, second)
            assert first <= joined and second <= joined
            for other in lattice.elements:
                if first <= other and second <= other:
                    assert joined <= other


def test_lattice_laws(system_c):
    lattice = build_lattice(system_c)
    elements = lattice.elements
    for x, y in itertools.product(elements, repeat=2):
        assert lattice.meet(x, y) == lattice.meet(y, x)
        assert lattice.join(x, y) == lattice.join(y, x)
        assert lattice.meet(x, lattice.join(x, y)) == x   # absorption
        assert lattice.join(x, lattice.meet(x, y)) == x
    for x, y, z in itertools.product(elements[:6], repeat=3):
        assert lattice.meet(x, lattice.meet(y, z)) == lattice.meet(lattice.meet(x, y), z)
        assert lattice.join(x, lattice.join(y, z)) == lattice.join(lattice.join(x, y), z)


def test_covering_relation(system_c):
    lattice = build_lattice(system_c)
    position = {element: index for index, element in enumerate(lattice.elements)}
    empty_to_b = (position[frozenset()], position[frozenset({"b"})])
    b_to_ab = (position[frozenset({"b"})], position[frozenset({"a", "b"})])
    assert empty_to_b in lattice.covers
    assert b_to_ab in lattice.covers
    # no skipping: {} is covered by singletons only, never by {a b}
    assert (position[frozenset()], position[frozenset({"a", "b"})]) not in lattice.covers


def test_single_rule_free_mark_lattice():
    model = build("marks: a\n")
    lattice = build_lattice(model)
    assert lattice.elements == (frozenset(), frozenset({"a"}))
    assert lattice.covers == ((0, 1),)


def test_lattice_guard():
    model = build("marks: " + " ".join(f"m{i}" for i in range(13)) + "\n")
    with pytest.raises(BoundExceededError):
        build_lattice(model)


def test_dot_export_is_deterministic(system_c):
    lattice = build_lattice(system_c)
    first = export_dot(lattice)
    second = export_dot(build_lattice(system_c))
    assert first == second
    assert first.count(" -> ") == len(lattice.covers)
    assert 'label="{}"' in first
    assert 'label="{a b c d}"' in first


def test_dot_export_two_node_chain():
    lattice = build_lattice(build("marks: a\n"))
    text = export_dot(lattice)
    assert text.splitlines()[0] == "digraph closed_sets {"
    assert text.count(" -> ") == 1


def test_galois_check_c2(system_c):
    report = galois_check(system_c)
    assert report.ok
    assert report.pairs_checked == 25


def test_galois_check_downset_exhaustive(system_c_downset):
    report = galois_check(system_c_downset)
    assert report.ok


def test_galois_agrees_with_relates_on_all_pairs(system_c):
    # The report is a consistency check; the relation itself stays the
    # single source of truth.
    for source in system_c.guises:
        for target in system_c.guises:
            assert relates(source, target, system_c).holds in (True, False)
    assert galois_check(system_c).ok


def test_empty_closure_relates_to_nothing(system_a):
    # A bundle with empty closure has an empty intention family.
    for target in subsets(system_a.universe):
        assert not relates(set(), target, system_a).holds


def test_galois_check_bound_guard():
    wide = build(
        "marks: " + " ".join(f"m{i}" for i in range(13)) + "\nguise g = {m0}\n"
    )
    with pytest.raises(BoundExceededError):
        galois_check(wide, bound=12)
    assert galois_check(wide, bound=13).ok
