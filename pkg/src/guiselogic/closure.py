"""Consequence closure by forward chaining, with entailment and law checks.

The closure of a mark set is the least superset stable under every rule of
the theory.  Chaining is naive-to-fixpoint: passes over the rules in
declaration order until nothing changes, each rule firing at most once per
derivation, so traces are deterministic.  Desk-scale inputs make semi-naive
evaluation unnecessary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .model import HornTheory


@dataclass(frozen=True)
class ClosureResult:
    """Fixpoint of a forward-chaining run.

    ``closed_set`` always extends the input, even when a falsum rule fired;
    ``inconsistent`` carries the flag instead of aborting so that world
    enumeration can classify rather than fail.  ``fired_rules`` lists rule
    indices in application order; replaying them from the input reproduces
    the fixpoint.
    """

    closed_set: frozenset[str]
    inconsistent: bool
    fired_rules: tuple[int, ...]


def closure(marks: Iterable[str], theory: HornTheory) -> ClosureResult:
    """Least theory-closed superset of ``marks``, with a derivation trace."""
    current = set(marks)
    fired: list[int] = []
    fired_set: set[int] = set()
    inconsistent = False
    changed = True
    while changed:
        changed = False
        for index, rule in enumerate(theory.rules):
            if index in fired_set or not rule.body <= current:
                continue
            if rule.is_falsum:
                inconsistent = True
                fired.append(index)
                fired_set.add(index)
            elif rule.head not in current:
                current.add(rule.head)
                fired.append(index)
                fired_set.add(index)
                changed = True
    return ClosureResult(
        closed_set=frozenset(current),
        inconsistent=inconsistent,
        fired_rules=tuple(fired),
    )


def entails(phi: Iterable[str], psi: Iterable[str], theory: HornTheory) -> bool:
    """True iff every mark of ``psi`` is a consequence of ``phi``."""
    return frozenset(psi) <= closure(phi, theory).closed_set


def is_closed(marks: Iterable[str], theory: HornTheory) -> bool:
    """True iff ``marks`` is a fixpoint of the closure operator."""
    marks = frozenset(marks)
    return closure(marks, theory).closed_set == marks


def is_consistent(marks: Iterable[str], theory: HornTheory) -> bool:
    """True iff no falsum rule fires while closing ``marks``."""
    return not closure(marks, theory).inconsistent


def mark_in_closure(mark: str, marks: Iterable[str], theory: HornTheory) -> bool:
    """Singular predication: the mark belongs to the bundle's closure."""
    return mark in closure(marks, theory).closed_set


@dataclass(frozen=True)
class LawViolation:
    law: str
    first: frozenset[str]
    second: Optional[frozenset[str]] = None


@dataclass(frozen=True)
class ClosureLawReport:
    """Outcome of checking extensivity, monotonicity, and idempotence."""

    extensivity_checked: int
    monotonicity_checked: int
    idempotence_checked: int
    violations: tuple[LawViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_closure_laws(theory: HornTheory, samples: Iterable[Iterable[str]]) -> ClosureLawReport:
    """Check the three closure-operator laws over the sampled sets.

    Extensivity and idempotence are checked per sample; monotonicity over
    every ordered sample pair related by inclusion.  A sound engine reports
    zero violations.
    """
    sets: list[frozenset[str]] = []
    for sample in samples:
        frozen = frozenset(sample)
        if frozen not in sets:
            sets.append(frozen)
    closed = {marks: closure(marks, theory).closed_set for marks in sets}

    violations: list[LawViolation] = []
    for marks in sets:
        if not marks <= closed[marks]:
            violations.append(LawViolation("extensivity", marks))
    for marks in sets:
        again = closure(closed[marks], theory).closed_set
        if again != closed[marks]:
            violations.append(LawViolation("idempotence", marks))
    monotonicity_checked = 0
    for smaller in sets:
        for larger in sets:
            if smaller <= larger:
                monotonicity_checked += 1
                if not closed[smaller] <= closed[larger]:
                    violations.append(LawViolation("monotonicity", smaller, larger))
    return ClosureLawReport(
        extensivity_checked=len(sets),
        monotonicity_checked=monotonicity_checked,
        idempotence_checked=len(sets),
        violations=tuple(violations),
    )
