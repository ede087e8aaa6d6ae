"""Intention sets, the internal relation, self-ascription, and reference.

Three policies read the family of intended propositions off a bundle:

* ``downset``   — every non-empty subset of the bundle's closure.  Never
  materialized (it has 2^|closure| - 1 members); all queries go through a
  membership predicate and witness criteria that keep them polynomial.
* ``templates`` — the declared templates contained in the closure, always
  materialized, in template declaration order.
* ``tagged``    — templates with derivation tags in force, the one built-in
  policy whose intention sets are not a function of the closure alone.

The internal relation ``relates(g, h)`` holds when some intended proposition
of ``g`` is contained in the bundle ``h``; the recorded witness is the first
qualifying proposition in policy order (least singleton by mark order under
``downset``, template declaration order otherwise).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .closure import closure
from .model import (
    GuiseLike,
    GuiseModel,
    HornTheory,
    IntentionPolicy,
    Template,
)


@dataclass(frozen=True)
class RelationWitness:
    """Verdict plus the least qualifying intended proposition, if any."""

    holds: bool
    witness: Optional[frozenset[str]] = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class IntentionSet:
    """The family of propositions a bundle intends.

    ``members`` is the materialized family for the template policies and
    ``None`` under ``downset``, where membership stays an implicit predicate.
    """

    policy: IntentionPolicy
    owner: frozenset[str]
    owner_closure: frozenset[str]
    members: Optional[tuple[Template, ...]]

    def contains(self, proposition: Iterable[str]) -> bool:
        proposition = frozenset(proposition)
        if self.policy is IntentionPolicy.DOWNSET:
            return bool(proposition) and proposition <= self.owner_closure
        assert self.members is not None
        return any(entry.marks == proposition for entry in self.members)

    def propositions(self) -> Optional[tuple[frozenset[str], ...]]:
        """Distinct member mark sets in declaration order; None under downset."""
        if self.members is None:
            return None
        seen: list[frozenset[str]] = []
        for entry in self.members:
            if entry.marks not in seen:
                seen.append(entry.marks)
        return tuple(seen)


def _template_matches(
    entry: Template,
    bundle: frozenset[str],
    closed: frozenset[str],
    policy: IntentionPolicy,
) -> bool:
    if not entry.marks <= closed:
        return False
    if policy is IntentionPolicy.TEMPLATES or entry.tag is None:
        return True
    if entry.tag == "derived":
        return bool(entry.marks & (closed - bundle))
    return entry.marks <= bundle  # tag == "given"


def intention_set(guise: GuiseLike, model: GuiseModel) -> IntentionSet:
    """The full intention family of a bundle under the model's policy."""
    bundle = model.resolve_bundle(guise)
    closed = closure(bundle, model.theory).closed_set
    policy = model.intention_policy
    if policy is IntentionPolicy.DOWNSET:
        return IntentionSet(policy=policy, owner=bundle, owner_closure=closed, members=None)
    assert model.templates is not None
    members = tuple(
        entry
        for entry in model.templates.entries
        if _template_matches(entry, bundle, closed, policy)
    )
    return IntentionSet(policy=policy, owner=bundle, owner_closure=closed, members=members)


def intends(guise: GuiseLike, proposition: Iterable[str], model: GuiseModel) -> bool:
    """Membership of the proposition in the bundle's intention family."""
    bundle = model.resolve_bundle(guise)
    proposition = frozenset(proposition)
    closed = closure(bundle, model.theory).closed_set
    policy = model.intention_policy
    if policy is IntentionPolicy.DOWNSET:
        return bool(proposition) and proposition <= closed
    assert model.templates is not None
    return any(
        entry.marks == proposition and _template_matches(entry, bundle, closed, policy)
        for entry in model.templates.entries
    )


def lift_closure(
    family: Iterable[Iterable[str]],
    theory: HornTheory,
    universe: Optional[Iterable[Iterable[str]]] = None,
) -> frozenset[frozenset[str]]:
    """Lift the closure operator to a family of propositions.

    A proposition belongs to the lift when it is entailed by the union of
    some finite subfamily.  Since the closure operator is monotone and the
    family finite, that holds exactly when the proposition is entailed by
    the union of the whole family, which avoids enumerating subfamilies.

    ``universe`` restricts the candidates (e.g. to a template base); when
    omitted, the lift ranges over all non-empty subsets of the closed union.
    """
    members = [frozenset(item) for item in family]
    if not members:
        return frozenset()
    union: frozenset[str] = frozenset().union(*members)
    closed = closure(union, theory).closed_set
    if universe is None:
        ordered = sorted(closed)
        subsets = itertools.chain.from_iterable(
            itertools.combinations(ordered, size) for size in range(1, len(ordered) + 1)
        )
        return frozenset(frozenset(subset) for subset in subsets)
    return frozenset(
        candidate
        for candidate in (frozenset(item) for item in universe)
        if candidate and candidate <= closed
    )


def relates(guise: GuiseLike, target: GuiseLike, model: GuiseModel) -> RelationWitness:
    """Internal relation: some intended proposition of ``guise`` sits inside ``target``.

    ``target`` may be a declared guise, a Guise value, or a raw proposition;
    only its bundle matters.
    """
    bundle = model.resolve_bundle(guise)
    target_bundle = model.resolve_bundle(target)
    closed = closure(bundle, model.theory).closed_set
    policy = model.intention_policy
    if policy is IntentionPolicy.DOWNSET:
        overlap = target_bundle & closed
        if overlap:
            least = min(overlap, key=model.mark_index)
            return RelationWitness(holds=True, witness=frozenset({least}))
        return RelationWitness(holds=False)
    assert model.templates is not None
    for entry in model.templates.entries:
        if entry.marks <= target_bundle and _template_matches(entry, bundle, closed, policy):
            return RelationWitness(holds=True, witness=entry.marks)
    return RelationWitness(holds=False)


def self_ascribes(guise: GuiseLike, proposition: Iterable[str], model: GuiseModel) -> bool:
    """Intended and contained in the bundle itself, not merely its closure."""
    bundle = model.resolve_bundle(guise)
    proposition = frozenset(proposition)
    return proposition <= bundle and intends(bundle, proposition, model)


def int_de_re_witness(
    guise: GuiseLike, target: GuiseLike, mark: str, model: GuiseModel
) -> RelationWitness:
    """Witness for directed intention: an intended proposition inside the
    target's closure that contains the mark."""
    bundle = model.resolve_bundle(guise)
    target_closed = closure(model.resolve_bundle(target), model.theory).closed_set
    closed = closure(bundle, model.theory).closed_set
    policy = model.intention_policy
    if policy is IntentionPolicy.DOWNSET:
        # Any qualifying proposition contains the mark, so the singleton is
        # least and exists iff the mark lies in both closures.
        if mark in closed and mark in target_closed:
            return RelationWitness(holds=True, witness=frozenset({mark}))
        return RelationWitness(holds=False)
    assert model.templates is not None
    for entry in model.templates.entries:
        if (
            mark in entry.marks
            and entry.marks <= target_closed
            and _template_matches(entry, bundle, closed, policy)
        ):
            return RelationWitness(holds=True, witness=entry.marks)
    return RelationWitness(holds=False)


def int_de_re(guise: GuiseLike, target: GuiseLike, mark: str, model: GuiseModel) -> bool:
    """``guise`` intends of ``target`` that ``mark``."""
    return int_de_re_witness(guise, target, mark, model).holds


def refers(guise: GuiseLike, target: GuiseLike, model: GuiseModel) -> bool:
    """Intentional reference: some intended proposition closes to the
    target's closure.

    Under ``downset`` this reduces to a non-empty target closure contained
    in the owner's closure (the target closure itself is then a qualifying
    witness, and any witness forces the inclusion).
    """
    bundle = model.resolve_bundle(guise)
    closed = closure(bundle, model.theory).closed_set
    target_closed = closure(model.resolve_bundle(target), model.theory).closed_set
    policy = model.intention_policy
    if policy is IntentionPolicy.DOWNSET:
        return bool(target_closed) and target_closed <= closed
    assert model.templates is not None
    return any(
        closure(entry.marks, model.theory).closed_set == target_closed
        for entry in model.templates.entries
        if _template_matches(entry, bundle, closed, policy)
    )


def intention_profile(guise: GuiseLike, model: GuiseModel) -> frozenset:
    """Hashable identity of a bundle's intention family, for equality tests.

    Downset families are a function of the closure, so the closure is the
    profile; template families are the set of matching entries (tags
    included, so tagged models can distinguish closure-equal bundles).
    """
    family = intention_set(guise, model)
    if family.members is None:
        return frozenset({("closure", family.owner_closure)})
    return frozenset(family.members)


@dataclass(frozen=True)
class HyperintensionalityReport:
    holds: bool
    pair: Optional[tuple[str, str]] = None
    pairs_checked: int = 0

    def __bool__(self) -> bool:
        return self.holds


def is_hyperintensional(model: GuiseModel) -> HyperintensionalityReport:
    """Search declared guises for a closure-equal pair with different
    intention families.

    The built-in extensional policies can never report one (their families
    are functions of the closure); the derivation-sensitive policy can.
    """
    guises = model.guises
    checked = 0
    for i in range(len(guises)):
        for j in range(i + 1, len(guises)):
            first, second = guises[i], guises[j]
            if (
                closure(first.marks, model.theory).closed_set
                != closure(second.marks, model.theory).closed_set
            ):
                continue
            checked += 1
            if intention_profile(first, model) != intention_profile(second, model):
                return HyperintensionalityReport(
                    holds=True, pair=(first.name, second.name), pairs_checked=checked
                )
    return HyperintensionalityReport(holds=False, pairs_checked=checked)
