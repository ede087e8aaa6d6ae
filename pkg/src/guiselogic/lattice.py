"""The complete lattice of theory-closed mark sets.

Closed sets ordered by inclusion form a closure system: meets are
intersections, joins close the union, the top is the closed universe and
the bottom the closure of the empty set.  Elements are all fixpoints of the
closure operator; the falsum flag plays no role here (an inconsistent
fixpoint is still a lattice element).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .closure import closure
from .intention import relates
from .model import BoundExceededError, GuiseModel, IntentionPolicy, iter_propositions


@dataclass(frozen=True)
class ConceptLattice:
    universe: tuple[str, ...]
    elements: tuple[frozenset[str], ...]
    meet_table: tuple[tuple[int, ...], ...]
    join_table: tuple[tuple[int, ...], ...]
    top: frozenset[str]
    bottom: frozenset[str]
    covers: tuple[tuple[int, int], ...]  # (lower, upper) covering pairs

    def index(self, element: Iterable[str]) -> int:
        return self.elements.index(frozenset(element))

    def meet(self, first: Iterable[str], second: Iterable[str]) -> frozenset[str]:
        return self.elements[self.meet_table[self.index(first)][self.index(second)]]

    def join(self, first: Iterable[str], second: Iterable[str]) -> frozenset[str]:
        return self.elements[self.join_table[self.index(first)][self.index(second)]]


def build_lattice(model: GuiseModel, bound: int = 12) -> ConceptLattice:
    """Enumerate every closed set and tabulate meets, joins, and covers."""
    if len(model.universe) > bound:
        raise BoundExceededError(
            f"lattice over {len(model.universe)} marks exceeds the bound {bound}"
        )
    elements = [
        candidate
        for candidate in iter_propositions(model, include_empty=True)
        if closure(candidate, model.theory).closed_set == candidate
    ]
    position = {element: index for index, element in enumerate(elements)}

    meet_rows = []
    join_rows = []
    for first in elements:
        meet_row = []
        join_row = []
        for second in elements:
            meet_row.append(position[first & second])
            join_row.append(position[closure(first | second, model.theory).closed_set])
        meet_rows.append(tuple(meet_row))
        join_rows.append(tuple(join_row))

    covers = []
    for lower, upper in itertools.permutations(range(len(elements)), 2):
        if not elements[lower] < elements[upper]:
            continue
        if any(
            elements[lower] < elements[mid] < elements[upper]
            for mid in range(len(elements))
        ):
            continue
        covers.append((lower, upper))
    covers.sort()

    return ConceptLattice(
        universe=model.universe,
        elements=tuple(elements),
        meet_table=tuple(meet_rows),
        join_table=tuple(join_rows),
        top=closure(frozenset(model.universe), model.theory).closed_set,
        bottom=closure(frozenset(), model.theory).closed_set,
        covers=tuple(covers),
    )


@dataclass(frozen=True)
class GaloisReport:
    """Agreement of the relation verdict with the family-intersection reading."""

    pairs_checked: int
    counterexamples: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def galois_check(model: GuiseModel, bound: int = 12) -> GaloisReport:
    """Verify, for every declared guise pair, that the relation holds exactly
    when the intention family of the source meets the downset of the target.

    The target side is the implicit predicate "contained in the target's
    bundle", so the intersection test reduces to scanning the materialized
    source family.
    """
    counterexamples = []
    pairs = 0
    for source in model.guises:
        family = _materialized_family(model, source.marks, bound)
        for target in model.guises:
            pairs += 1
            meets = any(member <= target.marks for member in family)
            verdict = relates(source, target, model).holds
            if meets != verdict:
                counterexamples.append(
                    {
                        "guise": source.name,
                        "target": target.name,
                        "relates": verdict,
                        "family_meets_downset": meets,
                    }
                )
    return GaloisReport(pairs_checked=pairs, counterexamples=tuple(counterexamples))


def _materialized_family(model: GuiseModel, bundle: frozenset[str], bound: int) -> list[frozenset[str]]:
    from .intention import intention_set

    if model.intention_policy is IntentionPolicy.DOWNSET:
        if len(model.universe) > bound:
            raise BoundExceededError(
                f"materializing a downset family over {len(model.universe)} marks"
                f" exceeds the bound {bound}"
            )
        closed = closure(bundle, model.theory).closed_set
        return [
            candidate for candidate in iter_propositions(model) if candidate <= closed
        ]
    family = intention_set(bundle, model)
    propositions = family.propositions()
    assert propositions is not None
    return list(propositions)


def export_dot(lattice: ConceptLattice) -> str:
    """Hasse diagram in DOT format with deterministic node order.

    Nodes are the closed sets in canonical order; edges are covering pairs
    pointing from the smaller to the larger set.
    """
    order = {mark: index for index, mark in enumerate(lattice.universe)}

    def label(element: frozenset[str]) -> str:
        return "{" + " ".join(sorted(element, key=order.__getitem__)) + "}"

    lines = ["digraph closed_sets {", "  rankdir=BT;"]
    for index, element in enumerate(lattice.elements):
        lines.append(f'  n{index} [label="{label(element)}"];')
    for lower, upper in lattice.covers:
        lines.append(f"  n{lower} -> n{upper};")
    lines.append("}")
    return "\n".join(lines) + "\n"
