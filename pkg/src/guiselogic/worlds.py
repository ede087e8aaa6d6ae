"""World enumeration, modal evaluation, and public announcement.

Worlds are theory-closed consistent mark sets selected by the model's world
policy.  Necessity is containment in every world, possibility containment in
some world; there is no accessibility relation.
"""

from __future__ import annotations

import dataclasses
import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator

from .closure import closure
from .model import BoundExceededError, GuiseModel, ModelError, WorldPolicy, iter_propositions


class EmptyWorldSetWarning(UserWarning):
    """An announcement removed every world; box is now vacuous, diamond false."""


@dataclass(frozen=True)
class WorldSet:
    worlds: tuple[frozenset[str], ...]
    policy_used: WorldPolicy

    def __iter__(self) -> Iterator[frozenset[str]]:
        return iter(self.worlds)

    def __len__(self) -> int:
        return len(self.worlds)


def enumerate_closed_sets(model: GuiseModel, bound: int = 20) -> list[frozenset[str]]:
    """All theory-closed consistent subsets of the universe, canonically ordered.

    Exhaustive over the powerset, so the universe size is guarded by
    ``bound``.
    """
    if len(model.universe) > bound:
        raise BoundExceededError(
            f"universe of {len(model.universe)} marks exceeds the enumeration bound {bound}"
        )
    closed: list[frozenset[str]] = []
    for candidate in iter_propositions(model, include_empty=True):
        result = closure(candidate, model.theory)
        if result.closed_set == candidate and not result.inconsistent:
            closed.append(candidate)
    return closed


def select_worlds(model: GuiseModel, bound: int = 20) -> WorldSet:
    """Apply the model's world policy.

    Declared worlds keep their declaration order (they were validated at
    model build time); computed policies produce canonical order.
    """
    policy = model.world_policy
    if policy is WorldPolicy.DECLARED:
        for world in model.declared_worlds:
            if closure(world, model.theory).closed_set != world:
                raise ModelError(f"declared world {sorted(world)} is not T-closed")
        return WorldSet(worlds=tuple(model.declared_worlds), policy_used=policy)

    closed = enumerate_closed_sets(model, bound=bound)
    if policy is WorldPolicy.ALL:
        worlds = closed
    elif policy is WorldPolicy.ALL_NONEMPTY:
        worlds = [world for world in closed if world]
    elif policy is WorldPolicy.MAXIMAL:
        worlds = [
            world
            for world in closed
            if not any(world < other for other in closed)
        ]
    else:  # pragma: no cover - enum is exhaustive
        raise ValueError(f"unhandled world policy {policy}")
    return WorldSet(worlds=tuple(worlds), policy_used=policy)


def eval_diamond(proposition: Iterable[str], world_set: WorldSet) -> bool:
    """Possibility: some world contains the proposition."""
    proposition = frozenset(proposition)
    return any(proposition <= world for world in world_set)


def eval_box(proposition: Iterable[str], world_set: WorldSet) -> bool:
    """Necessity: every world contains the proposition (vacuously true if none)."""
    proposition = frozenset(proposition)
    return all(proposition <= world for world in world_set)


def announce(model: GuiseModel, proposition: Iterable[str], bound: int = 20) -> GuiseModel:
    """Restrict the world set to worlds containing the announced proposition.

    Returns a new immutable model whose world policy pins the surviving
    worlds.  Intention sets are untouched: both built-in policies already
    track theory consequences, so the consequence-reflecting update is a
    no-op for them.  An announcement that removes every world is legal but
    flagged with :class:`EmptyWorldSetWarning`.
    """
    proposition = frozenset(proposition)
    current = select_worlds(model, bound=bound)
    kept = tuple(world for world in current if proposition <= world)
    if not kept:
        warnings.warn(
            f"announcing {sorted(proposition)} removed every world",
            EmptyWorldSetWarning,
            stacklevel=2,
        )
    return dataclasses.replace(
        model, world_policy=WorldPolicy.DECLARED, declared_worlds=kept
    )
