"""Core vocabulary for finite guise models.

A model assembles a finite universe of marks (atomic property symbols), a
Horn theory whose rules drive the consequence closure, named guises (finite
bundles of marks), an optional base of role templates, and two policy
switches that fix how intention sets and world sets are derived.  Everything
is validated up front: after ``validate_model`` succeeds the model is
immutable, and engine operations may assume that every cross-reference
resolves.

Conventions used throughout the package:

* a mark is a plain ``str`` drawn from the model's universe;
* a proposition is a ``frozenset`` of marks;
* canonical order is mark declaration order, and all rendered mark sets are
  sorted by it.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Optional, Union


class GuiseLogicError(Exception):
    """Base class for every error raised by this package."""


class ModelError(GuiseLogicError):
    """A model description failed validation; the message names the offender."""


class BoundExceededError(GuiseLogicError):
    """An exhaustive operation would exceed its universe-size guard."""


# Words with fixed meaning in the query language; they cannot name marks or
# guises, otherwise formula positions become ambiguous.
RESERVED_WORDS = frozenset({
    "Int", "R", "Self", "IntDeRe", "Refers", "contains", "box", "diamond",
    "not", "and", "or", "forall", "exists", "false",
})

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

Proposition = frozenset


@dataclass(frozen=True)
class HornRule:
    """A conditional among marks: a finite body entails a single head mark.

    ``head is None`` encodes a falsum head (the rule marks its body as
    inconsistent).  Falsum rules are an opt-in extension; without them every
    mark set is consistent.
    """

    body: frozenset[str]
    head: Optional[str]

    @property
    def is_falsum(self) -> bool:
        return self.head is None


@dataclass(frozen=True)
class HornTheory:
    rules: tuple[HornRule, ...]

    @property
    def has_falsum(self) -> bool:
        return any(rule.is_falsum for rule in self.rules)


@dataclass(frozen=True)
class Guise:
    """A named bundle of marks."""

    name: str
    marks: frozenset[str]


@dataclass(frozen=True)
class Template:
    """A role proposition, optionally carrying a derivation tag.

    Untagged templates match against the closure of a bundle.  A ``derived``
    tag additionally requires at least one of the template's marks to be a
    rule-derived mark (in the closure but not the bundle); a ``given`` tag
    requires the template to sit inside the bundle itself.  Tags only take
    effect under the derivation-sensitive intention policy.
    """

    marks: frozenset[str]
    tag: Optional[str] = None


TEMPLATE_TAGS = ("derived", "given")


@dataclass(frozen=True)
class TemplateBase:
    entries: tuple[Template, ...]

    def propositions(self) -> tuple[frozenset[str], ...]:
        """Distinct template mark sets, in declaration order."""
        seen: list[frozenset[str]] = []
        for entry in self.entries:
            if entry.marks not in seen:
                seen.append(entry.marks)
        return tuple(seen)


class IntentionPolicy(str, Enum):
    """How the family of intended propositions is read off a bundle."""

    DOWNSET = "downset"       # every non-empty subset of the closure
    TEMPLATES = "templates"   # declared templates contained in the closure
    TAGGED = "tagged"         # templates, with derivation tags in force


class WorldPolicy(str, Enum):
    """Which theory-closed mark sets count as worlds."""

    ALL = "all"
    ALL_NONEMPTY = "all-nonempty"
    MAXIMAL = "maximal"
    DECLARED = "declared"


@dataclass
class ModelDocument:
    """Raw parsed model description, prior to validation.

    Produced by :func:`guiselogic.syntax.parse_model` and consumed by
    :func:`validate_model`.  Sections keep their source order so documents
    round-trip through the pretty printer.
    """

    name: str = "model"
    marks: list[str] = field(default_factory=list)
    rules: list[tuple[tuple[str, ...], Optional[str]]] = field(default_factory=list)
    guises: list[tuple[str, tuple[str, ...]]] = field(default_factory=list)
    templates: list[tuple[tuple[str, ...], Optional[str]]] = field(default_factory=list)
    intention_policy: Optional[str] = None
    world_policy: Optional[str] = None
    worlds: list[tuple[str, ...]] = field(default_factory=list)
    queries: list[tuple[str, str]] = field(default_factory=list)


@dataclass(frozen=True)
class GuiseModel:
    """A validated, immutable guise model.

    Any number of concurrent readers may share one instance; all engine
    operations are pure functions over it.
    """

    name: str
    universe: tuple[str, ...]
    theory: HornTheory
    guises: tuple[Guise, ...]
    templates: Optional[TemplateBase]
    intention_policy: IntentionPolicy
    world_policy: WorldPolicy
    declared_worlds: tuple[frozenset[str], ...]

    @cached_property
    def _mark_index(self) -> dict[str, int]:
        return {mark: index for index, mark in enumerate(self.universe)}

    @cached_property
    def _guise_by_name(self) -> dict[str, Guise]:
        return {guise.name: guise for guise in self.guises}

    def mark_index(self, mark: str) -> int:
        try:
            return self._mark_index[mark]
        except KeyError:
            raise ModelError(f"unknown mark {mark!r}") from None

    def guise(self, name: str) -> Guise:
        try:
            return self._guise_by_name[name]
        except KeyError:
            raise ModelError(f"unknown guise {name!r}") from None

    def sorted_marks(self, marks: Iterable[str]) -> tuple[str, ...]:
        """Marks in canonical (declaration) order."""
        return tuple(sorted(set(marks), key=self.mark_index))

    def canonical_key(self, proposition: Iterable[str]) -> tuple[int, tuple[int, ...]]:
        """Sort key ordering propositions by size, then declaration order."""
        indices = tuple(sorted(self._mark_index[mark] for mark in set(proposition)))
        return (len(indices), indices)

    def format_proposition(self, proposition: Iterable[str]) -> str:
        return "{" + " ".join(self.sorted_marks(proposition)) + "}"

    def rule_text(self, index: int) -> str:
        rule = self.theory.rules[index]
        body = " ".join(self.sorted_marks(rule.body))
        head = rule.head if rule.head is not None else "false"
        return f"{body} -> {head}"

    def resolve_bundle(self, guise: GuiseLike) -> frozenset[str]:
        """Marks of a guise given as a Guise, a declared name, or raw marks."""
        if isinstance(guise, Guise):
            return guise.marks
        if isinstance(guise, str):
            return self.guise(guise).marks
        return normalize_proposition(guise, self)


GuiseLike = Union[Guise, str, Iterable[str]]


def satisfies(bundle: Iterable[str], proposition: Iterable[str]) -> bool:
    """The satisfaction clause for guises and worlds alike: containment."""
    return frozenset(proposition) <= frozenset(bundle)


def normalize_proposition(marks: Iterable[str], model: GuiseModel) -> frozenset[str]:
    """Deduplicate and membership-check a mark collection.

    Raises :class:`ModelError` naming the first mark outside the universe.
    The empty proposition is representable.
    """
    result = frozenset(marks)
    for mark in result:
        if mark not in model._mark_index:
            raise ModelError(f"unknown mark {mark!r}")
    return result


def iter_propositions(model: GuiseModel, *, include_empty: bool = False) -> Iterator[frozenset[str]]:
    """All subsets of the universe, in canonical order (size, then marks)."""
    start = 0 if include_empty else 1
    for size in range(start, len(model.universe) + 1):
        for combo in itertools.combinations(model.universe, size):
            yield frozenset(combo)


def _check_name(kind: str, name: str) -> None:
    if not _IDENT_RE.match(name):
        raise ModelError(f"invalid {kind} name {name!r}")
    if name in RESERVED_WORDS:
        raise ModelError(f"{kind} name {name!r} is a reserved word")


def validate_model(document: ModelDocument) -> GuiseModel:
    """Check a raw description and assemble an immutable model.

    Validation is total: it either returns a model or raises a
    :class:`ModelError` naming the offending element.  Checks cover name
    legality and uniqueness, referential integrity of rules, guises,
    templates, and worlds, policy consistency, and theory-closedness of
    declared worlds.
    """
    if not document.marks:
        raise ModelError("empty universe: a model needs at least one mark")
    seen_marks: set[str] = set()
    for mark in document.marks:
        _check_name("mark", mark)
        if mark in seen_marks:
            raise ModelError(f"duplicate mark {mark!r}")
        seen_marks.add(mark)
    universe = tuple(document.marks)

    rules = []
    for body, head in document.rules:
        if not body:
            raise ModelError("rule with empty body")
        for mark in body:
            if mark not in seen_marks:
                raise ModelError(f"unknown mark {mark!r} in rule body")
        if head is not None and head not in seen_marks:
            raise ModelError(f"unknown mark {head!r} in rule head")
        rules.append(HornRule(body=frozenset(body), head=head))
    theory = HornTheory(rules=tuple(rules))

    guises = []
    guise_names: set[str] = set()
    for name, marks in document.guises:
        _check_name("guise", name)
        if name in guise_names:
            raise ModelError(f"duplicate guise {name!r}")
        if name in seen_marks:
            raise ModelError(f"guise name {name!r} collides with a mark")
        guise_names.add(name)
        for mark in marks:
            if mark not in seen_marks:
                raise ModelError(f"unknown mark {mark!r} in guise {name!r}")
        guises.append(Guise(name=name, marks=frozenset(marks)))

    entries = []
    for marks, tag in document.templates:
        if not marks:
            raise ModelError("empty template")
        for mark in marks:
            if mark not in seen_marks:
                raise ModelError(f"unknown mark {mark!r} in template")
        if tag is not None and tag not in TEMPLATE_TAGS:
            raise ModelError(f"unknown template tag {tag!r} (expected one of {TEMPLATE_TAGS})")
        entry = Template(marks=frozenset(marks), tag=tag)
        if entry in entries:
            raise ModelError(f"duplicate template {sorted(marks)} tag={tag!r}")
        entries.append(entry)
    templates = TemplateBase(entries=tuple(entries)) if entries else None

    if document.intention_policy is None:
        intention_policy = IntentionPolicy.DOWNSET
    else:
        try:
            intention_policy = IntentionPolicy(document.intention_policy)
        except ValueError:
            raise ModelError(f"unknown intention policy {document.intention_policy!r}") from None
    if intention_policy is not IntentionPolicy.DOWNSET and templates is None:
        raise ModelError(f"intention policy {intention_policy.value!r} requires declared templates")

    if document.world_policy is None:
        world_policy = WorldPolicy.ALL_NONEMPTY
    else:
        try:
            world_policy = WorldPolicy(document.world_policy)
        except ValueError:
            raise ModelError(f"unknown world policy {document.world_policy!r}") from None
    if document.worlds and world_policy is not WorldPolicy.DECLARED:
        raise ModelError("world lines require the declared world policy")
    if world_policy is WorldPolicy.DECLARED and not document.worlds:
        raise ModelError("declared world policy requires at least one world line")

    query_names: set[str] = set()
    for name, _ in document.queries:
        _check_name("query", name)
        if name in query_names:
            raise ModelError(f"duplicate query {name!r}")
        query_names.add(name)

    declared_worlds: list[frozenset[str]] = []
    from .closure import closure  # local import; closure builds on these types

    for marks in document.worlds:
        for mark in marks:
            if mark not in seen_marks:
                raise ModelError(f"unknown mark {mark!r} in declared world")
        world = frozenset(marks)
        result = closure(world, theory)
        if result.closed_set != world:
            missing = sorted(result.closed_set - world)
            raise ModelError(
                f"declared world {sorted(world)} is not T-closed (missing {missing})"
            )
        if result.inconsistent:
            raise ModelError(f"declared world {sorted(world)} is inconsistent")
        if world not in declared_worlds:
            declared_worlds.append(world)

    return GuiseModel(
        name=document.name,
        universe=universe,
        theory=theory,
        guises=tuple(guises),
        templates=templates,
        intention_policy=intention_policy,
        world_policy=world_policy,
        declared_worlds=tuple(declared_worlds),
    )
