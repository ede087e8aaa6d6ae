"""Exhaustive axiom audits over a finite model, with counterexample search.

Every schema is checked by brute quantification over finite domains: guise
variables range over the declared guises, proposition variables over the
policy's own universe (the template base under the template policies, all
non-empty subsets of the universe — guarded by ``bound`` — under the
downset policy), mark variables over the universe, and world variables over
the selected world set.  ``pass`` therefore means zero violations within
those domains, not a proof schema.

Axiom identifiers
-----------------
CT
    containment truth: a proposition contained in a bundle is satisfied by it.
LC
    predication reads from the closure.  Satisfaction of a mark at a guise
    is defined as closure membership, so this audit is definitional; the
    boxed form adds nothing over a finite world set and is noted in the
    report.
IC
    the relation verdict coincides with an explicit existential witness scan.
CI1
    consequence closure of intention.  Under the template policies the audit
    additionally checks that every rule-derived consequence of an intended
    template is itself a template (the base would otherwise have a closure
    gap, which this audit surfaces as a failure).
CI2
    bundle extension preserves intention.
CI3
    lifting the closure to an intention family commutes with closing the
    bundle.
R1, R2, R3
    self-intention reflexivity, target monotonicity, and transitivity
    guarded by intention inheritance.  ``R3Unguarded`` is accepted as a
    probe identifier (not part of ``audit_all``): it drops the inheritance
    premise and is expected to fail on models that shift perspective.
M1, M2, M3
    worlds are theory-closed and consistent; possibility and necessity agree
    with their world quantifier definitions.
BoxToDiamond
    necessity implies possibility whenever the world set is non-empty
    (not applicable otherwise).
IdentityByClosure
    closure-equal declared guises carry identical intention families, i.e.
    substitution inside intention contexts is safe.  Failure is the
    hyperintensional non-collapse the derivation-sensitive policy exists to
    produce, and is expected there.
ThetaTClosed
    template-base closure: every rule-derived consequence of any template is
    itself a template.  Only applicable when templates are declared.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .closure import closure, mark_in_closure
from .intention import (
    intends,
    intention_profile,
    intention_set,
    lift_closure,
    relates,
)
from .model import (
    BoundExceededError,
    GuiseLogicError,
    GuiseModel,
    IntentionPolicy,
    iter_propositions,
    satisfies,
)
from .worlds import eval_box, eval_diamond, select_worlds

AXIOM_IDS = (
    "CT",
    "LC",
    "IC",
    "CI1",
    "CI2",
    "CI3",
    "R1",
    "R2",
    "R3",
    "M1",
    "M2",
    "M3",
    "BoxToDiamond",
    "IdentityByClosure",
    "ThetaTClosed",
)

R3_UNGUARDED = "R3Unguarded"

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"


@dataclass
class AuditReport:
    """Verdict for one axiom schema with explicit counterexample bindings."""

    axiom: str
    verdict: str
    counterexamples: tuple[dict, ...] = ()
    instances_checked: int = 0
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == PASS


class _Kappa:
    """Per-audit closure cache; audits revisit the same sets constantly."""

    def __init__(self, model: GuiseModel):
        self.theory = model.theory
        self.cache: dict[frozenset[str], frozenset[str]] = {}

    def __call__(self, marks: Iterable[str]) -> frozenset[str]:
        key = frozenset(marks)
        if key not in self.cache:
            self.cache[key] = closure(key, self.theory).closed_set
        return self.cache[key]


def _proposition_domain(model: GuiseModel, bound: int) -> list[frozenset[str]]:
    if model.intention_policy is not IntentionPolicy.DOWNSET:
        assert model.templates is not None
        return list(model.templates.propositions())
    if len(model.universe) > bound:
        raise BoundExceededError(
            f"downset audit over {len(model.universe)} marks exceeds the bound {bound};"
            " raise it explicitly if you mean it"
        )
    return list(iter_propositions(model))


def _marks(model: GuiseModel, proposition: Iterable[str]) -> list[str]:
    return list(model.sorted_marks(proposition))


def _materialize_family(
    model: GuiseModel, bundle: frozenset[str], kappa: _Kappa, bound: int
) -> set[frozenset[str]]:
    """Explicit member propositions of a bundle's intention family."""
    if model.intention_policy is IntentionPolicy.DOWNSET:
        if len(model.universe) > bound:
            raise BoundExceededError(
                f"materializing a downset family over {len(model.universe)} marks"
                f" exceeds the bound {bound}"
            )
        closed = kappa(bundle)
        return {
            candidate
            for candidate in iter_propositions(model)
            if candidate <= closed
        }
    family = intention_set(bundle, model)
    propositions = family.propositions()
    assert propositions is not None
    return set(propositions)


def _family_subset(
    model: GuiseModel, smaller: frozenset[str], larger: frozenset[str], kappa: _Kappa
) -> bool:
    """Membership-wise inclusion of intention families."""
    if model.intention_policy is IntentionPolicy.DOWNSET:
        # Non-empty downsets are ordered exactly like their generating closures.
        return kappa(smaller) <= kappa(larger)
    return intention_profile(smaller, model) <= intention_profile(larger, model)


def _audit_ct(model: GuiseModel, domain, kappa, bound) -> AuditReport:
    counterexamples = []
    checked = 0
    for guise in model.guises:
        for phi in domain:
            checked += 1
            if phi <= guise.marks and not satisfies(guise.marks, phi):
                counterexamples.append({"guise": guise.name, "phi": _marks(model, phi)})
    return AuditReport(
        axiom="CT",
        verdict=FAIL if counterexamples else PASS,
        counterexamples=tuple(counterexamples),
        instances_checked=checked,
        note="satisfaction at a guise is bundle containment by definition",
    )


def _audit_lc(model: GuiseModel, domain, kappa, bound) -> AuditReport:
    counterexamples = []
    checked = 0
    for guise in model.guises:
        for mark in model.universe:
            checked += 1
            if mark_in_closure(mark, guise.marks, model.theory) != (mark in kappa(guise.marks)):
                counterexamples.append({"guise": guise.name, "mark": mark})
    return AuditReport(
        axiom="LC",
        verdict=FAIL if counterexamples else PASS,
        counterexamples=tuple(counterexamples),
        instances_checked=checked,
        note=(
            "predication is closure membership by definition; the boxed form"
            " adds nothing over a finite world set"
        ),
    )


def _audit_ic(model: GuiseModel, domain, kappa, bound) -> AuditReport:
    counterexamples = []
    checked = 0
    for guise in model.guises:
        for target in model.guises:
            checked += 1
            verdict = relates(guise, target, model).holds
            witnessed = any(
                intends(guise.marks, phi, model) and phi <= target.marks for phi in domain
            )
            if verdict != witnessed:
                counterexamples.append(
                    {
                        "guise": guise.name,
                        "target": target.name,
                        "relates": verdict,
                        "witness_scan": witnessed,
                    }
                )
    return AuditReport(
        axiom="IC",
        verdict=FAIL if counterexamples else PASS,
        counterexamples=tuple(counterexamples),
        instances_checked=checked,
    )


def _audit_ci1(model: GuiseModel, domain, kappa, bound) -> AuditReport:
    counterexamples = []
    checked = 0
    for guise in model.guises:
        intended = [phi for phi in domain if intends(guise.marks, phi, model)]
        for phi in intended:
            for psi in domain:
                checked += 1
                if kappa(phi) >= psi and not intends(guise.marks, psi, model):
                    counterexamples.append(
                        {
                            "guise": guise.name,
                            "phi": _marks(model, phi),
                            "psi": _marks(model, psi),
                            "reason": "entailed proposition not intended",
                        }
                    )
        if model.intention_policy is not IntentionPolicy.DOWNSET:
            # Closure-gap check: a rule-derived consequence of an intended
            # template that is not itself a template breaks consequence
            # closure outside the declared base.
            assert model.templates is not None
            base = set(model.templates.propositions())
            for phi in intended:
                for mark in kappa(phi) - phi:
                    checked += 1
                    psi = frozenset({mark})
                    if psi not in base:
                        counterexamples.append(
                            {
                                "guise": guise.name,
                                "phi": _marks(model, phi),
                                "psi": _marks(model, psi),
                                "reason": "entailed consequence outside the template base",
                            }
                        )
    return AuditReport(
        axiom="CI1",
        verdict=FAIL if counterexamples else PASS,
        counterexamples=tuple(counterexamples),
        instances_checked=checked,
    )


def _audit_ci2(model: GuiseModel, domain, kappa, bound) -> AuditReport:
    counterexamples = []
    checked = 0
    for guise in model.guises:
        for larger in model.guises:
            if not guise.marks <= larger.marks:
                continue
            for phi in domain:
                checked += 1
                if intends(guise.marks, phi, model) and not intends(larger.marks, phi, model):
                    counterexamples.append(
                        {
                            "guise": guise.name,
                            "extension": larger.name,
                            "phi": _marks(model, phi),
                        }
                    )
    return AuditReport(
        axiom="CI2",
        verdict=FAIL if counterexamples else PASS,
        counterexamples=tuple(counterexamples),
        instances_checked=checked,
    )


def _audit_ci3(model: GuiseModel, domain, kappa, bound) -> AuditReport:
    counterexamples = []
    checked = 0
    downset = model.intention_policy is IntentionPolicy.DOWNSET
    universe = None if downset else domain
    for guise in model.guises:
        checked += 1
        family = _materialize_family(model, guise.marks, kappa, bound)
        lifted = lift_closure(family, model.theory, universe=universe)
        of_closure = _materialize_family(model, kappa(guise.marks), kappa, bound)
        if lifted != of_closure:
            extra = sorted(_marks(model, p) for p in lifted - of_closure)
            missing = sorted(_marks(model, p) for p in of_closure - lifted)
            counterexamples.append(
                {
                    "guise": guise.name,
                    "lift_only": extra,
                    "closure_family_only": missing,
                }
            )
    return AuditReport(
        axiom="CI3",
        verdict=FAIL if counterexamples else PASS,
        counterexamples=tuple(counterexamples),
        instances_checked=checked,
    )


def _audit_r1(model: GuiseModel, domain, kappa, bound) -> AuditReport:
    counterexamples = []
    checked = 0
    for guise in model.guises:
        for phi in domain:
            checked += 1
            if (
                phi <= guise.marks
                and intends(guise.marks, phi, model)
                and not relates(guise, guise, model).holds
            ):
                counterexamples.append({"guise": guise.name, "phi": _marks(model, phi)})
    return AuditReport(
        axiom="R1",
        verdict=FAIL if counterexamples else PASS,
        counterexamples=tuple(counterexamples),
        instances_checked=checked,
    )


def _audit_r2(model: GuiseModel, domain, kappa, bound) -> AuditReport:
    counterexamples = []
    checked = 0
    for guise in model.guises:
        for target in model.guises:
            for wider in model.guises:
                if not target.marks <= wider.marks:
                    continue
                checked += 1
                if relates(guise, target, model).holds and not relates(guise, wider, model).holds:
                    counterexamples.append(
                        {
                            "guise": guise.name,
                            "target": target.name,
                            "wider": wider.name,
                        }
                    )
    return AuditReport(
        axiom="R2",
        verdict=FAIL if counterexamples else PASS,
        counterexamples=tuple(counterexamples),
        instances_checked=checked,
    )


def _r3_counterexamples(model: GuiseModel, kappa, *, guarded: bool) -> tuple[list[dict], int]:
    counterexamples = []
    checked = 0
    for guise in model.guises:
        for middle in model.guises:
            if guarded and not _family_subset(model, middle.marks, guise.marks, kappa):
                continue
            for last in model.guises:
                checked += 1
                if (
                    relates(guise, middle, model).holds
                    and relates(middle, last, model).holds
                    and not relates(guise, last, model).holds
                ):
                    counterexamples.append(
                        {
                            "guise": guise.name,
                            "middle": middle.name,
                            "target": last.name,
                        }
                    )
    return counterexamples, checked


def _audit_r3(model: GuiseModel, domain, kappa, bound) -> AuditReport:
    counterexamples, checked = _r3_counterexamples(model, kappa, guarded=True)
    return AuditReport(
        axiom="R3",
        verdict=FAIL if counterexamples else PASS,
        counterexamples=tuple(counterexamples),
        instances_checked=checked,
        note="transitivity audited under the intention-inheritance premise",
    )


def _audit_r3_unguarded(model: GuiseModel, domain, kappa, bound) -> AuditReport:
    counterexamples, checked = _r3_counterexamples(model, kappa, guarded=False)
    return AuditReport(
        axiom=R3_UNGUARDED,
        verdict=FAIL if counterexamples else PASS,
        counterexamples=tuple(counterexamples),
        instances_checked=checked,
        note="probe: transitivity without the inheritance premise may legitimately fail",
    )


def _audit_m1(model: GuiseModel, domain, kappa, bound) -> AuditReport:
    counterexamples = []
    worlds = select_worlds(model)
    for world in worlds:
        result = closure(world, model.theory)
        if result.closed_set != world or result.inconsistent:
            counterexamples.append({"world": _marks(model, world)})
    return AuditReport(
        axiom="M1",
        verdict=FAIL if counterexamples else PASS,
        counterexamples=tuple(counterexamples),
        instances_checked=len(worlds),
    )


def _modal_domain(model: GuiseModel, domain) -> list[frozenset[str]]:
    return [frozenset()] + list(domain)


def _audit_m2(model: GuiseModel, domain, kappa, bound) -> AuditReport:
    counterexamples = []
    checked = 0
    worlds = select_worlds(model)
    for phi in _modal_domain(model, domain):
        checked += 1
        if eval_diamond(phi, worlds) != any(phi <= world for world in worlds):
            counterexamples.append({"phi": _marks(model, phi)})
    return AuditReport(
        axiom="M2",
        verdict=FAIL if counterexamples else PASS,
        counterexamples=tuple(counterexamples),
        instances_checked=checked,
    )


def _audit_m3(model: GuiseModel, domain, kappa, bound) -> AuditReport:
    counterexamples = []
    checked = 0
    worlds = select_worlds(model)
    for phi in _modal_domain(model, domain):
        checked += 1
        if eval_box(phi, worlds) != all(phi <= world for world in worlds):
            counterexamples.append({"phi": _marks(model, phi)})
    return AuditReport(
        axiom="M3",
        verdict=FAIL if counterexamples else PASS,
        counterexamples=tuple(counterexamples),
        instances_checked=checked,
    )


def _audit_box_to_diamond(model: GuiseModel, domain, kappa, bound) -> AuditReport:
    worlds = select_worlds(model)
    if not worlds.worlds:
        return AuditReport(
            axiom="BoxToDiamond",
            verdict=NOT_APPLICABLE,
            note="empty world set: necessity is vacuous and implies nothing",
        )
    counterexamples = []
    checked = 0
    for phi in _modal_domain(model, domain):
        checked += 1
        if eval_box(phi, worlds) and not eval_diamond(phi, worlds):
            counterexamples.append({"phi": _marks(model, phi)})
    return AuditReport(
        axiom="BoxToDiamond",
        verdict=FAIL if counterexamples else PASS,
        counterexamples=tuple(counterexamples),
        instances_checked=checked,
    )


def _audit_identity_by_closure(model: GuiseModel, domain, kappa, bound) -> AuditReport:
    counterexamples = []
    checked = 0
    for i in range(len(model.guises)):
        for j in range(i + 1, len(model.guises)):
            first, second = model.guises[i], model.guises[j]
            checked += 1
            if kappa(first.marks) != kappa(second.marks):
                continue
            if intention_profile(first, model) != intention_profile(second, model):
                counterexamples.append({"guise": first.name, "other": second.name})
    return AuditReport(
        axiom="IdentityByClosure",
        verdict=FAIL if counterexamples else PASS,
        counterexamples=tuple(counterexamples),
        instances_checked=checked,
        note=(
            "closure-equal guises audited for identical intention families;"
            " failure is hyperintensional non-collapse, expected under the"
            " derivation-sensitive policy"
        ),
    )


def _audit_theta_t_closed(model: GuiseModel, domain, kappa, bound) -> AuditReport:
    if model.templates is None:
        return AuditReport(
            axiom="ThetaTClosed",
            verdict=NOT_APPLICABLE,
            note="no template base declared",
        )
    base = list(model.templates.propositions())
    base_set = set(base)
    counterexamples = []
    checked = 0
    for theta in base:
        for mark in kappa(theta) - theta:
            checked += 1
            if frozenset({mark}) not in base_set:
                counterexamples.append(
                    {
                        "template": _marks(model, theta),
                        "consequence": [mark],
                        "reason": "rule-derived consequence missing from the template base",
                    }
                )
    return AuditReport(
        axiom="ThetaTClosed",
        verdict=FAIL if counterexamples else PASS,
        counterexamples=tuple(counterexamples),
        instances_checked=checked,
    )


_CHECKERS: dict[str, Callable] = {
    "CT": _audit_ct,
    "LC": _audit_lc,
    "IC": _audit_ic,
    "CI1": _audit_ci1,
    "CI2": _audit_ci2,
    "CI3": _audit_ci3,
    "R1": _audit_r1,
    "R2": _audit_r2,
    "R3": _audit_r3,
    R3_UNGUARDED: _audit_r3_unguarded,
    "M1": _audit_m1,
    "M2": _audit_m2,
    "M3": _audit_m3,
    "BoxToDiamond": _audit_box_to_diamond,
    "IdentityByClosure": _audit_identity_by_closure,
    "ThetaTClosed": _audit_theta_t_closed,
}


def audit_axiom(model: GuiseModel, axiom: str, bound: int = 12) -> AuditReport:
    """Exhaustively audit one axiom schema over the model's finite domains."""
    if axiom not in _CHECKERS:
        known = ", ".join(AXIOM_IDS + (R3_UNGUARDED,))
        raise GuiseLogicError(f"unknown axiom {axiom!r} (known: {known})")
    kappa = _Kappa(model)
    domain = _proposition_domain(model, bound)
    return _CHECKERS[axiom](model, domain, kappa, bound)


def audit_all(model: GuiseModel, bound: int = 12) -> list[AuditReport]:
    """One report per axiom, in the canonical identifier order.

    Axioms whose preconditions are absent (no template base, empty world
    set) report ``not-applicable`` rather than being dropped, so report
    lists have a stable shape.
    """
    return [audit_axiom(model, axiom, bound=bound) for axiom in AXIOM_IDS]


def find_counterexample(model: GuiseModel, axiom: str, bound: int = 12) -> Optional[dict]:
    """First counterexample binding in canonical order, or None."""
    report = audit_axiom(model, axiom, bound=bound)
    if report.counterexamples:
        return report.counterexamples[0]
    return None
