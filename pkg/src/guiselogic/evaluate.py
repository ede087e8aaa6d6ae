"""Formula evaluation and bounded satisfiability search.

Evaluation is structural recursion delegating every atom to the engine
modules, so a formula verdict never disagrees with the corresponding direct
call.  Guise quantifiers range over the declared guises, mark quantifiers
over the universe; the satisfiability search is the tool for quantifying
over arbitrary bundles.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .closure import mark_in_closure
from .intention import (
    int_de_re_witness,
    intends,
    refers,
    relates,
    self_ascribes,
)
from .model import BoundExceededError, GuiseLogicError, GuiseModel, satisfies
from .syntax import (
    And,
    Box,
    Contains,
    Diamond,
    ExistsGuise,
    ExistsMark,
    ForallGuise,
    ForallMark,
    Formula,
    GuiseName,
    GuiseVar,
    Implies,
    Int,
    IntDeRe,
    MarkName,
    MarkPred,
    MarkVar,
    Not,
    Or,
    PropLit,
    Refers,
    Rel,
    SelfAscription,
    format_formula,
    parse_formula,
    parse_formula_with_free,
)
from .worlds import WorldSet, eval_box, eval_diamond, select_worlds


class EvaluationError(GuiseLogicError):
    """A formula cannot be evaluated as requested."""


@dataclass(frozen=True)
class EvalResult:
    """Verdict plus the witnesses used along the way.

    ``trace`` entries re-verify under the module operations they mention.
    ``seconds`` is wall-clock evaluation time; it is an API convenience and
    deliberately left out of rendered reports, which must be deterministic.
    """

    formula: str
    verdict: bool
    trace: tuple[dict, ...]
    seconds: float


def _mentions_modal(node: Formula) -> bool:
    if isinstance(node, (Box, Diamond)):
        return True
    if isinstance(node, Not):
        return _mentions_modal(node.operand)
    if isinstance(node, (And, Or, Implies)):
        return _mentions_modal(node.left) or _mentions_modal(node.right)
    if isinstance(node, (ForallGuise, ExistsGuise, ForallMark, ExistsMark)):
        return _mentions_modal(node.body)
    return False


class _Evaluator:
    def __init__(self, model: GuiseModel, world_set: Optional[WorldSet], bound: int = 20):
        self.model = model
        self.world_set = world_set
        self.bound = bound
        self.trace: list[dict] = []

    def worlds(self) -> WorldSet:
        if self.world_set is None:
            self.world_set = select_worlds(self.model, bound=self.bound)
        return self.world_set

    def bundle(self, term: Union[GuiseName, GuiseVar], env: dict) -> frozenset[str]:
        if isinstance(term, GuiseName):
            return self.model.guise(term.name).marks
        try:
            return env[term.name]
        except KeyError:
            raise EvaluationError(f"unbound guise variable {term.name!r}") from None

    def mark(self, term: Union[MarkName, MarkVar], env: dict) -> str:
        if isinstance(term, MarkName):
            return term.name
        try:
            return env[term.name]
        except KeyError:
            raise EvaluationError(f"unbound mark variable {term.name!r}") from None

    def marks_of(self, prop: PropLit) -> frozenset[str]:
        return frozenset(prop.marks)

    def show(self, marks: Iterable[str]) -> list[str]:
        return list(self.model.sorted_marks(marks))

    def eval(self, node: Formula, env: dict) -> bool:
        model = self.model
        if isinstance(node, Contains):
            return satisfies(self.bundle(node.term, env), self.marks_of(node.prop))
        if isinstance(node, MarkPred):
            return mark_in_closure(
                self.mark(node.mark, env), self.bundle(node.term, env), model.theory
            )
        if isinstance(node, Int):
            return intends(self.bundle(node.term, env), self.marks_of(node.prop), model)
        if isinstance(node, Rel):
            source = self.bundle(node.term, env)
            if isinstance(node.target, PropLit):
                target = self.marks_of(node.target)
            else:
                target = self.bundle(node.target, env)
            witness = relates(source, target, model)
            if witness.holds:
                self.trace.append(
                    {
                        "atom": "R",
                        "guise": self.show(source),
                        "target": self.show(target),
                        "witness": self.show(witness.witness),
                    }
                )
            return witness.holds
        if isinstance(node, SelfAscription):
            return self_ascribes(self.bundle(node.term, env), self.marks_of(node.prop), model)
        if isinstance(node, IntDeRe):
            source = self.bundle(node.term, env)
            target = self.bundle(node.target, env)
            witness = int_de_re_witness(source, target, self.mark(node.mark, env), model)
            if witness.holds:
                self.trace.append(
                    {
                        "atom": "IntDeRe",
                        "guise": self.show(source),
                        "target": self.show(target),
                        "witness": self.show(witness.witness),
                    }
                )
            return witness.holds
        if isinstance(node, Refers):
            return refers(
                self.bundle(node.term, env), self.bundle(node.target, env), model
            )
        if isinstance(node, Box):
            prop = self.marks_of(node.prop)
            worlds = self.worlds()
            verdict = eval_box(prop, worlds)
            if not verdict:
                counter = next(world for world in worlds if not prop <= world)
                self.trace.append(
                    {
                        "atom": "box",
                        "proposition": self.show(prop),
                        "counterexample_world": self.show(counter),
                    }
                )
            return verdict
        if isinstance(node, Diamond):
            prop = self.marks_of(node.prop)
            worlds = self.worlds()
            verdict = eval_diamond(prop, worlds)
            if verdict:
                witness = next(world for world in worlds if prop <= world)
                self.trace.append(
                    {
                        "atom": "diamond",
                        "proposition": self.show(prop),
                        "witness_world": self.show(witness),
                    }
                )
            return verdict
        if isinstance(node, Not):
            return not self.eval(node.operand, env)
        if isinstance(node, And):
            return self.eval(node.left, env) and self.eval(node.right, env)
        if isinstance(node, Or):
            return self.eval(node.left, env) or self.eval(node.right, env)
        if isinstance(node, Implies):
            return (not self.eval(node.left, env)) or self.eval(node.right, env)
        if isinstance(node, (ForallGuise, ExistsGuise)):
            wanted = isinstance(node, ExistsGuise)
            for guise in model.guises:
                env[node.var] = guise.marks
                verdict = self.eval(node.body, env)
                if verdict == wanted:
                    del env[node.var]
                    if wanted:
                        self.trace.append(
                            {"quantifier": "exists", "variable": node.var, "witness_guise": guise.name}
                        )
                    else:
                        self.trace.append(
                            {"quantifier": "forall", "variable": node.var, "counterexample_guise": guise.name}
                        )
                    return wanted
            env.pop(node.var, None)
            return not wanted
        if isinstance(node, (ForallMark, ExistsMark)):
            wanted = isinstance(node, ExistsMark)
            for mark in model.universe:
                env[node.var] = mark
                verdict = self.eval(node.body, env)
                if verdict == wanted:
                    del env[node.var]
                    key = "witness_mark" if wanted else "counterexample_mark"
                    self.trace.append(
                        {"quantifier": "exists" if wanted else "forall", "variable": node.var, key: mark}
                    )
                    return wanted
            env.pop(node.var, None)
            return not wanted
        raise TypeError(f"not a formula node: {node!r}")  # pragma: no cover


def eval_formula(
    formula: Union[Formula, str],
    model: GuiseModel,
    *,
    world_set: Optional[WorldSet] = None,
    bound: int = 20,
) -> EvalResult:
    """Evaluate a closed formula over the model.

    Accepts either a parsed syntax tree or formula text.  ``world_set``
    overrides the model's world policy (used after announcements or to share
    one enumeration across many evaluations); without it, worlds are only
    enumerated when a modal atom is reached, guarded by ``bound``.
    """
    if isinstance(formula, str):
        formula = parse_formula(formula, model)
    evaluator = _Evaluator(model, world_set, bound)
    started = time.perf_counter()
    verdict = evaluator.eval(formula, {})
    elapsed = time.perf_counter() - started
    return EvalResult(
        formula=format_formula(formula),
        verdict=verdict,
        trace=tuple(evaluator.trace),
        seconds=elapsed,
    )


def sat_search(
    formula: Union[Formula, str], model: GuiseModel, bound: int = 20
) -> Optional[frozenset[str]]:
    """Least bundle (canonical order) satisfying a one-free-variable formula.

    The free guise variable is bound to every subset of the universe in
    canonical order; the first satisfying bundle is returned, or ``None``
    after the exhaustive search fails.  Soundness: the returned bundle makes
    the formula true; completeness: absence means all 2^|universe| bundles
    fail.
    """
    if isinstance(formula, str):
        formula, free = parse_formula_with_free(formula, model)
    else:
        free = _free_guise_vars(formula)
    if len(free) != 1:
        raise EvaluationError(
            f"satisfiability search needs exactly one free guise variable, found {list(free)}"
        )
    if len(model.universe) > bound:
        raise BoundExceededError(
            f"universe of {len(model.universe)} marks exceeds the search bound {bound}"
        )
    variable = free[0]
    world_set = select_worlds(model, bound=bound) if _mentions_modal(formula) else None
    for size in range(len(model.universe) + 1):
        for combo in itertools.combinations(model.universe, size):
            candidate = frozenset(combo)
            evaluator = _Evaluator(model, world_set, bound)
            if evaluator.eval(formula, {variable: candidate}):
                return candidate
    return None


def _free_guise_vars(node: Formula, scope: frozenset[str] = frozenset()) -> tuple[str, ...]:
    """Free guise variables of a parsed formula, in first-use order."""
    found: list[str] = []

    def walk(node: Formula, scope: frozenset[str]) -> None:
        if isinstance(node, (ForallGuise, ExistsGuise, ForallMark, ExistsMark)):
            walk(node.body, scope | {node.var})
            return
        if isinstance(node, Not):
            walk(node.operand, scope)
            return
        if isinstance(node, (And, Or, Implies)):
            walk(node.left, scope)
            walk(node.right, scope)
            return
        for attr in ("term", "target"):
            term = getattr(node, attr, None)
            if isinstance(term, GuiseVar) and term.name not in scope and term.name not in found:
                found.append(term.name)

    walk(node, scope)
    return tuple(found)
