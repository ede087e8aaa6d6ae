"""Finite-model workbench for mark-bundle guises.

A guise is a finite bundle of atomic marks.  A Horn theory over the marks
induces a consequence closure; worlds are closed consistent mark sets;
intention sets attach families of propositions to bundles under one of
three policies; an internal relation, self-ascription, directed intention,
and reference are derived from them.  The package evaluates formulas over
such models, audits a battery of axiom schemata by exhaustive counterexample
search, builds the complete lattice of closed sets, and ships a small DSL
with a command-line driver.
"""

from .audit import (
    AXIOM_IDS,
    R3_UNGUARDED,
    AuditReport,
    audit_all,
    audit_axiom,
    find_counterexample,
)
from .closure import (
    ClosureLawReport,
    ClosureResult,
    LawViolation,
    closure,
    entails,
    is_closed,
    is_consistent,
    mark_in_closure,
    verify_closure_laws,
)
from .evaluate import EvalResult, EvaluationError, eval_formula, sat_search
from .intention import (
    HyperintensionalityReport,
    IntentionSet,
    RelationWitness,
    int_de_re,
    int_de_re_witness,
    intends,
    intention_profile,
    intention_set,
    is_hyperintensional,
    lift_closure,
    refers,
    relates,
    self_ascribes,
)
from .lattice import (
    ConceptLattice,
    GaloisReport,
    build_lattice,
    export_dot,
    galois_check,
)
from .model import (
    BoundExceededError,
    Guise,
    GuiseLogicError,
    GuiseModel,
    HornRule,
    HornTheory,
    IntentionPolicy,
    ModelDocument,
    ModelError,
    Template,
    TemplateBase,
    WorldPolicy,
    iter_propositions,
    normalize_proposition,
    satisfies,
    validate_model,
)
from .report import render_report
from .syntax import (
    Formula,
    ParseError,
    format_formula,
    format_model,
    parse_formula,
    parse_formula_with_free,
    parse_model,
)
from .worlds import (
    EmptyWorldSetWarning,
    WorldSet,
    announce,
    enumerate_closed_sets,
    eval_box,
    eval_diamond,
    select_worlds,
)

__version__ = "0.1.0"

__all__ = [
    "AXIOM_IDS",
    "AuditReport",
    "BoundExceededError",
    "ClosureLawReport",
    "ClosureResult",
    "ConceptLattice",
    "EmptyWorldSetWarning",
    "EvalResult",
    "EvaluationError",
    "Formula",
    "GaloisReport",
    "Guise",
    "GuiseLogicError",
    "GuiseModel",
    "HornRule",
    "HornTheory",
    "HyperintensionalityReport",
    "IntentionPolicy",
    "IntentionSet",
    "LawViolation",
    "ModelDocument",
    "ModelError",
    "ParseError",
    "R3_UNGUARDED",
    "RelationWitness",
    "Template",
    "TemplateBase",
    "WorldPolicy",
    "WorldSet",
    "announce",
    "audit_all",
    "audit_axiom",
    "build_lattice",
    "closure",
    "entails",
    "enumerate_closed_sets",
    "eval_box",
    "eval_diamond",
    "eval_formula",
    "export_dot",
    "find_counterexample",
    "format_formula",
    "format_model",
    "galois_check",
    "int_de_re",
    "int_de_re_witness",
    "intends",
    "intention_profile",
    "intention_set",
    "is_closed",
    "is_consistent",
    "is_hyperintensional",
    "iter_propositions",
    "lift_closure",
    "mark_in_closure",
    "normalize_proposition",
    "parse_formula",
    "parse_formula_with_free",
    "parse_model",
    "refers",
    "relates",
    "render_report",
    "sat_search",
    "satisfies",
    "select_worlds",
    "self_ascribes",
    "validate_model",
    "verify_closure_laws",
]
