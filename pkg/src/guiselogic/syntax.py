"""Model-description DSL and the query language.

Model files are line-oriented; ``#`` starts a comment anywhere::

    marks: a b c d
    rule: a -> b
    rule: b c -> d
    rule: a d -> false            # optional falsum head
    guise g_a = {a}
    templates: {a} {b} {c} {d} {b c}
    template tagged derived: {b}  # derivation-sensitive entries
    policy intention: templates   # downset | templates | tagged
    policy worlds: declared       # all | all-nonempty | maximal | declared
    world: {b}
    query diamond_d = diamond {d}

Sections may appear in any order; the marks section is mandatory and each of
``marks:``, ``templates:``, and the two policy lines may appear once.  On
parse, template entries are normalized to untagged-then-tagged order (that
order is also the witness scan order).

Formulas use explicit braces for propositions and keywords for operators::

    formula := 'Int' '(' gterm ',' prop ')' | 'R' '(' gterm ',' (gterm|prop) ')'
             | 'Self' '(' gterm ',' prop ')' | 'IntDeRe' '(' gterm ',' gterm ',' mark ')'
             | 'Refers' '(' gterm ',' gterm ')' | 'contains' '(' gterm ',' prop ')'
             | mark '(' gterm ')' | 'box' prop | 'diamond' prop
             | 'not' formula | formula ('and'|'or'|'->') formula
             | ('forall'|'exists') VAR '.' formula | '(' formula ')'
    prop    := '{' mark* '}'

Precedence, tightest first: ``not``, ``and``, ``or``, ``->`` (right
associative); a quantifier body extends as far right as possible.  Modal
operators take mark-set propositions only, never sub-formulas.  Quantified
variables range over declared guises or over marks; the sort is inferred
from use and mixing sorts is an error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .model import (
    GuiseLogicError,
    GuiseModel,
    ModelDocument,
    RESERVED_WORDS,
)


class ParseError(GuiseLogicError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


# ---------------------------------------------------------------------------
# Formula abstract syntax


@dataclass(frozen=True)
class GuiseName:
    name: str


@dataclass(frozen=True)
class GuiseVar:
    name: str


@dataclass(frozen=True)
class MarkName:
    name: str


@dataclass(frozen=True)
class MarkVar:
    name: str


@dataclass(frozen=True)
class PropLit:
    marks: tuple[str, ...]  # canonical order


GTerm = Union[GuiseName, GuiseVar]
MarkTerm = Union[MarkName, MarkVar]


@dataclass(frozen=True)
class Contains:
    term: GTerm
    prop: PropLit


@dataclass(frozen=True)
class MarkPred:
    mark: MarkTerm
    term: GTerm


@dataclass(frozen=True)
class Int:
    term: GTerm
    prop: PropLit


@dataclass(frozen=True)
class Rel:
    term: GTerm
    target: Union[GTerm, PropLit]


@dataclass(frozen=True)
class SelfAscription:
    term: GTerm
    prop: PropLit


@dataclass(frozen=True)
class IntDeRe:
    term: GTerm
    target: GTerm
    mark: MarkTerm


@dataclass(frozen=True)
class Refers:
    term: GTerm
    target: GTerm


@dataclass(frozen=True)
class Box:
    prop: PropLit


@dataclass(frozen=True)
class Diamond:
    prop: PropLit


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForallGuise:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class ExistsGuise:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class ForallMark:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class ExistsMark:
    var: str
    body: "Formula"


Formula = Union[
    Contains, MarkPred, Int, Rel, SelfAscription, IntDeRe, Refers, Box, Diamond,
    Not, And, Or, Implies, ForallGuise, ExistsGuise, ForallMark, ExistsMark,
]


# ---------------------------------------------------------------------------
# Model file parsing

_TOKEN_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|\{|\}|,|\S")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def _parse_groups(segment: str, line_no: int, *, exactly_one: bool = False) -> list[tuple[str, ...]]:
    """Parse a sequence of ``{ mark ... }`` groups (commas optional)."""
    groups: list[tuple[str, ...]] = []
    current: Optional[list[str]] = None
    for match in _TOKEN_RE.finditer(segment):
        token = match.group()
        column = match.start() + 1
        if token == "{":
            if current is not None:
                raise ParseError("nested '{'", line_no, column)
            current = []
        elif token == "}":
            if current is None:
                raise ParseError("unmatched '}'", line_no, column)
            groups.append(tuple(current))
            current = None
        elif token == ",":
            if current is None:
                raise ParseError("',' outside braces", line_no, column)
        elif _NAME_RE.match(token):
            if current is None:
                raise ParseError(f"unexpected {token!r} outside braces", line_no, column)
            current.append(token)
        else:
            raise ParseError(f"unexpected character {token!r}", line_no, column)
    if current is not None:
        raise ParseError("unterminated '{'", line_no, len(segment))
    if exactly_one and len(groups) != 1:
        raise ParseError("expected exactly one {...} group", line_no)
    return groups


_GUISE_LINE = re.compile(r"guise\s+(\S+)\s*=\s*(.*)\Z")
_TAGGED_LINE = re.compile(r"template\s+tagged\s+(\S+)\s*:\s*(.*)\Z")
_QUERY_LINE = re.compile(r"query\s+(\S+)\s*=\s*(.*)\Z")


def parse_model(text: str, name: str = "model") -> ModelDocument:
    """Parse a model file into a raw document, or raise a diagnostic.

    Referential checks (unknown marks, policy consistency, world closure)
    happen in :func:`guiselogic.model.validate_model`; this stage only
    enforces the grammar and section arity.
    """
    document = ModelDocument(name=name)
    seen_sections: set[str] = set()

    def once(section: str, line_no: int) -> None:
        if section in seen_sections:
            raise ParseError(f"duplicate section {section!r}", line_no)
        seen_sections.add(section)

    tagged_entries: list[tuple[tuple[str, ...], Optional[str]]] = []

    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw_line).strip()
        if not line:
            continue
        if line.startswith("marks:"):
            once("marks:", line_no)
            marks = line[len("marks:"):].split()
            if not marks:
                raise ParseError("marks section lists no marks", line_no)
            document.marks = marks
        elif line.startswith("rule:"):
            rest = line[len("rule:"):]
            if "->" not in rest:
                raise ParseError("rule needs '->'", line_no)
            body_text, _, head_text = rest.partition("->")
            body = tuple(body_text.split())
            head_tokens = head_text.split()
            if not body:
                raise ParseError("rule with empty body", line_no)
            if len(head_tokens) != 1:
                raise ParseError("rule head must be a single mark or 'false'", line_no)
            head: Optional[str] = head_tokens[0]
            if head == "false":
                head = None
            document.rules.append((body, head))
        elif line.startswith("guise"):
            match = _GUISE_LINE.match(line)
            if not match:
                raise ParseError("expected 'guise NAME = { marks }'", line_no)
            group = _parse_groups(match.group(2), line_no, exactly_one=True)[0]
            document.guises.append((match.group(1), group))
        elif line.startswith("templates:"):
            once("templates:", line_no)
            for group in _parse_groups(line[len("templates:"):], line_no):
                document.templates.append((group, None))
        elif line.startswith("template"):
            match = _TAGGED_LINE.match(line)
            if not match:
                raise ParseError("expected 'template tagged TAG: { marks }'", line_no)
            group = _parse_groups(match.group(2), line_no, exactly_one=True)[0]
            tagged_entries.append((group, match.group(1)))
        elif line.startswith("policy intention:"):
            once("policy intention:", line_no)
            value = line[len("policy intention:"):].split()
            if len(value) != 1:
                raise ParseError("expected a single policy keyword", line_no)
            document.intention_policy = value[0]
        elif line.startswith("policy worlds:"):
            once("policy worlds:", line_no)
            value = line[len("policy worlds:"):].split()
            if len(value) != 1:
                raise ParseError("expected a single policy keyword", line_no)
            document.world_policy = value[0]
        elif line.startswith("world:"):
            group = _parse_groups(line[len("world:"):], line_no, exactly_one=True)[0]
            document.worlds.append(group)
        elif line.startswith("query"):
            match = _QUERY_LINE.match(line)
            if not match:
                raise ParseError("expected 'query NAME = FORMULA'", line_no)
            formula_text = " ".join(match.group(2).split())
            if not formula_text:
                raise ParseError("empty query formula", line_no)
            document.queries.append((match.group(1), formula_text))
        else:
            keyword = line.split()[0].rstrip(":")
            raise ParseError(f"unknown keyword {keyword!r}", line_no)

    if "marks:" not in seen_sections:
        raise ParseError("missing marks section", max(1, text.count("\n") + 1))
    document.templates.extend(tagged_entries)
    return document


def format_model(document: ModelDocument) -> str:
    """Canonical text for a document; parse(format(parse(x))) == parse(x)."""
    lines: list[str] = []
    lines.append("marks: " + " ".join(document.marks))
    for body, head in document.rules:
        lines.append(f"rule: {' '.join(body)} -> {head if head is not None else 'false'}")
    for name, marks in document.guises:
        lines.append(f"guise {name} = {{{' '.join(marks)}}}")
    untagged = [(marks, tag) for marks, tag in document.templates if tag is None]
    tagged = [(marks, tag) for marks, tag in document.templates if tag is not None]
    if untagged:
        lines.append("templates: " + " ".join("{" + " ".join(marks) + "}" for marks, _ in untagged))
    for marks, tag in tagged:
        lines.append(f"template tagged {tag}: {{{' '.join(marks)}}}")
    if document.intention_policy is not None:
        lines.append(f"policy intention: {document.intention_policy}")
    if document.world_policy is not None:
        lines.append(f"policy worlds: {document.world_policy}")
    for marks in document.worlds:
        lines.append(f"world: {{{' '.join(marks)}}}")
    for name, formula_text in document.queries:
        lines.append(f"query {name} = {formula_text}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Formula parsing

_FORMULA_TOKEN_RE = re.compile(
    r"(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<arrow>->)|(?P<punct>[{}(),.])|(?P<space>\s+)|(?P<bad>.)"
)

_ATOM_KEYWORDS = {"Int", "R", "Self", "IntDeRe", "Refers", "contains", "box", "diamond"}


@dataclass
class _Token:
    kind: str  # "ident" | "arrow" | "{" | "}" | "(" | ")" | "," | "." | "end"
    value: str
    column: int


def _tokenize_formula(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    for match in _FORMULA_TOKEN_RE.finditer(text):
        column = match.start() + 1
        if match.lastgroup == "space":
            continue
        if match.lastgroup == "bad":
            raise ParseError(f"unexpected character {match.group()!r}", 1, column)
        if match.lastgroup == "ident":
            tokens.append(_Token("ident", match.group(), column))
        elif match.lastgroup == "arrow":
            tokens.append(_Token("arrow", "->", column))
        else:
            tokens.append(_Token(match.group(), match.group(), column))
    tokens.append(_Token("end", "", len(text) + 1))
    return tokens


@dataclass
class _Binding:
    name: str
    sort: Optional[str] = None  # "guise" | "mark", inferred from use


class _FormulaParser:
    def __init__(self, text: str, model: GuiseModel, allow_free_guise: bool):
        self.tokens = _tokenize_formula(text)
        self.pos = 0
        self.model = model
        self.allow_free_guise = allow_free_guise
        self.scope: list[_Binding] = []
        self.free_vars: list[str] = []

    # -- token helpers

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind: str, what: str) -> _Token:
        token = self.take()
        if token.kind != kind:
            shown = token.value or "end of input"
            raise ParseError(f"expected {what}, found {shown!r}", 1, token.column)
        return token

    def at_keyword(self, *words: str) -> bool:
        token = self.peek()
        return token.kind == "ident" and token.value in words

    # -- grammar

    def parse(self) -> Formula:
        formula = self.formula()
        tail = self.peek()
        if tail.kind != "end":
            raise ParseError(f"unexpected trailing {tail.value!r}", 1, tail.column)
        return formula

    def formula(self) -> Formula:
        if self.at_keyword("forall", "exists"):
            return self.quantified()
        return self.implies()

    def quantified(self) -> Formula:
        keyword = self.take().value
        var_token = self.expect("ident", "a variable name")
        var = var_token.value
        if var in RESERVED_WORDS:
            raise ParseError(f"variable name {var!r} is a reserved word", 1, var_token.column)
        if var in self.model._mark_index or var in self.model._guise_by_name:
            raise ParseError(
                f"variable {var!r} shadows a declared name", 1, var_token.column
            )
        if any(binding.name == var for binding in self.scope):
            raise ParseError(f"variable {var!r} bound twice along a path", 1, var_token.column)
        self.expect(".", "'.' after the bound variable")
        binding = _Binding(name=var)
        self.scope.append(binding)
        body = self.formula()
        self.scope.pop()
        sort = binding.sort or "guise"
        if keyword == "forall":
            return ForallGuise(var, body) if sort == "guise" else ForallMark(var, body)
        return ExistsGuise(var, body) if sort == "guise" else ExistsMark(var, body)

    def implies(self) -> Formula:
        left = self.disjunction()
        if self.peek().kind == "arrow":
            self.take()
            right = self.formula()  # right associative; quantifiers allowed here
            return Implies(left, right)
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.at_keyword("or"):
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.at_keyword("and"):
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        if self.at_keyword("not"):
            self.take()
            return Not(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        token = self.peek()
        if token.kind == "(":
            self.take()
            inner = self.formula()
            self.expect(")", "')'")
            return inner
        if token.kind != "ident":
            shown = token.value or "end of input"
            raise ParseError(f"expected a formula, found {shown!r}", 1, token.column)
        word = token.value
        if word in ("box", "diamond"):
            self.take()
            if self.peek().kind != "{":
                raise ParseError(
                    "modal operator takes a proposition", 1, self.peek().column
                )
            prop = self.prop()
            return Box(prop) if word == "box" else Diamond(prop)
        if word in ("Int", "Self", "contains"):
            self.take()
            self.expect("(", "'('")
            term = self.gterm()
            self.expect(",", "','")
            prop = self.prop()
            self.expect(")", "')'")
            if word == "Int":
                return Int(term, prop)
            if word == "Self":
                return SelfAscription(term, prop)
            return Contains(term, prop)
        if word == "R":
            self.take()
            self.expect("(", "'('")
            term = self.gterm()
            self.expect(",", "','")
            target: Union[GTerm, PropLit]
            if self.peek().kind == "{":
                target = self.prop()
            else:
                target = self.gterm()
            self.expect(")", "')'")
            return Rel(term, target)
        if word == "IntDeRe":
            self.take()
            self.expect("(", "'('")
            term = self.gterm()
            self.expect(",", "','")
            target = self.gterm()
            self.expect(",", "','")
            mark = self.markterm()
            self.expect(")", "')'")
            return IntDeRe(term, target, mark)
        if word == "Refers":
            self.take()
            self.expect("(", "'('")
            term = self.gterm()
            self.expect(",", "','")
            target = self.gterm()
            self.expect(")", "')'")
            return Refers(term, target)
        if word in RESERVED_WORDS:
            raise ParseError(f"unexpected keyword {word!r}", 1, token.column)
        # mark predication: IDENT '(' gterm ')'
        if self.tokens[self.pos + 1].kind == "(":
            mark_token = self.take()
            mark = self.resolve_mark(mark_token)
            self.expect("(", "'('")
            term = self.gterm()
            self.expect(")", "')'")
            return MarkPred(mark, term)
        raise ParseError(f"expected a formula, found {word!r}", 1, token.column)

    def prop(self) -> PropLit:
        self.expect("{", "'{'")
        marks: list[str] = []
        while True:
            token = self.peek()
            if token.kind == "}":
                self.take()
                break
            if token.kind == ",":
                self.take()
                continue
            if token.kind != "ident":
                shown = token.value or "end of input"
                raise ParseError(f"expected a mark, found {shown!r}", 1, token.column)
            self.take()
            if token.value not in self.model._mark_index:
                raise ParseError(f"unknown mark {token.value!r}", 1, token.column)
            marks.append(token.value)
        return PropLit(self.model.sorted_marks(marks))

    def lookup(self, name: str) -> Optional[_Binding]:
        for binding in reversed(self.scope):
            if binding.name == name:
                return binding
        return None

    def gterm(self) -> GTerm:
        token = self.expect("ident", "a guise term")
        name = token.value
        binding = self.lookup(name)
        if binding is not None:
            if binding.sort == "mark":
                raise ParseError(
                    f"variable {name!r} used both as mark and guise", 1, token.column
                )
            binding.sort = "guise"
            return GuiseVar(name)
        if name in self.model._guise_by_name:
            return GuiseName(name)
        if name in self.model._mark_index:
            raise ParseError(f"{name!r} names a mark, expected a guise", 1, token.column)
        if self.allow_free_guise:
            if name not in self.free_vars:
                self.free_vars.append(name)
            return GuiseVar(name)
        raise ParseError(f"unknown guise {name!r}", 1, token.column)

    def markterm(self) -> MarkTerm:
        token = self.expect("ident", "a mark term")
        name = token.value
        binding = self.lookup(name)
        if binding is not None:
            if binding.sort == "guise":
                raise ParseError(
                    f"variable {name!r} used both as guise and mark", 1, token.column
                )
            binding.sort = "mark"
            return MarkVar(name)
        if name in self.model._mark_index:
            return MarkName(name)
        raise ParseError(f"unknown mark {name!r}", 1, token.column)

    def resolve_mark(self, token: _Token) -> MarkTerm:
        binding = self.lookup(token.value)
        if binding is not None:
            if binding.sort == "guise":
                raise ParseError(
                    f"variable {token.value!r} used both as guise and mark", 1, token.column
                )
            binding.sort = "mark"
            return MarkVar(token.value)
        if token.value in self.model._mark_index:
            return MarkName(token.value)
        raise ParseError(f"unknown mark {token.value!r}", 1, token.column)


def parse_formula(
    text: str, model: GuiseModel, *, allow_free_guise: bool = False
) -> Formula:
    """Parse a formula against a validated model.

    Every name must resolve to a declared guise or mark, or to a bound
    variable; ``allow_free_guise`` additionally admits free guise variables
    (used by the satisfiability search).
    """
    return _FormulaParser(text, model, allow_free_guise).parse()


def parse_formula_with_free(
    text: str, model: GuiseModel
) -> tuple[Formula, tuple[str, ...]]:
    """Like :func:`parse_formula` with free guise variables admitted;
    returns them in first-use order."""
    parser = _FormulaParser(text, model, allow_free_guise=True)
    formula = parser.parse()
    return formula, tuple(parser.free_vars)


# ---------------------------------------------------------------------------
# Formula printing

_PREC_IMPLIES = 1
_PREC_QUANT = 1
_PREC_OR = 2
_PREC_AND = 3
_PREC_NOT = 4
_PREC_ATOM = 5


def _prop_text(prop: PropLit) -> str:
    return "{" + " ".join(prop.marks) + "}"


def _term_text(term: Union[GTerm, MarkTerm]) -> str:
    return term.name


def format_formula(formula: Formula) -> str:
    """Canonical text; reparsing it yields an equal syntax tree."""
    return _render(formula, 0)


def _render(node: Formula, min_prec: int) -> str:
    if isinstance(node, (ForallGuise, ExistsGuise, ForallMark, ExistsMark)):
        keyword = "forall" if isinstance(node, (ForallGuise, ForallMark)) else "exists"
        text = f"{keyword} {node.var}. {_render(node.body, _PREC_QUANT)}"
        return f"({text})" if _PREC_QUANT < min_prec else text
    if isinstance(node, Implies):
        text = f"{_render(node.left, _PREC_IMPLIES + 1)} -> {_render(node.right, _PREC_IMPLIES)}"
        return f"({text})" if _PREC_IMPLIES < min_prec else text
    if isinstance(node, Or):
        text = f"{_render(node.left, _PREC_OR)} or {_render(node.right, _PREC_OR + 1)}"
        return f"({text})" if _PREC_OR < min_prec else text
    if isinstance(node, And):
        text = f"{_render(node.left, _PREC_AND)} and {_render(node.right, _PREC_AND + 1)}"
        return f"({text})" if _PREC_AND < min_prec else text
    if isinstance(node, Not):
        return f"not {_render(node.operand, _PREC_NOT)}"
    if isinstance(node, Contains):
        return f"contains({_term_text(node.term)}, {_prop_text(node.prop)})"
    if isinstance(node, MarkPred):
        return f"{_term_text(node.mark)}({_term_text(node.term)})"
    if isinstance(node, Int):
        return f"Int({_term_text(node.term)}, {_prop_text(node.prop)})"
    if isinstance(node, Rel):
        if isinstance(node.target, PropLit):
            return f"R({_term_text(node.term)}, {_prop_text(node.target)})"
        return f"R({_term_text(node.term)}, {_term_text(node.target)})"
    if isinstance(node, SelfAscription):
        return f"Self({_term_text(node.term)}, {_prop_text(node.prop)})"
    if isinstance(node, IntDeRe):
        return (
            f"IntDeRe({_term_text(node.term)}, {_term_text(node.target)},"
            f" {_term_text(node.mark)})"
        )
    if isinstance(node, Refers):
        return f"Refers({_term_text(node.term)}, {_term_text(node.target)})"
    if isinstance(node, Box):
        return f"box {_prop_text(node.prop)}"
    if isinstance(node, Diamond):
        return f"diamond {_prop_text(node.prop)}"
    raise TypeError(f"not a formula node: {node!r}")  # pragma: no cover
