from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import TYPE_CHECKING, Union

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError
from typing_extensions import TypeAlias

from ._exceptions import ModelSyntaxError, UnknownIdentifierError, UnknownModelError
from .graph import RELATION_NAMES, SET_NAMES

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping

    from wmm.relations import Relation

    from .graph import ExecutionGraph

__all__ = [
    "BUILTIN_MODELS",
    "PREDICATES",
    "Axiom",
    "ModelSpec",
    "Op",
    "Ref",
    "RelationExpr",
    "SetRef",
    "builtin_model",
    "load_model",
    "parse_model",
]

PREDICATES = ("acyclic", "empty", "irreflexive")

BUILTIN_MODELS = {
    "SC": "sc.cat",
    "TSO": "tso.cat",
    "ARM": "armish.cat",
    "ARMISH": "armish.cat",
    "RISCV": "armish.cat",
}

_GRAMMAR = r"""
start: "model" NAME _statement*
_statement: binding | axiom
binding: "let" NAME "=" expr
axiom: predicate expr "as" NAME
!predicate: "acyclic" | "empty" | "irreflexive"

?expr: seq
    | expr "|" seq -> union
?seq: diff
    | seq ";" diff -> compose
?diff: inter
    | diff "\\" inter -> difference
?inter: postfix
    | inter "&" postfix -> intersect
?postfix: primary
    | postfix "^-1" -> inverse
    | postfix "^+" -> plus
    | postfix "^*" -> star
?primary: NAME -> ref
    | "[" NAME "]" -> set_ref
    | "(" expr ")"

NAME: /[A-Za-z_][A-Za-z0-9_]*/
COMMENT.2: /\(\*(.|\n)*?\*\)/

%import common.WS
%ignore WS
%ignore COMMENT
"""

_PARSER = Lark(_GRAMMAR, parser="lalr")


@dataclass(frozen=True)
class Ref:
    """A built-in relation or an earlier `let` binding."""

    name: str
    line: int = 0

    def evaluate(self: Ref, graph: ExecutionGraph, env: Mapping[str, Relation]) -> Relation:
        if self.name in env:
            return env[self.name]
        return graph.derive(self.name)

    def walk(self: Ref) -> Iterator[RelationExpr]:
        yield self


@dataclass(frozen=True)
class SetRef:
    """`[S]`, the identity relation on an event set."""

    name: str
    line: int = 0

    def evaluate(self: SetRef, graph: ExecutionGraph, env: Mapping[str, Relation]) -> Relation:  # noqa: ARG002
        return graph.event_set(self.name).identity()

    def walk(self: SetRef) -> Iterator[RelationExpr]:
        yield self


_OPERATORS = {
    "union": lambda a, b: a | b,
    "compose": lambda a, b: a @ b,
    "difference": lambda a, b: a - b,
    "intersect": lambda a, b: a & b,
    "inverse": lambda a: a.inverse(),
    "plus": lambda a: a.transitive_closure(),
    "star": lambda a: a.reflexive_transitive_closure(),
}


@dataclass(frozen=True)
class Op:
    op: str
    operands: tuple[RelationExpr, ...]

    def __post_init__(self: Op) -> None:  # noqa: D105
        if self.op not in _OPERATORS:
            msg = f"Op: unsupported operator '{self.op}'"
            raise ValueError(msg)

    def evaluate(self: Op, graph: ExecutionGraph, env: Mapping[str, Relation]) -> Relation:
        return _OPERATORS[self.op](*(e.evaluate(graph, env) for e in self.operands))

    def walk(self: Op) -> Iterator[RelationExpr]:
        yield self
        for operand in self.operands:
            yield from operand.walk()


RelationExpr: TypeAlias = Union[Ref, SetRef, Op]


@dataclass(frozen=True)
class Axiom:
    """`<predicate> <expr> as <label>`."""

    predicate: str
    expr: RelationExpr
    label: str

    def __post_init__(self: Axiom) -> None:  # noqa: D105
        if self.predicate not in PREDICATES:
            msg = f"Axiom: predicate must be one of {PREDICATES}, got '{self.predicate}'"
            raise ValueError(msg)


@dataclass(frozen=True)
class ModelSpec:
    """A parsed model: named bindings evaluated in order, then axioms checked in order.

    Args:
        name: The name after the `model` keyword.
        bindings: (name, expression) pairs from `let` statements.
        axioms: The axioms, in file order.
    """

    name: str
    bindings: tuple[tuple[str, RelationExpr], ...]
    axioms: tuple[Axiom, ...]


def _binary(op: str):  # noqa: ANN202
    def build(self: _ModelBuilder, left: RelationExpr, right: RelationExpr) -> Op:  # noqa: ARG001
        return Op(op, (left, right))

    return build


def _unary(op: str):  # noqa: ANN202
    def build(self: _ModelBuilder, operand: RelationExpr) -> Op:  # noqa: ARG001
        return Op(op, (operand,))

    return build


@v_args(inline=True)
class _ModelBuilder(Transformer):
    union = _binary("union")
    compose = _binary("compose")
    difference = _binary("difference")
    intersect = _binary("intersect")
    inverse = _unary("inverse")
    plus = _unary("plus")
    star = _unary("star")

    def ref(self: _ModelBuilder, token: Token) -> Ref:
        return Ref(str(token), token.line or 0)

    def set_ref(self: _ModelBuilder, token: Token) -> SetRef:
        return SetRef(str(token), token.line or 0)

    def predicate(self: _ModelBuilder, token: Token) -> str:
        return str(token)

    def binding(self: _ModelBuilder, name: Token, expr: RelationExpr) -> tuple[str, RelationExpr]:
        return (str(name), expr)

    def axiom(self: _ModelBuilder, predicate: str, expr: RelationExpr, label: Token) -> Axiom:
        return Axiom(predicate, expr, str(label))

    def start(self: _ModelBuilder, name: Token, *statements: tuple[str, RelationExpr] | Axiom) -> ModelSpec:
        _validate(statements)
        return ModelSpec(
            name=str(name),
            bindings=tuple(s for s in statements if isinstance(s, tuple)),
            axioms=tuple(s for s in statements if isinstance(s, Axiom)),
        )


def _check_names(expr: RelationExpr, known: set[str]) -> None:
    for node in expr.walk():
        if isinstance(node, Ref) and node.name not in known:
            raise UnknownIdentifierError(node.name, node.line)
        if isinstance(node, SetRef) and node.name not in SET_NAMES:
            raise UnknownIdentifierError(node.name, node.line)


def _validate(statements: tuple[tuple[str, RelationExpr] | Axiom, ...]) -> None:
    known = set(RELATION_NAMES)
    for statement in statements:
        if isinstance(statement, Axiom):
            _check_names(statement.expr, known)
        else:
            name, expr = statement
            _check_names(expr, known)
            known.add(name)


def parse_model(text: str) -> ModelSpec:
    """Parse and validate a model written in the Cat-lite language.

    Args:
        text: Model source text.

    Raises:
        ModelSyntaxError: If the text does not follow the grammar.
        UnknownIdentifierError: If an expression names a relation that is neither built in
            nor bound by an earlier `let`, or an unknown event set.

    Returns:
        ModelSpec: The validated model.
    """
    try:
        tree = _PARSER.parse(text)
    except UnexpectedInput as e:
        expected = getattr(e, "expected", None) or getattr(e, "allowed", None) or ()
        raise ModelSyntaxError(max(e.line, 0), max(e.column, 0), sorted(expected)) from e
    try:
        return _ModelBuilder().transform(tree)
    except VisitError as e:
        raise e.orig_exc from None


@lru_cache(maxsize=None)
def builtin_model(name: str) -> ModelSpec:
    """One of the shipped models: SC, TSO, or ARMish (also under the names ARM and RISCV).

    Raises:
        UnknownModelError: If no shipped model has that name.
    """
    try:
        filename = BUILTIN_MODELS[name.upper()]
    except KeyError as e:
        raise UnknownModelError(name) from e
    source = resources.files("wmm.axiomatic") / "models" / filename
    return parse_model(source.read_text(encoding="utf-8"))


def load_model(name_or_path: str | Path) -> ModelSpec:
    """A shipped model by name, or a model file by path.

    Raises:
        UnknownModelError: If the argument is neither a shipped model nor an existing file.

    Returns:
        ModelSpec: The model.
    """
    if isinstance(name_or_path, str) and name_or_path.upper() in BUILTIN_MODELS:
        return builtin_model(name_or_path)
    path = Path(name_or_path)
    if not path.is_file():
        raise UnknownModelError(str(name_or_path))
    return parse_model(path.read_text(encoding="utf-8"))
