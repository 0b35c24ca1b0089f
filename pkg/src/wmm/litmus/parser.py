from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from ._exceptions import LitmusSyntaxError, LitmusValidationError
from .ast import (
    And,
    Atom,
    BinaryOp,
    BoolConst,
    Branch,
    Fence,
    IntLit,
    LitmusTest,
    Load,
    LocalAssign,
    Not,
    Or,
    Reg,
    Store,
    Swap,
    Thread,
    UnaryOp,
    reads_of,
    walk,
    writes_of,
)

if TYPE_CHECKING:
    from .ast import Expr, Instruction, Postcondition

__all__ = ["parse_litmus", "validate_litmus"]

_GRAMMAR = r"""
start: "test" TEST_NAME [init] thread* post [expect]

init: "init" "{" (init_entry ";"?)* "}"
init_entry: NAME "=" signed_int

thread: "thread" NAME block
block: "{" (_instr ";"?)* "}"
_instr: assign | store_rel | load_acq | fence | swap | branch | loop

assign: NAME ":=" expr [deps]
store_rel: NAME ":=rel" expr
load_acq: NAME ":=acq" NAME [deps]
fence: "fence"
swap: NAME ":=" "SWAP" "(" NAME "," expr ")"
branch: "if" "(" expr "=" signed_int ")" block ["else" block]
loop: "while" "(" expr "=" signed_int ")" block
deps: "dep" NAME ("," NAME)*

?expr: sum
?sum: product
    | sum "+" product -> add
    | sum "-" product -> sub
?product: unary
    | product "*" unary -> mul
?unary: primary
    | "-" unary -> neg
?primary: INT -> int_lit
    | NAME -> name
    | "(" expr ")"

post: "exists" "(" cond ")"
?cond: conj
    | cond "\\/" conj -> or_
?conj: negation
    | conj "/\\" negation -> and_
?negation: catom
    | "~" negation -> not_
?catom: NAME "=" signed_int -> atom
    | "true" -> true
    | "false" -> false
    | "(" cond ")"

expect: "expect" "{" (expect_entry ";"?)* "}"
expect_entry: NAME ":" ANSWER
ANSWER: "yes" | "no"

signed_int: SIGNED_INT

TEST_NAME: /[A-Za-z0-9_][A-Za-z0-9_+.\/-]*/
NAME: /[A-Za-z_][A-Za-z0-9_]*/
COMMENT: /#[^\n]*/

%import common.INT
%import common.SIGNED_INT
%import common.WS
%ignore WS
%ignore COMMENT
"""

_PARSER = Lark(_GRAMMAR, parser="lalr")


@dataclass(frozen=True)
class _Loop:
    """Placeholder for a `while` block; never survives validation."""


@v_args(inline=True)
class _LitmusBuilder(Transformer):
    """Turns a parse tree into AST nodes. Bare names in `init` are shared variables."""

    def __init__(self: _LitmusBuilder, shared: frozenset[str]) -> None:
        super().__init__()
        self._shared = shared

    def int_lit(self: _LitmusBuilder, token: Token) -> IntLit:
        return IntLit(int(token))

    def name(self: _LitmusBuilder, token: Token) -> Reg:
        return Reg(str(token))

    def neg(self: _LitmusBuilder, operand: Expr) -> UnaryOp:
        return UnaryOp("-", operand)

    def add(self: _LitmusBuilder, left: Expr, right: Expr) -> BinaryOp:
        return BinaryOp("+", left, right)

    def sub(self: _LitmusBuilder, left: Expr, right: Expr) -> BinaryOp:
        return BinaryOp("-", left, right)

    def mul(self: _LitmusBuilder, left: Expr, right: Expr) -> BinaryOp:
        return BinaryOp("*", left, right)

    def signed_int(self: _LitmusBuilder, token: Token) -> int:
        return int(token)

    def deps(self: _LitmusBuilder, *names: Token) -> tuple[str, ...]:
        return tuple(str(n) for n in names)

    def assign(
        self: _LitmusBuilder, target: Token, expr: Expr, deps: tuple[str, ...] | None
    ) -> Instruction:
        # `r := x` is a load exactly when x is a shared variable
        if isinstance(expr, Reg) and expr.name in self._shared:
            if str(target) in self._shared:
                msg = f"line {target.line}: '{target} := {expr.name}' copies shared memory directly"
                raise LitmusValidationError("shared-in-expression", msg)
            return Load(str(target), expr.name, deps=deps or ())
        if deps is not None:
            if isinstance(expr, Reg):
                msg = f"line {target.line}: '{expr.name}' is not a declared shared variable"
                raise LitmusValidationError("undeclared-var", msg)
            msg = f"line {target.line}: dep annotations only apply to loads"
            raise LitmusValidationError("bad-dep", msg)
        if str(target) in self._shared:
            return Store(str(target), expr)
        return LocalAssign(str(target), expr)

    def store_rel(self: _LitmusBuilder, target: Token, expr: Expr) -> Store:
        return Store(str(target), expr, release=True)

    def load_acq(
        self: _LitmusBuilder, target: Token, location: Token, deps: tuple[str, ...] | None
    ) -> Load:
        return Load(str(target), str(location), acquire=True, deps=deps or ())

    def fence(self: _LitmusBuilder) -> Fence:
        return Fence()

    def swap(self: _LitmusBuilder, target: Token, location: Token, expr: Expr) -> Swap:
        return Swap(str(target), str(location), expr)

    def branch(
        self: _LitmusBuilder,
        condition: Expr,
        value: int,
        then: tuple[Instruction, ...],
        orelse: tuple[Instruction, ...] | None,
    ) -> Branch:
        return Branch(condition, value, then, orelse or ())

    def loop(self: _LitmusBuilder, *_: object) -> _Loop:
        return _Loop()

    def block(self: _LitmusBuilder, *instructions: Instruction) -> tuple[Instruction, ...]:
        return tuple(instructions)

    def thread(self: _LitmusBuilder, name: Token, body: tuple[Instruction, ...]) -> Thread:
        if any(isinstance(instr, _Loop) for instr in walk(body)):
            msg = f"thread {name} contains a loop"
            raise LitmusValidationError("loop-detected", msg)
        return Thread(str(name), body)

    def init_entry(self: _LitmusBuilder, name: Token, value: int) -> tuple[str, int]:
        return (str(name), value)

    def init(self: _LitmusBuilder, *entries: tuple[str, int]) -> tuple[tuple[str, int], ...]:
        return tuple(entries)

    def atom(self: _LitmusBuilder, name: Token, value: int) -> Atom:
        return Atom(str(name), value)

    def true(self: _LitmusBuilder) -> BoolConst:
        return BoolConst(value=True)

    def false(self: _LitmusBuilder) -> BoolConst:
        return BoolConst(value=False)

    def not_(self: _LitmusBuilder, operand: Postcondition) -> Not:
        return Not(operand)

    def and_(self: _LitmusBuilder, left: Postcondition, right: Postcondition) -> And:
        return And(left, right)

    def or_(self: _LitmusBuilder, left: Postcondition, right: Postcondition) -> Or:
        return Or(left, right)

    def post(self: _LitmusBuilder, cond: Postcondition) -> Postcondition:
        return cond

    def expect_entry(self: _LitmusBuilder, model: Token, answer: Token) -> tuple[str, bool]:
        return (str(model), str(answer) == "yes")

    def expect(self: _LitmusBuilder, *entries: tuple[str, bool]) -> tuple[tuple[str, bool], ...]:
        return tuple(entries)

    def start(
        self: _LitmusBuilder, name: Token, init: tuple[tuple[str, int], ...] | None, *rest: object
    ) -> LitmusTest:
        *threads, post, expectations = rest
        return LitmusTest(
            name=str(name),
            init=init or (),
            threads=tuple(threads),  # type: ignore[arg-type]
            post=post,  # type: ignore[arg-type]
            expectations=expectations or (),  # type: ignore[arg-type]
        )


def parse_litmus(text: str) -> LitmusTest:
    """Parse and validate the text of a litmus test.

    Args:
        text: Source text in the litmus format.

    Raises:
        LitmusSyntaxError: If the text does not follow the grammar.
        LitmusValidationError: If the program breaks a structural rule, e.g. it contains a loop.

    Returns:
        LitmusTest: The validated test.
    """
    try:
        tree = _PARSER.parse(text)
    except UnexpectedInput as e:
        expected = getattr(e, "expected", None) or getattr(e, "allowed", None) or ()
        raise LitmusSyntaxError(max(e.line, 0), max(e.column, 0), sorted(expected)) from e

    shared = frozenset(str(entry.children[0]) for entry in tree.find_data("init_entry"))
    try:
        test = _LitmusBuilder(shared).transform(tree)
    except VisitError as e:
        raise e.orig_exc from None
    validate_litmus(test)
    return test


def _check_block(
    thread: str,
    body: tuple[Instruction, ...],
    shared: frozenset[str],
    assigned: frozenset[str],
) -> frozenset[str]:
    for instr in body:
        used = set(reads_of(instr)) if not isinstance(instr, Load) else set()
        if used & shared:
            msg = f"thread {thread}: {sorted(used & shared)} used inside an expression"
            raise LitmusValidationError("shared-in-expression", msg)
        unknown = used - assigned
        if unknown:
            msg = f"thread {thread}: {sorted(unknown)} read before any assignment in this thread"
            raise LitmusValidationError("undeclared-var", msg)
        location = getattr(instr, "location", None)
        if location is not None and location not in shared:
            msg = f"thread {thread}: '{location}' is not declared in init"
            raise LitmusValidationError("undeclared-var", msg)
        target = writes_of(instr)
        if target is not None and target in shared:
            msg = f"thread {thread}: shared variable '{target}' used as a register"
            raise LitmusValidationError("shared-in-expression", msg)
        if isinstance(instr, Load):
            for dep in instr.deps:
                if dep in shared or dep not in assigned:
                    msg = f"thread {thread}: dep register '{dep}' is not assigned before '{instr.register} := {instr.location}'"
                    raise LitmusValidationError("bad-dep", msg)
        if isinstance(instr, Branch):
            assigned = _check_block(thread, instr.then, shared, assigned) | _check_block(
                thread, instr.orelse, shared, assigned
            )
        elif target is not None:
            assigned = assigned | {target}
    return assigned


def validate_litmus(test: LitmusTest) -> None:
    """Check the structural rules of a litmus test.

    Args:
        test: The test to check.

    Raises:
        LitmusValidationError: On the first broken rule.
    """
    locations = [loc for loc, _ in test.init]
    duplicates = sorted({loc for loc in locations if locations.count(loc) > 1})
    if duplicates:
        msg = f"{duplicates} initialised more than once"
        raise LitmusValidationError("duplicate-init", msg)
    names = [t.name for t in test.threads]
    duplicates = sorted({n for n in names if names.count(n) > 1})
    if duplicates:
        msg = f"thread name(s) {duplicates} used more than once"
        raise LitmusValidationError("duplicate-thread", msg)

    shared = frozenset(locations)
    owners: dict[str, str] = {}
    for thread in test.threads:
        _check_block(thread.name, thread.body, shared, frozenset())
        for reg in thread.registers():
            if reg in owners:
                msg = f"register '{reg}' used by both thread {owners[reg]} and thread {thread.name}"
                raise LitmusValidationError("cross-thread-register", msg)
            owners[reg] = thread.name

    for name in sorted(test.post.names()):
        if name not in shared and name not in owners:
            msg = f"postcondition mentions '{name}', which is neither a shared variable nor a register"
            raise LitmusValidationError("undeclared-var", msg)
