from __future__ import annotations

from typing import TYPE_CHECKING

from .ast import (
    And,
    Atom,
    BinaryOp,
    BoolConst,
    Branch,
    Fence,
    IntLit,
    Load,
    LocalAssign,
    Not,
    Or,
    Reg,
    Store,
    Swap,
    UnaryOp,
)

if TYPE_CHECKING:
    from .ast import Expr, Instruction, LitmusTest, Postcondition

__all__ = ["serialize_litmus"]

INDENT = "    "

_EXPR_PRECEDENCE = {"+": 1, "-": 1, "*": 2}
_UNARY_PRECEDENCE = 3
_ATOM_PRECEDENCE = 4

_OR, _AND, _NOT, _ATOM = 1, 2, 3, 4


def _precedence(expr: Expr) -> int:
    if isinstance(expr, BinaryOp):
        return _EXPR_PRECEDENCE[expr.op]
    if isinstance(expr, UnaryOp) or (isinstance(expr, IntLit) and expr.value < 0):
        return _UNARY_PRECEDENCE
    return _ATOM_PRECEDENCE


def _expr(expr: Expr, minimum: int = 0) -> str:
    if isinstance(expr, IntLit):
        text = str(expr.value)
    elif isinstance(expr, Reg):
        text = expr.name
    elif isinstance(expr, UnaryOp):
        text = f"-{_expr(expr.operand, _UNARY_PRECEDENCE)}"
    else:
        level = _EXPR_PRECEDENCE[expr.op]
        text = f"{_expr(expr.left, level)} {expr.op} {_expr(expr.right, level + 1)}"
    return f"({text})" if _precedence(expr) < minimum else text


def _cond(post: Postcondition, minimum: int = 0) -> str:
    if isinstance(post, Atom):
        text, level = f"{post.name} = {post.value}", _ATOM
    elif isinstance(post, BoolConst):
        text, level = ("true" if post.value else "false"), _ATOM
    elif isinstance(post, Not):
        text, level = f"~{_cond(post.operand, _NOT)}", _NOT
    elif isinstance(post, And):
        text, level = f"{_cond(post.left, _AND)} /\\ {_cond(post.right, _NOT)}", _AND
    else:
        text, level = f"{_cond(post.left, _OR)} \\/ {_cond(post.right, _AND)}", _OR
    return f"({text})" if level < minimum else text


def _deps(deps: tuple[str, ...]) -> str:
    return f" dep {','.join(deps)}" if deps else ""


def _instruction(instr: Instruction, depth: int) -> list[str]:
    pad = INDENT * depth
    if isinstance(instr, LocalAssign):
        return [f"{pad}{instr.register} := {_expr(instr.expr)};"]
    if isinstance(instr, Store):
        op = ":=rel" if instr.release else ":="
        return [f"{pad}{instr.location} {op} {_expr(instr.expr)};"]
    if isinstance(instr, Load):
        op = ":=acq" if instr.acquire else ":="
        return [f"{pad}{instr.register} {op} {instr.location}{_deps(instr.deps)};"]
    if isinstance(instr, Fence):
        return [f"{pad}fence;"]
    if isinstance(instr, Swap):
        return [f"{pad}{instr.register} := SWAP({instr.location}, {_expr(instr.expr)});"]
    return _branch(instr, depth)


def _block(body: tuple[Instruction, ...], depth: int) -> list[str]:
    return [line for instr in body for line in _instruction(instr, depth)]


def _branch(instr: Branch, depth: int) -> list[str]:
    pad = INDENT * depth
    lines = [f"{pad}if ({_expr(instr.condition)} = {instr.value}) {{"]
    lines += _block(instr.then, depth + 1)
    if instr.orelse:
        lines.append(f"{pad}}} else {{")
        lines += _block(instr.orelse, depth + 1)
    lines.append(f"{pad}}}")
    return lines


def serialize_litmus(test: LitmusTest) -> str:
    """Render a litmus test in canonical form.

    Threads appear in declaration order, one instruction per line, and the
    output parses back to an identical test.

    Args:
        test: The test to render.

    Returns:
        str: The canonical source text, ending with a newline.
    """
    lines = [f"test {test.name}"]
    entries = "".join(f" {loc} = {value};" for loc, value in test.init)
    lines.append(f"init {{{entries} }}")
    for thread in test.threads:
        if not thread.body:
            lines.append(f"thread {thread.name} {{ }}")
            continue
        lines.append(f"thread {thread.name} {{")
        lines += _block(thread.body, 1)
        lines.append("}")
    lines.append(f"exists ({_cond(test.post)})")
    if test.expectations:
        answers = "".join(
            f" {model}: {'yes' if reachable else 'no'};"
            for model, reachable in test.expectations
        )
        lines.append(f"expect {{{answers} }}")
    return "\n".join(lines) + "\n"
