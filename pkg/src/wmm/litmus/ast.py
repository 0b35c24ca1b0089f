from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Union

from typing_extensions import TypeAlias

from wmm.helpers.utilities import wrap_int64

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping

    from wmm.datamodels.final_state import FinalState

__all__ = [
    "And",
    "Atom",
    "BinaryOp",
    "BoolConst",
    "Branch",
    "Expr",
    "Fence",
    "Instruction",
    "IntLit",
    "LitmusTest",
    "Load",
    "LocalAssign",
    "Not",
    "Or",
    "Postcondition",
    "Reg",
    "Store",
    "Swap",
    "Thread",
    "UnaryOp",
    "walk",
]


@dataclass(frozen=True)
class IntLit:
    value: int

    def registers(self: IntLit) -> frozenset[str]:
        return frozenset()

    def evaluate(self: IntLit, env: Mapping[str, int]) -> int:  # noqa: ARG002
        return wrap_int64(self.value)


@dataclass(frozen=True)
class Reg:
    name: str

    def registers(self: Reg) -> frozenset[str]:
        return frozenset((self.name,))

    def evaluate(self: Reg, env: Mapping[str, int]) -> int:
        return env.get(self.name, 0)


@dataclass(frozen=True)
class UnaryOp:
    op: str
    operand: Expr

    def registers(self: UnaryOp) -> frozenset[str]:
        return self.operand.registers()

    def evaluate(self: UnaryOp, env: Mapping[str, int]) -> int:
        return wrap_int64(-self.operand.evaluate(env))


_BINARY = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
}


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: Expr
    right: Expr

    def __post_init__(self: BinaryOp) -> None:  # noqa: D105
        if self.op not in _BINARY:
            msg = f"BinaryOp: unsupported operator '{self.op}'"
            raise ValueError(msg)

    def registers(self: BinaryOp) -> frozenset[str]:
        return self.left.registers() | self.right.registers()

    def evaluate(self: BinaryOp, env: Mapping[str, int]) -> int:
        return wrap_int64(
            _BINARY[self.op](self.left.evaluate(env), self.right.evaluate(env))
        )


Expr: TypeAlias = Union[IntLit, Reg, UnaryOp, BinaryOp]


@dataclass(frozen=True)
class LocalAssign:
    """`r := e`, a purely local register update."""

    register: str
    expr: Expr


@dataclass(frozen=True)
class Store:
    """`x := e`, or `x :=rel e` when `release` is set."""

    location: str
    expr: Expr
    release: bool = False


@dataclass(frozen=True)
class Load:
    """`r := x`, `r :=acq x`, optionally ordered after the registers in `deps`."""

    register: str
    location: str
    acquire: bool = False
    deps: tuple[str, ...] = ()


@dataclass(frozen=True)
class Fence:
    pass


@dataclass(frozen=True)
class Swap:
    """`r := SWAP(x, e)`: atomically store `e` into `x` and return the old value in `r`."""

    register: str
    location: str
    expr: Expr


@dataclass(frozen=True)
class Branch:
    """`if (cond = value) { then } else { orelse }`."""

    condition: Expr
    value: int
    then: tuple[Instruction, ...]
    orelse: tuple[Instruction, ...] = ()

    def taken(self: Branch, env: Mapping[str, int]) -> bool:
        return self.condition.evaluate(env) == wrap_int64(self.value)


Instruction: TypeAlias = Union[LocalAssign, Store, Load, Fence, Swap, Branch]


def walk(body: tuple[Instruction, ...]) -> Iterator[Instruction]:
    """Yield every instruction of a block in program-text order, descending into branch arms."""
    for instr in body:
        yield instr
        if isinstance(instr, Branch):
            yield from walk(instr.then)
            yield from walk(instr.orelse)


def reads_of(instr: Instruction) -> tuple[str, ...]:
    """Registers an instruction reads, in a stable order."""
    if isinstance(instr, (LocalAssign, Store, Swap)):
        return tuple(sorted(instr.expr.registers()))
    if isinstance(instr, Load):
        return instr.deps
    if isinstance(instr, Branch):
        return tuple(sorted(instr.condition.registers()))
    return ()


def writes_of(instr: Instruction) -> str | None:
    """Register an instruction assigns, if any."""
    if isinstance(instr, (LocalAssign, Load, Swap)):
        return instr.register
    return None


@dataclass(frozen=True)
class Atom:
    """`name = value`, where name is a register or a shared location."""

    name: str
    value: int

    def names(self: Atom) -> frozenset[str]:
        return frozenset((self.name,))

    def evaluate(self: Atom, state: FinalState) -> bool:
        return state.value_of(self.name) == self.value


@dataclass(frozen=True)
class BoolConst:
    value: bool

    def names(self: BoolConst) -> frozenset[str]:
        return frozenset()

    def evaluate(self: BoolConst, state: FinalState) -> bool:  # noqa: ARG002
        return self.value


@dataclass(frozen=True)
class Not:
    operand: Postcondition

    def names(self: Not) -> frozenset[str]:
        return self.operand.names()

    def evaluate(self: Not, state: FinalState) -> bool:
        return not self.operand.evaluate(state)


@dataclass(frozen=True)
class And:
    left: Postcondition
    right: Postcondition

    def names(self: And) -> frozenset[str]:
        return self.left.names() | self.right.names()

    def evaluate(self: And, state: FinalState) -> bool:
        return self.left.evaluate(state) and self.right.evaluate(state)


@dataclass(frozen=True)
class Or:
    left: Postcondition
    right: Postcondition

    def names(self: Or) -> frozenset[str]:
        return self.left.names() | self.right.names()

    def evaluate(self: Or, state: FinalState) -> bool:
        return self.left.evaluate(state) or self.right.evaluate(state)


Postcondition: TypeAlias = Union[Atom, BoolConst, Not, And, Or]


@dataclass(frozen=True)
class Thread:
    name: str
    body: tuple[Instruction, ...] = ()

    def registers(self: Thread) -> tuple[str, ...]:
        """Every register the thread mentions, in order of first appearance."""
        seen: dict[str, None] = {}
        for instr in walk(self.body):
            for reg in reads_of(instr):
                seen.setdefault(reg, None)
            written = writes_of(instr)
            if written is not None:
                seen.setdefault(written, None)
        return tuple(seen)


@dataclass(frozen=True)
class LitmusTest:
    """A parsed and validated litmus test.

    Args:
        name: Test name, e.g. `SB` or `MP+rel/acq`.
        init: (location, initial value) pairs in declaration order.
        threads: The threads in declaration order.
        post: The `exists` postcondition.
        expectations: (model, reachable) pairs from the optional expect block.
    """

    name: str
    init: tuple[tuple[str, int], ...]
    threads: tuple[Thread, ...]
    post: Postcondition
    expectations: tuple[tuple[str, bool], ...] = ()

    @property
    def locations(self: LitmusTest) -> tuple[str, ...]:
        return tuple(loc for loc, _ in self.init)

    @property
    def init_values(self: LitmusTest) -> dict[str, int]:
        return {loc: wrap_int64(value) for loc, value in self.init}

    def thread(self: LitmusTest, name: str) -> Thread:
        for thread in self.threads:
            if thread.name == name:
                return thread
        raise KeyError(name)

    def registers(self: LitmusTest, thread: str) -> tuple[str, ...]:
        return self.thread(thread).registers()

    def thread_of(self: LitmusTest, register: str) -> str:
        """Name of the thread owning a register.

        Raises:
            KeyError: If no thread mentions the register.
        """
        for thread in self.threads:
            if register in thread.registers():
                return thread.name
        raise KeyError(register)

    def expectation(self: LitmusTest, model: str) -> bool | None:
        """Expected reachability for a model (case-insensitive), None if the test does not say."""
        for name, reachable in self.expectations:
            if name.upper() == model.upper():
                return reachable
        return None
