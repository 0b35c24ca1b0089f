from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import TYPE_CHECKING, Union

from typing_extensions import TypeAlias

from wmm.datamodels import FinalState
from wmm.litmus.ast import Branch, Fence, Load, LocalAssign, Store, Swap

if TYPE_CHECKING:
    from collections.abc import Mapping

    from wmm.litmus.ast import LitmusTest

__all__ = [
    "CoreState",
    "LabelKind",
    "LockAcquire",
    "LockRelease",
    "Operand",
    "PendingInstruction",
    "ProgramItem",
    "SystemState",
    "TransitionLabel",
]


@dataclass(frozen=True)
class LockAcquire:
    """Take the global lock. First micro-step of a lowered swap."""


@dataclass(frozen=True)
class LockRelease:
    """Give the global lock back. Last micro-step of a lowered swap."""


ProgramItem: TypeAlias = Union[LocalAssign, Store, Load, Fence, Swap, Branch, LockAcquire, LockRelease]


@dataclass(frozen=True)
class Operand:
    """A source register of a pending instruction, renamed at fetch.

    Either `value` is known, or `producer` is the sequence number of the
    earlier pending instruction that will write the register.
    """

    register: str
    value: int | None = None
    producer: int | None = None

    @property
    def resolved(self: Operand) -> bool:
        return self.producer is None


@dataclass(frozen=True)
class PendingInstruction:
    """A fetched instruction instance waiting in a pipeline.

    Args:
        seq: Per-core fetch sequence number, increasing in program order.
        instr: The instruction.
        operands: Renamed source registers (for loads: the dep registers).
        predicted: For branches, the arm the fetch speculated into.
        loaded: For swaps past their read half, the value read.
    """

    seq: int
    instr: Union[LocalAssign, Store, Load, Fence, Swap, Branch]
    operands: tuple[Operand, ...] = ()
    predicted: bool = False
    loaded: int | None = None

    @property
    def resolved(self: PendingInstruction) -> bool:
        return all(op.resolved for op in self.operands)

    @property
    def env(self: PendingInstruction) -> dict[str, int]:
        return {op.register: op.value for op in self.operands if op.value is not None}

    @property
    def location(self: PendingInstruction) -> str | None:
        return getattr(self.instr, "location", None)

    @property
    def target(self: PendingInstruction) -> str | None:
        """Register written on commit, if any."""
        if isinstance(self.instr, (LocalAssign, Load, Swap)):
            return self.instr.register
        return None

    @property
    def writes_memory(self: PendingInstruction) -> bool:
        return isinstance(self.instr, (Store, Swap))

    @property
    def reads_memory(self: PendingInstruction) -> bool:
        return isinstance(self.instr, (Load, Swap))

    def supply(self: PendingInstruction, producer: int, value: int) -> PendingInstruction:
        """Fill in every operand waiting on `producer`."""
        if all(op.producer != producer for op in self.operands):
            return self
        operands = tuple(
            Operand(op.register, value=value) if op.producer == producer else op
            for op in self.operands
        )
        return replace(self, operands=operands)


@dataclass(frozen=True)
class CoreState:
    """Local state of one core.

    Args:
        thread: Name of the thread the core runs.
        program: Remaining, not yet executed (or fetched) program.
        regs: Register values, sorted by register name.
        buffer: TSO write buffer, oldest entry first.
        pending: Pipeline contents, in program order.
        next_seq: Sequence number of the next fetched instruction.
        reg_seq: Per register, the sequence number of its last committed pipeline writer.
    """

    thread: str
    program: tuple[ProgramItem, ...]
    regs: tuple[tuple[str, int], ...]
    buffer: tuple[tuple[str, int], ...] = ()
    pending: tuple[PendingInstruction, ...] = ()
    next_seq: int = 0
    reg_seq: tuple[tuple[str, int], ...] = ()

    @property
    def registers(self: CoreState) -> dict[str, int]:
        return dict(self.regs)

    @property
    def idle(self: CoreState) -> bool:
        """True once program, write buffer and pipeline are all empty."""
        return not self.program and not self.buffer and not self.pending

    def with_registers(self: CoreState, updates: Mapping[str, int]) -> CoreState:
        regs = dict(self.regs)
        regs.update(updates)
        return replace(self, regs=tuple(sorted(regs.items())))


@dataclass(frozen=True)
class SystemState:
    """Shared memory, every core, and the owner of the global lock (if taken)."""

    memory: tuple[tuple[str, int], ...]
    cores: tuple[CoreState, ...]
    lock: int | None = None

    def read(self: SystemState, location: str) -> int:
        for loc, value in self.memory:
            if loc == location:
                return value
        raise KeyError(location)

    def write(self: SystemState, location: str, value: int) -> SystemState:
        memory = tuple((loc, value if loc == location else v) for loc, v in self.memory)
        return replace(self, memory=memory)

    def with_core(self: SystemState, index: int, core: CoreState) -> SystemState:
        cores = self.cores[:index] + (core,) + self.cores[index + 1 :]
        return replace(self, cores=cores)

    def blocked(self: SystemState, index: int) -> bool:
        """True if another core holds the lock, so core `index` may not touch memory."""
        return self.lock is not None and self.lock != index

    @property
    def terminal(self: SystemState) -> bool:
        return self.lock is None and all(core.idle for core in self.cores)

    def final_state(self: SystemState, test: LitmusTest) -> FinalState:
        registers = {reg: value for core in self.cores for reg, value in core.regs}
        return FinalState.capture(test, dict(self.memory), registers)


class LabelKind(Enum):
    READ = "R"
    WRITE = "W"
    FENCE = "F"
    TAU = "tau"


@dataclass(frozen=True)
class TransitionLabel:
    """The memory interaction of one step, e.g. `A: W x=1`."""

    kind: LabelKind
    thread: str
    location: str | None = None
    value: int | None = None

    @classmethod
    def tau(cls: type[TransitionLabel], thread: str) -> TransitionLabel:
        return cls(LabelKind.TAU, thread)

    def render(self: TransitionLabel) -> str:
        if self.kind in (LabelKind.READ, LabelKind.WRITE):
            return f"{self.thread}: {self.kind.value} {self.location}={self.value}"
        return f"{self.thread}: {self.kind.value}"
