from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import TYPE_CHECKING

from wmm.litmus.ast import Branch, Fence, Load, LocalAssign, Reg, Store, Swap

from .pipeline import step_pipeline
from .state import (
    CoreState,
    LabelKind,
    LockAcquire,
    LockRelease,
    SystemState,
    TransitionLabel,
)

if TYPE_CHECKING:
    from wmm.litmus.ast import Instruction, LitmusTest

    from .state import ProgramItem

__all__ = [
    "SWAP_REGISTER",
    "Semantics",
    "SemanticsConfig",
    "Successor",
    "acquire_lock",
    "initial_state",
    "lower_swap",
    "release_lock",
    "step",
    "step_sc",
    "step_tso",
]

SWAP_REGISTER = "$swap"

Successor = tuple[TransitionLabel, SystemState]


class Semantics(Enum):
    SC = "SC"
    TSO = "TSO"
    PIPELINE = "PIPELINE"

    @classmethod
    def from_name(cls: type[Semantics], name: str) -> Semantics:
        """Case-insensitive lookup.

        Raises:
            ValueError: If no semantics has that name.
        """
        try:
            return cls[name.upper()]
        except KeyError as e:
            msg = f"unknown operational semantics '{name}', expected one of {[s.value for s in cls]}"
            raise ValueError(msg) from e


@dataclass(frozen=True)
class SemanticsConfig:
    """Switches of the operational semantics.

    Args:
        strong_release_acquire: Under PIPELINE, an acquire load also waits for every
            program-earlier release store.
    """

    strong_release_acquire: bool = False


def lower_swap(swap: Swap) -> tuple[ProgramItem, ...]:
    """`r := SWAP(x, e)` as `lock; $swap := x; x := e; r := $swap; unlock`."""
    return (
        LockAcquire(),
        Load(SWAP_REGISTER, swap.location),
        Store(swap.location, swap.expr),
        LocalAssign(swap.register, Reg(SWAP_REGISTER)),
        LockRelease(),
    )


def _lower(body: tuple[Instruction, ...]) -> tuple[ProgramItem, ...]:
    program: list[ProgramItem] = []
    for instr in body:
        if isinstance(instr, Swap):
            program.extend(lower_swap(instr))
        elif isinstance(instr, Branch):
            program.append(
                Branch(instr.condition, instr.value, _lower(instr.then), _lower(instr.orelse))  # type: ignore[arg-type]
            )
        else:
            program.append(instr)
    return tuple(program)


def initial_state(test: LitmusTest, semantics: Semantics) -> SystemState:
    """Start state: memory as initialised, every register 0, empty buffers and pipelines.

    Under SC and TSO swaps are lowered into a locked micro-sequence up front;
    the pipeline executes them as single instructions.
    """
    cores = tuple(
        CoreState(
            thread=thread.name,
            program=thread.body if semantics is Semantics.PIPELINE else _lower(thread.body),
            regs=tuple(sorted((reg, 0) for reg in thread.registers())),
        )
        for thread in test.threads
    )
    memory = tuple(test.init_values.items())
    return SystemState(memory=memory, cores=cores)


def acquire_lock(state: SystemState, index: int) -> SystemState | None:
    """Take the global lock for core `index`, or None if some core already holds it."""
    if state.lock is not None:
        return None
    return replace(state, lock=index)


def release_lock(state: SystemState, index: int) -> SystemState | None:
    """Give the lock back, or None if core `index` does not hold it."""
    if state.lock != index:
        return None
    return replace(state, lock=None)


def _local(state: SystemState, index: int, head: ProgramItem, rest: tuple[ProgramItem, ...]) -> list[Successor]:
    """Rules that never touch memory: local assignments and branches."""
    core = state.cores[index]
    tau = TransitionLabel.tau(core.thread)
    if isinstance(head, LocalAssign):
        value = head.expr.evaluate(core.registers)
        updated = replace(core.with_registers({head.register: value}), program=rest)
        return [(tau, state.with_core(index, updated))]
    if isinstance(head, Branch):
        arm = head.then if head.taken(core.registers) else head.orelse
        return [(tau, state.with_core(index, replace(core, program=tuple(arm) + rest)))]
    return []


def _step_core_sc(state: SystemState, index: int) -> list[Successor]:
    core = state.cores[index]
    if not core.program:
        return []
    head, rest = core.program[0], core.program[1:]
    thread = core.thread
    if isinstance(head, (LocalAssign, Branch)):
        return _local(state, index, head, rest)
    if isinstance(head, LockAcquire):
        locked = acquire_lock(state, index)
        if locked is None:
            return []
        return [(TransitionLabel.tau(thread), locked.with_core(index, replace(core, program=rest)))]
    if isinstance(head, LockRelease):
        unlocked = release_lock(state, index)
        if unlocked is None:
            return []
        return [(TransitionLabel.tau(thread), unlocked.with_core(index, replace(core, program=rest)))]
    if isinstance(head, Fence):
        return [(TransitionLabel(LabelKind.FENCE, thread), state.with_core(index, replace(core, program=rest)))]
    if state.blocked(index):
        return []
    if isinstance(head, Store):
        value = head.expr.evaluate(core.registers)
        label = TransitionLabel(LabelKind.WRITE, thread, head.location, value)
        return [(label, state.write(head.location, value).with_core(index, replace(core, program=rest)))]
    if isinstance(head, Load):
        value = state.read(head.location)
        label = TransitionLabel(LabelKind.READ, thread, head.location, value)
        updated = replace(core.with_registers({head.register: value}), program=rest)
        return [(label, state.with_core(index, updated))]
    msg = f"step_sc: unexpected program item {head!r}"
    raise TypeError(msg)


def step_sc(state: SystemState) -> tuple[Successor, ...]:
    """Successors under sequential consistency: one core executes its next instruction.

    Args:
        state: The current state.

    Returns:
        tuple[Successor, ...]: (label, state) pairs, core by core. Empty for terminal states.
    """
    return tuple(s for index in range(len(state.cores)) for s in _step_core_sc(state, index))


def _flush(state: SystemState, index: int) -> list[Successor]:
    core = state.cores[index]
    if not core.buffer or state.blocked(index):
        return []
    (location, value), remaining = core.buffer[0], core.buffer[1:]
    label = TransitionLabel(LabelKind.WRITE, core.thread, location, value)
    return [(label, state.write(location, value).with_core(index, replace(core, buffer=remaining)))]


def _step_core_tso(state: SystemState, index: int) -> list[Successor]:
    core = state.cores[index]
    if not core.program:
        return []
    head, rest = core.program[0], core.program[1:]
    thread = core.thread
    tau = TransitionLabel.tau(thread)
    if isinstance(head, (LocalAssign, Branch)):
        return _local(state, index, head, rest)
    if isinstance(head, (LockAcquire, LockRelease)):
        if core.buffer:
            return []
        moved = acquire_lock(state, index) if isinstance(head, LockAcquire) else release_lock(state, index)
        if moved is None:
            return []
        return [(tau, moved.with_core(index, replace(core, program=rest)))]
    if isinstance(head, Fence):
        if core.buffer:
            return []
        return [(TransitionLabel(LabelKind.FENCE, thread), state.with_core(index, replace(core, program=rest)))]
    if isinstance(head, Store):
        value = head.expr.evaluate(core.registers)
        buffered = replace(core, program=rest, buffer=(*core.buffer, (head.location, value)))
        return [(tau, state.with_core(index, buffered))]
    if isinstance(head, Load):
        hits = [value for location, value in core.buffer if location == head.location]
        if hits:
            updated = replace(core.with_registers({head.register: hits[-1]}), program=rest)
            return [(tau, state.with_core(index, updated))]
        if state.blocked(index):
            return []
        value = state.read(head.location)
        updated = replace(core.with_registers({head.register: value}), program=rest)
        return [(TransitionLabel(LabelKind.READ, thread, head.location, value), state.with_core(index, updated))]
    msg = f"step_tso: unexpected program item {head!r}"
    raise TypeError(msg)


def step_tso(state: SystemState) -> tuple[Successor, ...]:
    """Successors under TSO: per core, its next instruction or a flush of its oldest buffered store.

    Stores go to the core's FIFO write buffer. Loads take the newest buffered
    value for their location, or read memory when the buffer holds none. A
    fence, and taking or releasing the lock, need an empty buffer.

    Args:
        state: The current state.

    Returns:
        tuple[Successor, ...]: (label, state) pairs, core by core.
    """
    successors: list[Successor] = []
    for index in range(len(state.cores)):
        successors += _step_core_tso(state, index)
        successors += _flush(state, index)
    return tuple(successors)


def step(
    state: SystemState, semantics: Semantics, config: SemanticsConfig | None = None
) -> tuple[Successor, ...]:
    """Successors of a state under the given semantics."""
    if semantics is Semantics.SC:
        return step_sc(state)
    if semantics is Semantics.TSO:
        return step_tso(state)
    return step_pipeline(state, config)
