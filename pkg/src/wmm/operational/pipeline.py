"""Pipeline semantics: in-order fetch, out-of-order commit.

Every core fetches its program into a pipeline of pending instruction instances
and commits them in any order their guards allow. Source registers are renamed
at fetch, so only true register dependencies order instructions. Branches are
fetched along a predicted arm and resolved later; a wrong prediction is a dead
end. Stores never commit past an unresolved branch, loads may.
"""

from __future__ import annotations

from dataclasses import replace
from typing import TYPE_CHECKING

from wmm.litmus.ast import Branch, Fence, Load, LocalAssign, Store, Swap, reads_of

from .state import (
    CoreState,
    LabelKind,
    Operand,
    PendingInstruction,
    SystemState,
    TransitionLabel,
)

if TYPE_CHECKING:
    from .semantics import SemanticsConfig, Successor
    from .state import ProgramItem

__all__ = ["step_pipeline"]


def _rename(
    instr: ProgramItem, seq: int, core: CoreState, pending: list[PendingInstruction], *, predicted: bool = False
) -> PendingInstruction:
    """Bind each source register to its value or to the pending instruction producing it."""
    last_commit = dict(core.reg_seq)
    regs = core.registers
    operands = []
    for reg in sorted(set(reads_of(instr))):  # type: ignore[arg-type]
        writers = [p.seq for p in pending if p.target == reg]
        if writers and max(writers) > last_commit.get(reg, -1):
            operands.append(Operand(reg, producer=max(writers)))
        else:
            operands.append(Operand(reg, value=regs.get(reg, 0)))
    return PendingInstruction(seq, instr, tuple(operands), predicted=predicted)  # type: ignore[arg-type]


def _fetch(state: SystemState, index: int) -> list[Successor]:
    core = state.cores[index]
    if not core.program:
        return []
    tau = TransitionLabel.tau(core.thread)
    head = core.program[0]
    pending = list(core.pending)
    if isinstance(head, Branch):
        successors = []
        for predicted, arm in ((True, head.then), (False, head.orelse)):
            check = _rename(head, core.next_seq, core, pending, predicted=predicted)
            fetched = replace(
                core,
                program=tuple(arm) + core.program[1:],
                pending=(*core.pending, check),
                next_seq=core.next_seq + 1,
            )
            successors.append((tau, state.with_core(index, fetched)))
        return successors

    seq = core.next_seq
    rest = core.program
    while rest and not isinstance(rest[0], Branch):
        pending.append(_rename(rest[0], seq, core, pending))
        seq += 1
        rest = rest[1:]
    fetched = replace(core, program=rest, pending=tuple(pending), next_seq=seq)
    return [(tau, state.with_core(index, fetched))]


def _retire(core: CoreState, k: int, value: int | None = None) -> CoreState:
    """Remove pending instance `k`; if it writes a register, forward `value` to its consumers."""
    done = core.pending[k]
    rest = core.pending[:k] + core.pending[k + 1 :]
    target = done.target
    if target is None or value is None:
        return replace(core, pending=rest)
    rest = tuple(p.supply(done.seq, value) for p in rest)
    last_commit = dict(core.reg_seq)
    if done.seq <= last_commit.get(target, -1):
        return replace(core, pending=rest)
    last_commit[target] = done.seq
    updated = core.with_registers({target: value})
    return replace(updated, pending=rest, reg_seq=tuple(sorted(last_commit.items())))


def _access_blocked(earlier: tuple[PendingInstruction, ...], location: str | None) -> bool:
    """Guards for writing memory: no earlier access to the location, fence, acquire load or branch."""
    for e in earlier:
        if isinstance(e.instr, (Fence, Branch)):
            return True
        if isinstance(e.instr, Load) and e.instr.acquire:
            return True
        if e.location == location:
            return True
    return False


def _commit_store(state: SystemState, index: int, k: int, instr: Store) -> list[Successor]:
    core = state.cores[index]
    p = core.pending[k]
    if instr.release and k != 0:
        return []
    if state.blocked(index) or _access_blocked(core.pending[:k], instr.location):
        return []
    value = instr.expr.evaluate(p.env)
    label = TransitionLabel(LabelKind.WRITE, core.thread, instr.location, value)
    return [(label, state.write(instr.location, value).with_core(index, _retire(core, k)))]


def _commit_load(
    state: SystemState, index: int, k: int, instr: Load, config: SemanticsConfig | None
) -> list[Successor]:
    core = state.cores[index]
    earlier = core.pending[:k]
    for e in earlier:
        if isinstance(e.instr, Fence):
            return []
        if isinstance(e.instr, Load) and e.instr.acquire:
            return []
        if e.reads_memory and e.location == instr.location:
            return []
        if (
            config is not None
            and config.strong_release_acquire
            and instr.acquire
            and isinstance(e.instr, Store)
            and e.instr.release
        ):
            return []

    writers = [e for e in earlier if e.writes_memory and e.location == instr.location]
    if writers:
        source = writers[-1]
        if not isinstance(source.instr, Store) or not source.resolved:
            return []
        value = source.instr.expr.evaluate(source.env)
        return [(TransitionLabel.tau(core.thread), state.with_core(index, _retire(core, k, value)))]

    if state.blocked(index):
        return []
    value = state.read(instr.location)
    label = TransitionLabel(LabelKind.READ, core.thread, instr.location, value)
    return [(label, state.with_core(index, _retire(core, k, value)))]


def _swap_read(state: SystemState, index: int, k: int, instr: Swap) -> list[Successor]:
    """First half of a swap: read memory and take the lock."""
    core = state.cores[index]
    p = core.pending[k]
    if state.lock is not None or _access_blocked(core.pending[:k], instr.location):
        return []
    value = state.read(instr.location)
    label = TransitionLabel(LabelKind.READ, core.thread, instr.location, value)
    pending = core.pending[:k] + (replace(p, loaded=value),) + core.pending[k + 1 :]
    locked = replace(state, lock=index)
    return [(label, locked.with_core(index, replace(core, pending=pending)))]


def _swap_write(state: SystemState, index: int) -> list[Successor]:
    """Second half of the swap holding the lock: write memory, release the lock, set the register."""
    core = state.cores[index]
    for k, p in enumerate(core.pending):
        if isinstance(p.instr, Swap) and p.loaded is not None:
            value = p.instr.expr.evaluate(p.env)
            label = TransitionLabel(LabelKind.WRITE, core.thread, p.instr.location, value)
            unlocked = replace(state.write(p.instr.location, value), lock=None)
            return [(label, unlocked.with_core(index, _retire(core, k, p.loaded)))]
    return []


def _commit(state: SystemState, index: int, k: int, config: SemanticsConfig | None) -> list[Successor]:
    core = state.cores[index]
    p = core.pending[k]
    if not p.resolved:
        return []
    instr = p.instr
    tau = TransitionLabel.tau(core.thread)
    if isinstance(instr, LocalAssign):
        value = instr.expr.evaluate(p.env)
        return [(tau, state.with_core(index, _retire(core, k, value)))]
    if isinstance(instr, Branch):
        if instr.taken(p.env) != p.predicted:
            return []
        return [(tau, state.with_core(index, _retire(core, k)))]
    if isinstance(instr, Fence):
        if k != 0:
            return []
        return [(TransitionLabel(LabelKind.FENCE, core.thread), state.with_core(index, _retire(core, k)))]
    if isinstance(instr, Store):
        return _commit_store(state, index, k, instr)
    if isinstance(instr, Load):
        return _commit_load(state, index, k, instr, config)
    if isinstance(instr, Swap):
        return _swap_read(state, index, k, instr)
    msg = f"step_pipeline: unexpected pending instruction {instr!r}"
    raise TypeError(msg)


def step_pipeline(state: SystemState, config: SemanticsConfig | None = None) -> tuple[Successor, ...]:
    """Successors under the pipeline semantics.

    Per core: one fetch step, then every pending instance whose guards hold
    commits. A core holding the swap lock can only finish its swap.

    Args:
        state: The current state.
        config: Semantics switches. Defaults to all off.

    Returns:
        tuple[Successor, ...]: (label, state) pairs, core by core.
    """
    successors: list[Successor] = []
    for index, core in enumerate(state.cores):
        if state.lock == index:
            successors += _swap_write(state, index)
            continue
        successors += _fetch(state, index)
        for k in range(len(core.pending)):
            successors += _commit(state, index, k, config)
    return tuple(successors)
