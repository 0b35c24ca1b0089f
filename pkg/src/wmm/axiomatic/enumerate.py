from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Union

from typing_extensions import TypeAlias

from wmm.helpers.utilities import LOGGER_NAME, wrap_int64
from wmm.litmus.ast import Branch, Fence, Load, LocalAssign, Store, Swap
from wmm.relations import ACQUIRE, INIT_THREAD, RELEASE, RMW, Event, EventKind

from .graph import ExecutionGraph

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping

    from wmm.litmus.ast import Expr, Instruction, LitmusTest

__all__ = ["count_candidates", "enumerate_candidates"]


@dataclass(frozen=True)
class _Decision:
    """A branch together with the direction a candidate assumes for it."""

    branch: Branch
    taken: bool


_Step: TypeAlias = Union[LocalAssign, Store, Load, Fence, Swap, _Decision]


def _paths(body: tuple[Instruction, ...]) -> list[tuple[_Step, ...]]:
    """Every straight-line path through a block, the then-arm of each branch first."""
    paths: list[tuple[_Step, ...]] = [()]
    for instr in body:
        if isinstance(instr, Branch):
            arms = [
                (_Decision(instr, taken=True), _paths(instr.then)),
                (_Decision(instr, taken=False), _paths(instr.orelse)),
            ]
            paths = [
                (*path, decision, *sub)
                for path in paths
                for decision, subs in arms
                for sub in subs
            ]
        else:
            paths = [(*path, instr) for path in paths]
    return paths


@dataclass(frozen=True)
class _Proto:
    """An event whose value is still unknown."""

    thread: str
    kind: EventKind
    location: str | None
    tags: frozenset[str] = frozenset()


def _evaluate(expr: Expr, regs: Mapping[str, int | None]) -> int | None:
    if any(regs.get(r, 0) is None for r in expr.registers()):
        return None
    return expr.evaluate({r: v for r, v in regs.items() if v is not None})


@dataclass
class _Skeleton:
    """Events, program order and dependencies of one choice of path per thread.

    Values are not part of a skeleton: they follow from a reads-from choice by
    replaying the paths.
    """

    test: LitmusTest
    paths: tuple[tuple[_Step, ...], ...]
    protos: list[_Proto] = field(default_factory=list)
    step_events: list[list[tuple[int, ...]]] = field(default_factory=list)
    po: list[tuple[int, int]] = field(default_factory=list)
    dep: set[tuple[int, int]] = field(default_factory=set)
    ctrl: set[tuple[int, int]] = field(default_factory=set)
    rmw: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self: _Skeleton) -> None:  # noqa: D105
        for loc, _ in self.test.init:
            self.protos.append(_Proto(INIT_THREAD, EventKind.INIT, loc))
        for thread, path in zip(self.test.threads, self.paths):
            self.step_events.append(self._lay_out(thread.name, path))

    def _emit(self: _Skeleton, proto: _Proto, thread_events: list[int], ctrl_sources: set[int]) -> int:
        eid = len(self.protos)
        self.protos.append(proto)
        self.po.extend((earlier, eid) for earlier in thread_events)
        self.ctrl.update((src, eid) for src in ctrl_sources)
        thread_events.append(eid)
        return eid

    def _lay_out(self: _Skeleton, thread: str, path: tuple[_Step, ...]) -> list[tuple[int, ...]]:
        taint: dict[str, frozenset[int]] = {}
        ctrl_sources: set[int] = set()
        thread_events: list[int] = []
        layout: list[tuple[int, ...]] = []

        def sources(expr: Expr) -> frozenset[int]:
            return frozenset().union(*(taint.get(r, frozenset()) for r in expr.registers()))

        for step in path:
            if isinstance(step, LocalAssign):
                taint[step.register] = sources(step.expr)
                layout.append(())
            elif isinstance(step, Store):
                tags = frozenset({RELEASE}) if step.release else frozenset()
                wid = self._emit(_Proto(thread, EventKind.WRITE, step.location, tags), thread_events, ctrl_sources)
                self.dep.update((src, wid) for src in sources(step.expr))
                layout.append((wid,))
            elif isinstance(step, Load):
                tags = frozenset({ACQUIRE}) if step.acquire else frozenset()
                rid = self._emit(_Proto(thread, EventKind.READ, step.location, tags), thread_events, ctrl_sources)
                for reg in step.deps:
                    self.dep.update((src, rid) for src in taint.get(reg, frozenset()))
                taint[step.register] = frozenset({rid})
                layout.append((rid,))
            elif isinstance(step, Fence):
                fid = self._emit(_Proto(thread, EventKind.FENCE, None), thread_events, ctrl_sources)
                layout.append((fid,))
            elif isinstance(step, Swap):
                tags = frozenset({RMW})
                rid = self._emit(_Proto(thread, EventKind.READ, step.location, tags), thread_events, ctrl_sources)
                wid = self._emit(_Proto(thread, EventKind.WRITE, step.location, tags), thread_events, ctrl_sources)
                self.dep.update((src, wid) for src in sources(step.expr))
                self.rmw.append((rid, wid))
                taint[step.register] = frozenset({rid})
                layout.append((rid, wid))
            else:
                ctrl_sources |= sources(step.branch.condition)
                layout.append(())
        return layout

    @property
    def reads(self: _Skeleton) -> list[int]:
        return [i for i, p in enumerate(self.protos) if p.kind is EventKind.READ]

    def writes_to(self: _Skeleton, location: str) -> list[int]:
        """Init write first, then the thread writes in id order."""
        return [
            i
            for i, p in enumerate(self.protos)
            if p.location == location and p.kind in (EventKind.INIT, EventKind.WRITE)
        ]

    def _run(
        self: _Skeleton, index: int, read_values: Mapping[int, int | None]
    ) -> tuple[dict[int, int | None], dict[str, int | None], bool | None]:
        """Replay one thread. Returns its write values, final registers and branch consistency."""
        thread = self.test.threads[index]
        regs: dict[str, int | None] = dict.fromkeys(thread.registers(), 0)
        writes: dict[int, int | None] = {}
        consistent: bool | None = True
        for step, eids in zip(self.paths[index], self.step_events[index]):
            if isinstance(step, LocalAssign):
                regs[step.register] = _evaluate(step.expr, regs)
            elif isinstance(step, Store):
                writes[eids[0]] = _evaluate(step.expr, regs)
            elif isinstance(step, Load):
                regs[step.register] = read_values[eids[0]]
            elif isinstance(step, Swap):
                writes[eids[1]] = _evaluate(step.expr, regs)
                regs[step.register] = read_values[eids[0]]
            elif isinstance(step, _Decision):
                cond = _evaluate(step.branch.condition, regs)
                if cond is None:
                    if consistent:
                        consistent = None
                elif (cond == wrap_int64(step.branch.value)) != step.taken:
                    consistent = False
        return writes, regs, consistent

    def replay(
        self: _Skeleton, sources: Mapping[int, int]
    ) -> tuple[dict[int, int], dict[str, int]] | None:
        """Propagate values along a reads-from choice until nothing changes.

        Returns:
            The value of every event and every register, or None when some read
            cannot be given a value without assuming it, or a branch goes the
            other way than the path assumes.
        """
        values: dict[int, int | None] = {
            i: wrap_int64(value) for i, (_, value) in enumerate(self.test.init)
        }
        read_values: dict[int, int | None] = dict.fromkeys(sources)
        while True:
            runs = [self._run(t, read_values) for t in range(len(self.test.threads))]
            for writes, _, _ in runs:
                values.update(writes)
            updated = {r: values.get(w) for r, w in sources.items()}
            if updated == read_values:
                break
            read_values = updated
        if any(v is None for v in read_values.values()):
            return None
        if any(consistent is not True for _, _, consistent in runs):
            return None
        values.update(read_values)
        registers: dict[str, int] = {}
        for _, regs, _ in runs:
            if any(v is None for v in regs.values()):
                return None
            registers.update({r: v for r, v in regs.items() if v is not None})
        return {i: v for i, v in values.items() if v is not None}, registers

    def graphs(self: _Skeleton, counter: Iterator[int]) -> Iterator[ExecutionGraph]:
        reads = self.reads
        choices = [self.writes_to(self.protos[r].location or "") for r in reads]
        for picked in itertools.product(*choices):
            sources = dict(zip(reads, picked))
            replayed = self.replay(sources)
            if replayed is None:
                continue
            values, registers = replayed
            events = tuple(
                Event(
                    id=i,
                    thread=p.thread,
                    kind=p.kind,
                    location=p.location,
                    value=None if p.kind is EventKind.FENCE else values[i],
                    tags=p.tags,
                )
                for i, p in enumerate(self.protos)
            )
            orders = [
                list(itertools.permutations(self.writes_to(loc)[1:]))
                for loc in self.test.locations
            ]
            for co_choice in itertools.product(*orders):
                co = [
                    (a, b)
                    for loc, order in zip(self.test.locations, co_choice)
                    for a, b in itertools.combinations((self.writes_to(loc)[0], *order), 2)
                ]
                yield ExecutionGraph.build(
                    events,
                    po=self.po,
                    co=co,
                    rf=[(w, r) for r, w in sources.items()],
                    dep=sorted(self.dep),
                    ctrl=sorted(self.ctrl),
                    rmw=self.rmw,
                    registers=sorted(registers.items()),
                    test=self.test,
                    index=next(counter),
                )


def enumerate_candidates(test: LitmusTest) -> Iterator[ExecutionGraph]:
    """Yield every candidate execution of a litmus test.

    Candidates are produced in a fixed order: per-thread branch paths first,
    then one reads-from source per read (init write first), then one coherence
    order per location. Value assignments that contradict a branch direction,
    or that need a read to justify its own value, are skipped.

    Args:
        test: A validated litmus test.

    Yields:
        ExecutionGraph: The candidates, with `index` counting from 0.
    """
    logger = logging.getLogger(LOGGER_NAME)
    counter = itertools.count()
    for paths in itertools.product(*(_paths(t.body) for t in test.threads)):
        yield from _Skeleton(test, paths).graphs(counter)
    logger.debug("%s: %d candidates", test.name, next(counter))


def count_candidates(test: LitmusTest) -> int:
    return sum(1 for _ in enumerate_candidates(test))
