from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable

import numpy as np

from wmm.datamodels import FinalState
from wmm.relations import (
    ACQUIRE,
    RELEASE,
    RMW,
    Carrier,
    Event,
    EventSet,
    Relation,
    restrict,
)

from ._exceptions import UnknownRelationError

if TYPE_CHECKING:
    from collections.abc import Iterable

    from wmm.litmus.ast import LitmusTest

__all__ = ["RELATION_NAMES", "SET_NAMES", "ExecutionGraph"]

BASE_RELATIONS = ("po", "co", "rf", "dep", "ctrl", "rmw")

_SETS: dict[str, Callable[[Event], bool]] = {
    "R": lambda e: e.is_read,
    "W": lambda e: e.is_write,
    "F": lambda e: e.is_fence,
    "M": lambda e: e.is_read or e.is_write,
    "IW": lambda e: e.is_init,
    "Rls": lambda e: RELEASE in e.tags,
    "Acq": lambda e: ACQUIRE in e.tags,
    "RMW": lambda e: RMW in e.tags,
}
SET_NAMES = tuple(_SETS)


@dataclass(eq=False)
class ExecutionGraph:
    """A candidate execution: memory events plus the base relations po, co and rf.

    Dependency (`dep`, `ctrl`) and read-modify-write (`rmw`) edges come from the
    program. Every other relation is derived on demand with `derive`, and cached.

    Args:
        events: The events, where `events[i].id == i`.
        po: Program order, a strict total order per thread.
        co: Coherence order, a strict total order per location with the init write first.
        rf: Reads-from, one edge from a write (or init) into every read.
        dep: Address and data dependencies out of reads.
        ctrl: Control dependencies out of reads feeding a branch condition.
        rmw: Pairs (read, write) of the two halves of each swap.
        registers: Final register values of the replayed program.
        test: The litmus test the graph was enumerated from, if any.
        index: Position of the graph in the enumeration order.
    """

    events: tuple[Event, ...]
    po: Relation
    co: Relation
    rf: Relation
    dep: Relation
    ctrl: Relation
    rmw: Relation
    registers: tuple[tuple[str, int], ...] = ()
    test: LitmusTest | None = None
    index: int = 0
    _cache: dict[str, Relation] = field(default_factory=dict, init=False, repr=False)
    _labels: tuple[str, ...] = field(default=(), init=False, repr=False)

    def __post_init__(self: ExecutionGraph) -> None:  # noqa: D105
        carrier = self.po.carrier
        if len(self.events) != carrier.size:
            msg = "ExecutionGraph: number of events does not match the carrier"
            raise ValueError(msg)
        if any(e.id != i for i, e in enumerate(self.events)):
            msg = "ExecutionGraph: event ids must be dense and ordered"
            raise ValueError(msg)
        for name in BASE_RELATIONS:
            if getattr(self, name).carrier is not carrier:
                msg = f"ExecutionGraph: relation '{name}' lives on a different carrier"
                raise ValueError(msg)
        self._labels = tuple(_labels(self.events))

    @classmethod
    def build(
        cls: type[ExecutionGraph],
        events: Iterable[Event],
        *,
        po: Iterable[tuple[int, int]],
        co: Iterable[tuple[int, int]],
        rf: Iterable[tuple[int, int]],
        dep: Iterable[tuple[int, int]] = (),
        ctrl: Iterable[tuple[int, int]] = (),
        rmw: Iterable[tuple[int, int]] = (),
        registers: Iterable[tuple[str, int]] = (),
        test: LitmusTest | None = None,
        index: int = 0,
    ) -> ExecutionGraph:
        """Create a graph from explicit event-id pairs, on a fresh carrier.

        Returns:
            ExecutionGraph: The graph.
        """
        events = tuple(events)
        carrier = Carrier(len(events))
        return cls(
            events=events,
            po=Relation.from_pairs(carrier, po),
            co=Relation.from_pairs(carrier, co),
            rf=Relation.from_pairs(carrier, rf),
            dep=Relation.from_pairs(carrier, dep),
            ctrl=Relation.from_pairs(carrier, ctrl),
            rmw=Relation.from_pairs(carrier, rmw),
            registers=tuple(registers),
            test=test,
            index=index,
        )

    @property
    def carrier(self: ExecutionGraph) -> Carrier:
        return self.po.carrier

    def event_set(self: ExecutionGraph, name: str) -> EventSet:
        """One of the event sets R, W (including init writes), F, M, IW, Rls, Acq, RMW.

        Raises:
            UnknownRelationError: If the set name is unknown.
        """
        try:
            member = _SETS[name]
        except KeyError as e:
            raise UnknownRelationError(name) from e
        return EventSet.from_ids(self.carrier, (ev.id for ev in self.events if member(ev)))

    def init_events(self: ExecutionGraph) -> EventSet:
        return self.event_set("IW")

    def derive(self: ExecutionGraph, name: str) -> Relation:
        """A base or derived relation by name, computed once per graph.

        Args:
            name: One of `RELATION_NAMES`.

        Raises:
            UnknownRelationError: If the relation name is unknown.

        Returns:
            Relation: The relation.
        """
        cached = self._cache.get(name)
        if cached is not None:
            return cached
        try:
            derivation = _DERIVATIONS[name]
        except KeyError as e:
            raise UnknownRelationError(name) from e
        relation = derivation(self)
        self._cache[name] = relation
        return relation

    def label(self: ExecutionGraph, event_id: int) -> str:
        """Stable event name: `Ix` for the init write of x, `a1`, `a2`, ... for thread A."""
        return self._labels[event_id]

    def describe(self: ExecutionGraph, event_id: int) -> str:
        """Label plus event, e.g. `a1: W x=1`."""
        return f"{self.label(event_id)}: {self.events[event_id].describe()}"

    def final_state(self: ExecutionGraph) -> FinalState:
        """Registers from the replayed program and, per location, the coherence-last write.

        Raises:
            ValueError: If the graph was not enumerated from a litmus test.
        """
        if self.test is None:
            msg = "ExecutionGraph: final states need the originating litmus test"
            raise ValueError(msg)
        co = self.co.matrix
        memory = {}
        for ev in self.events:
            if ev.is_write and ev.location is not None and not co[ev.id].any():
                memory[ev.location] = int(ev.value)  # type: ignore[arg-type]
        return FinalState.capture(self.test, memory, dict(self.registers))

    def satisfies_postcondition(self: ExecutionGraph) -> bool:
        if self.test is None:
            return False
        return self.test.post.evaluate(self.final_state())


def _labels(events: tuple[Event, ...]) -> list[str]:
    counters: dict[str, int] = {}
    labels = []
    for ev in events:
        if ev.is_init:
            labels.append(f"I{ev.location}")
            continue
        counters[ev.thread] = counters.get(ev.thread, 0) + 1
        prefix = ev.thread.lower()
        sep = "." if prefix[-1:].isdigit() else ""
        labels.append(f"{prefix}{sep}{counters[ev.thread]}")
    return labels


def _pairwise(graph: ExecutionGraph, keys: list[object], *, equal: bool) -> Relation:
    codes = {key: i for i, key in enumerate(dict.fromkeys(keys))}
    array = np.array([codes[k] for k in keys], dtype=np.int64)
    matrix = array[:, None] == array[None, :]
    return Relation(graph.carrier, matrix if equal else ~matrix)


def _loc(graph: ExecutionGraph) -> Relation:
    keys: list[object] = [
        ev.location if ev.location is not None else ("fence", ev.id) for ev in graph.events
    ]
    same = _pairwise(graph, keys, equal=True)
    memory = graph.event_set("M")
    return restrict(memory, same, memory)


def _ext(graph: ExecutionGraph) -> Relation:
    return _pairwise(graph, [ev.thread for ev in graph.events], equal=False)


def _int(graph: ExecutionGraph) -> Relation:
    return _pairwise(graph, [ev.thread for ev in graph.events], equal=True)


def _local(first: str, second: str) -> Callable[[ExecutionGraph], Relation]:
    def derive(graph: ExecutionGraph) -> Relation:
        return restrict(graph.event_set(first), graph.po, graph.event_set(second))

    return derive


_DERIVATIONS: dict[str, Callable[[ExecutionGraph], Relation]] = {
    "po": lambda g: g.po,
    "co": lambda g: g.co,
    "rf": lambda g: g.rf,
    "dep": lambda g: g.dep,
    "ctrl": lambda g: g.ctrl,
    "rmw": lambda g: g.rmw,
    "id": lambda g: Relation.identity(g.carrier),
    "loc": _loc,
    "ext": _ext,
    "int": _int,
    "poloc": lambda g: g.po & g.derive("loc"),
    "fencerel": lambda g: g.po @ g.event_set("F").identity() @ g.po,
    "fr": lambda g: g.rf.inverse() @ g.co,
    "rfe": lambda g: g.rf & g.derive("ext"),
    "rfi": lambda g: g.rf & g.derive("int"),
    "fre": lambda g: g.derive("fr") & g.derive("ext"),
    "fri": lambda g: g.derive("fr") & g.derive("int"),
    "coe": lambda g: g.co & g.derive("ext"),
    "coi": lambda g: g.co & g.derive("int"),
    "RR": _local("R", "R"),
    "RW": _local("R", "W"),
    "WW": _local("W", "W"),
    "WR": _local("W", "R"),
    "ppo_tso": lambda g: g.derive("RR") | g.derive("RW") | g.derive("WW"),
    "com": lambda g: g.rf | g.co | g.derive("fr"),
    "ca": lambda g: g.co | g.derive("fr"),
    "eco": lambda g: g.derive("com").transitive_closure(),
}
RELATION_NAMES = tuple(_DERIVATIONS)
