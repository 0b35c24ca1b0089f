from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

__all__ = ["ACQUIRE", "INIT_THREAD", "RELEASE", "RMW", "Event", "EventKind"]

INIT_THREAD = "INIT"

RELEASE = "release"
ACQUIRE = "acquire"
RMW = "rmw"


class EventKind(Enum):
    INIT = "I"
    READ = "R"
    WRITE = "W"
    FENCE = "F"


@dataclass(frozen=True)
class Event:
    """One memory event of an execution graph.

    Args:
        id: Dense index of the event within its graph.
        thread: Name of the issuing thread, or `INIT` for initialisation writes.
        kind: Init, Read, Write or Fence.
        location: Accessed shared variable, None for fences.
        value: Value read or written, None for fences.
        tags: Subset of {release, acquire, rmw}.
    """

    id: int
    thread: str
    kind: EventKind
    location: str | None = None
    value: int | None = None
    tags: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self: Event) -> None:  # noqa: D105
        if self.kind is EventKind.FENCE:
            if self.location is not None or self.value is not None:
                msg = "Event: fences carry neither location nor value"
                raise ValueError(msg)
        elif self.location is None or self.value is None:
            msg = f"Event: {self.kind.name.lower()} events need a location and a value"
            raise ValueError(msg)
        if (self.kind is EventKind.INIT) != (self.thread == INIT_THREAD):
            msg = f"Event: only init events may belong to thread {INIT_THREAD}"
            raise ValueError(msg)

    @property
    def is_init(self: Event) -> bool:
        return self.kind is EventKind.INIT

    @property
    def is_read(self: Event) -> bool:
        return self.kind is EventKind.READ

    @property
    def is_write(self: Event) -> bool:
        """Init events count as writes."""
        return self.kind in (EventKind.WRITE, EventKind.INIT)

    @property
    def is_fence(self: Event) -> bool:
        return self.kind is EventKind.FENCE

    def describe(self: Event) -> str:
        """Short form such as `W x=1`, `R y=0` or `F`."""
        if self.is_fence:
            return "F"
        kind = "W" if self.is_init else self.kind.value
        suffix = "".join(f" {tag}" for tag in sorted(self.tags))
        return f"{kind} {self.location}={self.value}{suffix}"
