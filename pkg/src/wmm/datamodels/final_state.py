from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Mapping

    from wmm.helpers._types import JSONConvertible
    from wmm.litmus.ast import LitmusTest

__all__ = ["FinalState"]

HIDDEN_REGISTER_PREFIX = "$"


@dataclass(frozen=True, order=True)
class FinalState:
    """Snapshot of shared memory and every thread's registers at termination.

    Both engines build final states through `FinalState.capture`, so states coming
    from different engines compare equal exactly when they agree on every value.

    Args:
        memory: (location, value) pairs in the order the test declares its locations.
        registers: (thread, ((register, value), ...)) pairs in thread order.
    """

    memory: tuple[tuple[str, int], ...]
    registers: tuple[tuple[str, tuple[tuple[str, int], ...]], ...]

    @classmethod
    def capture(
        cls: type[FinalState],
        test: LitmusTest,
        memory: Mapping[str, int],
        registers: Mapping[str, int],
    ) -> FinalState:
        """Create a FinalState laid out according to a litmus test.

        Registers missing from `registers` keep their initial value 0. Hidden
        registers (names starting with `$`) are dropped.

        Args:
            test: The test the state belongs to.
            memory: Final value per shared location.
            registers: Final value per register, across all threads.

        Returns:
            FinalState: The canonical snapshot.
        """
        mem = tuple((loc, int(memory[loc])) for loc in test.locations)
        regs = tuple(
            (
                thread.name,
                tuple(
                    (reg, int(registers.get(reg, 0)))
                    for reg in test.registers(thread.name)
                    if not reg.startswith(HIDDEN_REGISTER_PREFIX)
                ),
            )
            for thread in test.threads
        )
        return cls(memory=mem, registers=regs)

    def value_of(self: FinalState, name: str) -> int:
        """Final value of a register or a shared location.

        Raises:
            KeyError: If no register or location has that name.
        """
        for loc, value in self.memory:
            if loc == name:
                return value
        for _, regs in self.registers:
            for reg, value in regs:
                if reg == name:
                    return value
        raise KeyError(name)

    def render(self: FinalState) -> str:
        """Compact one-line rendering, registers first, e.g. `r1=0 r2=1; x=1 y=1`."""
        regs = " ".join(f"{reg}={value}" for _, rs in self.registers for reg, value in rs)
        mem = " ".join(f"{loc}={value}" for loc, value in self.memory)
        return f"{regs}; {mem}" if regs else mem

    def to_dict(self: FinalState) -> dict[str, JSONConvertible]:
        return {
            "memory": dict(self.memory),
            "registers": {thread: dict(regs) for thread, regs in self.registers},
        }
