from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from wmm.axiomatic.graph import ExecutionGraph
    from wmm.datamodels.final_state import FinalState
    from wmm.helpers._types import JSONConvertible

__all__ = ["AXIOMATIC", "OPERATIONAL", "Rejection", "Verdict"]

AXIOMATIC = "axiomatic"
OPERATIONAL = "operational"


@dataclass(frozen=True)
class Rejection:
    """Why one candidate execution satisfying the postcondition was ruled out.

    Args:
        candidate: Enumeration index of the candidate.
        axiom: Label of the first violated axiom.
        cycle: Event labels along the witnessing cycle (or offending pairs, flattened).
    """

    candidate: int
    axiom: str
    cycle: tuple[str, ...]

    def render(self: Rejection) -> str:
        path = " -> ".join(self.cycle)
        return f"candidate {self.candidate}: {self.axiom}" + (f" ({path})" if path else "")


@dataclass(frozen=True)
class Verdict:
    """Outcome of checking one litmus test against one model with one engine.

    Args:
        test: Name of the litmus test.
        model: Name of the model (or operational semantics) that was checked.
        engine: Either `axiomatic` or `operational`.
        reachable: Whether some allowed final state satisfies the postcondition.
        final_states: Every allowed final state, sorted.
        witness_state: For reachable verdicts, the least final state satisfying the postcondition.
        witness_trace: For reachable operational verdicts, the rendered steps leading to `witness_state`.
        witness_graph: For axiomatic verdicts, the first consistent graph satisfying the postcondition,
            or, when unreachable, the first rejected candidate that satisfies it.
        rejections: For unreachable axiomatic verdicts, one entry per candidate satisfying the postcondition.
    """

    test: str
    model: str
    engine: str
    reachable: bool
    final_states: tuple[FinalState, ...]
    witness_state: FinalState | None = None
    witness_trace: tuple[str, ...] = ()
    witness_graph: ExecutionGraph | None = None
    rejections: tuple[Rejection, ...] = ()

    @property
    def answer(self: Verdict) -> str:
        """`yes` when reachable, `no` otherwise, as used by expect blocks."""
        return "yes" if self.reachable else "no"

    def to_dict(self: Verdict) -> dict[str, JSONConvertible]:
        d: dict[str, JSONConvertible] = {
            "test": self.test,
            "model": self.model,
            "engine": self.engine,
            "reachable": self.reachable,
        }
        if self.witness_state is not None:
            witness: dict[str, JSONConvertible] = {"state": self.witness_state.to_dict()}
            if self.witness_trace:
                witness["trace"] = list(self.witness_trace)
            d["witness"] = witness
        elif self.rejections:
            first = self.rejections[0]
            d["witness"] = {"axiom": first.axiom, "cycle": list(first.cycle)}
        return d
