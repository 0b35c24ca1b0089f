from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from wmm.datamodels import OPERATIONAL, Verdict

from .semantics import Semantics, SemanticsConfig, initial_state, step

if TYPE_CHECKING:
    from wmm.datamodels import FinalState
    from wmm.litmus.ast import LitmusTest

    from .state import SystemState, TransitionLabel

__all__ = ["Exploration", "Explorer", "explore", "reachable_operational"]


@dataclass(frozen=True)
class Exploration:
    """Everything an exhaustive run found.

    Args:
        final_states: Snapshot of every reachable terminal state.
        traces: With tracing on, one shortest step sequence per final state.
        states: Number of distinct states visited.
    """

    final_states: frozenset[FinalState]
    traces: dict[FinalState, tuple[TransitionLabel, ...]] = field(default_factory=dict)
    states: int = 0

    def sorted_states(self: Exploration) -> tuple[FinalState, ...]:
        return tuple(sorted(self.final_states))


@dataclass
class Explorer:
    """Breadth-first search over the states of a litmus test under one semantics.

    Args:
        semantics: SC, TSO or PIPELINE.
        config: Switches of the semantics.
        logger: Optional logger for progress messages.
    """

    semantics: Semantics
    config: SemanticsConfig = field(default_factory=SemanticsConfig)
    logger: logging.Logger | None = None

    def _log(self: Explorer, msg: str) -> None:
        if self.logger:
            self.logger.info(msg)

    def explore(self: Explorer, test: LitmusTest, *, traces: bool = False) -> Exploration:
        """Visit every reachable state once and collect the terminal ones.

        Args:
            test: A validated litmus test.
            traces: Also record, per final state, the steps of a shortest path to it.

        Returns:
            Exploration: Final states, and traces when asked for.
        """
        start = initial_state(test, self.semantics)
        parents: dict[SystemState, tuple[SystemState, TransitionLabel] | None] = {start: None}
        queue = deque([start])
        finals: dict[FinalState, SystemState] = {}
        while queue:
            state = queue.popleft()
            if state.terminal:
                finals.setdefault(state.final_state(test), state)
                continue
            for label, successor in step(state, self.semantics, self.config):
                if successor not in parents:
                    parents[successor] = (state, label)
                    queue.append(successor)

        found: dict[FinalState, tuple[TransitionLabel, ...]] = {}
        if traces:
            for final, state in finals.items():
                found[final] = _path(parents, state)
        self._log(
            f"{test.name} / {self.semantics.value}: {len(parents)} states, {len(finals)} final states"
        )
        return Exploration(final_states=frozenset(finals), traces=found, states=len(parents))

    def verdict(self: Explorer, test: LitmusTest, model_name: str | None = None) -> Verdict:
        """Operational verdict: reachable iff some final state satisfies the postcondition.

        The witness is the least satisfying final state, with a shortest trace to it.
        """
        exploration = self.explore(test, traces=True)
        states = exploration.sorted_states()
        satisfying = [s for s in states if test.post.evaluate(s)]
        witness = satisfying[0] if satisfying else None
        trace = exploration.traces[witness] if witness is not None else ()
        return Verdict(
            test=test.name,
            model=model_name or self.semantics.value,
            engine=OPERATIONAL,
            reachable=witness is not None,
            final_states=states,
            witness_state=witness,
            witness_trace=tuple(label.render() for label in trace),
        )


def _path(
    parents: dict[SystemState, tuple[SystemState, TransitionLabel] | None], state: SystemState
) -> tuple[TransitionLabel, ...]:
    labels = []
    link = parents[state]
    while link is not None:
        previous, label = link
        labels.append(label)
        link = parents[previous]
    return tuple(reversed(labels))


def explore(
    test: LitmusTest,
    semantics: Semantics,
    *,
    traces: bool = False,
    config: SemanticsConfig | None = None,
) -> Exploration:
    """Exhaustively explore a litmus test. See `Explorer.explore`."""
    return Explorer(semantics, config or SemanticsConfig()).explore(test, traces=traces)


def reachable_operational(
    test: LitmusTest,
    semantics: Semantics,
    *,
    config: SemanticsConfig | None = None,
    model_name: str | None = None,
) -> Verdict:
    """Operational verdict for a test. See `Explorer.verdict`."""
    return Explorer(semantics, config or SemanticsConfig()).verdict(test, model_name)
