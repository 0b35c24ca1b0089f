from __future__ import annotations

import logging
from dataclasses import dataclass
from multiprocessing import Pool
from typing import TYPE_CHECKING

from wmm.datamodels import AXIOMATIC, Rejection, Verdict
from wmm.relations import acyclic, is_empty, is_irreflexive

from .enumerate import enumerate_candidates

if TYPE_CHECKING:
    from collections.abc import Iterator

    from wmm.datamodels import FinalState
    from wmm.litmus.ast import LitmusTest
    from wmm.relations import Relation

    from .graph import ExecutionGraph
    from .model import ModelSpec

__all__ = [
    "CandidateChecker",
    "ModelCheck",
    "check_model",
    "final_states_axiomatic",
    "reachable_axiomatic",
]


@dataclass(frozen=True)
class ModelCheck:
    """Outcome of checking one graph against one model.

    Args:
        passed: True iff every axiom holds.
        axiom: Label of the first violated axiom.
        cycle: For a violated `acyclic` axiom, the event ids along one cycle, closed.
        pairs: For a violated `empty` or `irreflexive` axiom, the offending pairs.
    """

    passed: bool
    axiom: str | None = None
    cycle: tuple[int, ...] = ()
    pairs: tuple[tuple[int, int], ...] = ()

    def __bool__(self: ModelCheck) -> bool:
        return self.passed

    def witness(self: ModelCheck, graph: ExecutionGraph) -> tuple[str, ...]:
        """The cycle (or offending pairs, flattened) as event labels."""
        ids = self.cycle or tuple(i for pair in self.pairs for i in pair)
        return tuple(graph.label(i) for i in ids)


def _from_first_read(cycle: tuple[int, ...], reads: tuple[int, ...]) -> tuple[int, ...]:
    """Rotate a closed cycle to start at its lowest-id read, if it has one."""
    body = list(cycle[:-1])
    on_cycle = [i for i in body if i in reads]
    if not on_cycle:
        return cycle
    start = body.index(min(on_cycle))
    rotated = body[start:] + body[:start]
    return (*rotated, rotated[0])


def check_model(graph: ExecutionGraph, model: ModelSpec) -> ModelCheck:
    """Evaluate a model on a candidate execution.

    Bindings are evaluated in order, then the axioms in order, with pairs
    touching init writes left out. Checking stops at the first violated axiom.
    A cycle witness starts at the first read on the cycle, so SB under SC
    reports a2 -> b1 -> b2 -> a1 -> a2.

    Args:
        graph: The candidate execution.
        model: The model.

    Returns:
        ModelCheck: Pass, or the failing axiom with its witness.
    """
    env: dict[str, Relation] = {}
    for name, expr in model.bindings:
        env[name] = expr.evaluate(graph, env)

    init = graph.init_events()
    keep = init.complement()
    for axiom in model.axioms:
        relation = axiom.expr.evaluate(graph, env)
        if axiom.predicate == "acyclic":
            result = acyclic(relation, exclude=init)
            if not result:
                cycle = _from_first_read(result.cycle, graph.event_set("R").ids())
                return ModelCheck(passed=False, axiom=axiom.label, cycle=cycle)
        elif axiom.predicate == "empty":
            if not is_empty(relation, exclude=init):
                pairs = tuple(p for p in relation.pairs() if p[0] in keep and p[1] in keep)
                return ModelCheck(passed=False, axiom=axiom.label, pairs=pairs)
        elif not is_irreflexive(relation, exclude=init):
            pairs = tuple(p for p in relation.pairs() if p[0] == p[1] and p[0] in keep)
            return ModelCheck(passed=False, axiom=axiom.label, pairs=pairs)
    return ModelCheck(passed=True)


def _check(job: tuple[ExecutionGraph, ModelSpec]) -> ModelCheck:
    graph, model = job
    return check_model(graph, model)


@dataclass
class CandidateChecker:
    """Check every candidate execution of a test against a model.

    Args:
        model: The model to check against.
        model_name: Name reported in verdicts. Defaults to the name in the model file.
        workers: Number of processes checking candidates. With 1, everything runs in-process.
        logger: Optional logger for progress messages.
    """

    model: ModelSpec
    model_name: str | None = None
    workers: int = 1
    logger: logging.Logger | None = None

    def __post_init__(self: CandidateChecker) -> None:  # noqa: D105
        if self.workers < 1:
            msg = "CandidateChecker: workers must be at least 1"
            raise ValueError(msg)

    def _log(self: CandidateChecker, msg: str) -> None:
        if self.logger:
            self.logger.info(msg)

    def results(self: CandidateChecker, test: LitmusTest) -> Iterator[tuple[ExecutionGraph, ModelCheck]]:
        """Every candidate with its check, in enumeration order."""
        if self.workers == 1:
            for graph in enumerate_candidates(test):
                yield graph, check_model(graph, self.model)
            return
        graphs = list(enumerate_candidates(test))
        with Pool(self.workers) as pool:
            checks = pool.imap(_check, ((g, self.model) for g in graphs), chunksize=16)
            yield from zip(graphs, checks)

    def verdict(self: CandidateChecker, test: LitmusTest) -> Verdict:
        """Decide whether the postcondition of a test is reachable under the model.

        The witness is the first consistent candidate (in enumeration order) whose
        final state satisfies the postcondition. When there is none, every
        candidate satisfying the postcondition contributes a rejection, and the
        first of them is kept as the witness graph.

        Args:
            test: The litmus test.

        Returns:
            Verdict: The axiomatic verdict.
        """
        final_states: set[FinalState] = set()
        witness: ExecutionGraph | None = None
        rejected: ExecutionGraph | None = None
        rejections: list[Rejection] = []
        checked = 0
        for graph, result in self.results(test):
            checked += 1
            state = graph.final_state()
            satisfied = test.post.evaluate(state)
            if result:
                final_states.add(state)
                if satisfied and witness is None:
                    witness = graph
            elif satisfied:
                rejections.append(Rejection(graph.index, result.axiom or "", result.witness(graph)))
                if rejected is None:
                    rejected = graph

        model_name = self.model_name or self.model.name
        self._log(f"{test.name} / {model_name}: {checked} candidates, {len(final_states)} final states")
        reachable = witness is not None
        return Verdict(
            test=test.name,
            model=model_name,
            engine=AXIOMATIC,
            reachable=reachable,
            final_states=tuple(sorted(final_states)),
            witness_state=witness.final_state() if witness is not None else None,
            witness_graph=witness if reachable else rejected,
            rejections=() if reachable else tuple(rejections),
        )


def reachable_axiomatic(
    test: LitmusTest, model: ModelSpec, workers: int = 1, model_name: str | None = None
) -> Verdict:
    """Axiomatic verdict for a test under a model. See `CandidateChecker.verdict`."""
    return CandidateChecker(model, model_name=model_name, workers=workers).verdict(test)


def final_states_axiomatic(test: LitmusTest, model: ModelSpec) -> frozenset[FinalState]:
    """Final states of every candidate execution the model allows."""
    return frozenset(
        graph.final_state()
        for graph, result in CandidateChecker(model).results(test)
        if result
    )
